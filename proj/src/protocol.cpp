#include "mg/protocol.hpp"

#include <algorithm>
#include <json.hpp>

namespace mg {

SplitOutcome infer_split(const DayRecord& prev, const DayRecord& cur, const PendingSet& set) {
  const std::int64_t before = prev.count(set.location);
  const std::int64_t after = cur.count(set.location);
  const std::int64_t drop = before - after;
  if (drop < 0 || drop > static_cast<std::int64_t>(set.size)) {
    throw ProtocolDeviation("attendance change at the splitting restaurant exceeds the set size");
  }
  const auto j = static_cast<std::uint32_t>(drop);
  return SplitOutcome{j, std::min(j, set.size - j), 2 * j == set.size};
}

StageTwoState split_resolution(const StageTwoState& state, const SplitOutcome& outcome) {
  if (state.stack.empty()) throw std::logic_error("split_resolution: empty stack");
  StageTwoState next = state;
  const PendingSet top = next.stack.back();
  next.stack.pop_back();

  const std::uint32_t r = top.size;
  const std::uint32_t j = outcome.j;
  const Choice stay_loc = top.location;
  const Choice shift_loc = other(top.location);

  if (outcome.first_size == 0) {
    // Empty first set: the whole set re-splits next day, relocated when
    // every member shifted.
    PendingSet whole = top;
    whole.location = (j == r) ? shift_loc : stay_loc;
    next.stack.push_back(whole);
    return next;
  }

  const bool first_is_shifted = 2 * j <= r;
  const PendingSet first{outcome.first_size, top.first_id,
                         first_is_shifted ? shift_loc : stay_loc};
  const PendingSet second{r - outcome.first_size, top.first_id + outcome.first_size,
                          first_is_shifted ? stay_loc : shift_loc};
  next.stack.push_back(second);
  next.stack.push_back(first);

  // Singletons resolve without consuming a day; IDs fix in increasing order.
  while (!next.stack.empty() && next.stack.back().size == 1) {
    if (next.stack.back().first_id != next.assigned + 1) {
      throw std::logic_error("split_resolution: out-of-order ID assignment");
    }
    next.assigned = next.stack.back().first_id;
    next.stack.pop_back();
  }
  return next;
}

Choice cyclic_choice(AgentId id, std::uint64_t day_offset, std::uint32_t n_big) {
  if (id.value > n_big + 2 - 1) {
    throw std::invalid_argument("cyclic_choice: id out of [0, N+1]");
  }
  if (day_offset < 1) throw std::invalid_argument("cyclic_choice: day_offset starts at 1");
  if (id.value == 0) return Choice::A;
  const std::uint64_t period = 2ull * n_big + 1;
  const std::uint64_t target = 2ull * id.value - 1;
  return (day_offset % period) == (target % period) ? Choice::A : Choice::B;
}

ProtocolState ProtocolState::initial(const GameConfig& config) {
  config.validate();
  ProtocolState s;
  s.config_ = config;
  return s;
}

ProtocolState ProtocolState::replay(const PublicTranscript& t, const GameConfig& config) {
  ProtocolState s = initial(config);
  for (const DayRecord& rec : t.days) s.advance(rec);
  return s;
}

std::uint64_t ProtocolState::day_offset(std::uint64_t absolute_day) const {
  if (phase_ != Phase::Cyclic) throw std::logic_error("day_offset: not in cyclic phase");
  const std::uint64_t period = 2ull * config_.n_big + 1;
  return (absolute_day - cyclic_start_day_) % period + 1;
}

void ProtocolState::advance(const DayRecord& rec) {
  if (rec.attendance_a + rec.attendance_b != config_.n_agents()) {
    throw ProtocolDeviation("attendance does not sum to 2N+1");
  }
  ++day_;
  switch (phase_) {
    case Phase::StageOne:
      advance_stage_one(rec);
      break;
    case Phase::StageTwo:
      advance_stage_two(rec);
      break;
    case Phase::Cyclic:
      advance_cyclic(rec);
      break;
  }
  last_record_ = rec;
}

void ProtocolState::advance_stage_one(const DayRecord& rec) {
  const std::uint32_t n = config_.n_big;
  if (stage_one_) {
    // Minority-side occupants never move during stage one.
    const std::uint32_t stayers = n - stage_one_->delta;
    if (rec.count(stage_one_->minority_restaurant) < stayers) {
      throw ProtocolDeviation("minority-side attendance dropped during stage one");
    }
  }
  const std::uint32_t m = std::min(rec.attendance_a, rec.attendance_b);
  if (m == n) {
    // Exact (N, N+1) split: the N minority agents take ID 0 and the other
    // N+1 become the root pending set for IDs 1..N+1.
    id_zero_side_ = rec.attendance_a == n ? Choice::A : Choice::B;
    stage_one_end_day_ = day_;
    stage_one_.reset();
    phase_ = Phase::StageTwo;
    stage_two_.stack.push_back(PendingSet{n + 1, 1, other(id_zero_side_)});
    stage_two_.assigned = 0;
    return;
  }
  const Choice minority = rec.attendance_a < rec.attendance_b ? Choice::A : Choice::B;
  stage_one_ = StageOneState{n - m, minority};
}

void ProtocolState::advance_stage_two(const DayRecord& rec) {
  const PendingSet top = stage_two_.top();
  const SplitOutcome outcome = infer_split(last_record_, rec, top);

  // Open a resolution span the first time this set splits; (last_id, size)
  // identifies the innermost open span, so a re-split is not re-opened.
  if (spans_.empty() ||
      !(spans_.back().last_id == top.last_id() && spans_.back().size == top.size)) {
    spans_.push_back(ActiveSpan{top.last_id(), top.size, day_});
  }

  const std::uint32_t assigned_before = stage_two_.assigned;
  stage_two_ = split_resolution(stage_two_, outcome);

  for (std::uint32_t id = assigned_before + 1; id <= stage_two_.assigned; ++id) {
    while (!spans_.empty() && spans_.back().last_id == id) {
      if (on_set_resolved_) {
        on_set_resolved_(SetResolved{spans_.back().size, day_ - spans_.back().start_day + 1});
      }
      spans_.pop_back();
    }
  }

  if (stage_two_.stack.empty()) {
    phase_ = Phase::Cyclic;
    stage_two_end_day_ = day_;
    cyclic_start_day_ = day_ + 1;
  }
}

void ProtocolState::advance_cyclic(const DayRecord& rec) {
  const std::uint32_t n = config_.n_big;
  const std::uint64_t offset = day_offset(day_);
  const std::uint32_t expected_a = (offset % 2 == 1) ? n + 1 : n;
  if (rec.attendance_a != expected_a) {
    throw ProtocolDeviation("cyclic-phase attendance off schedule");
  }
}

bool operator==(const ProtocolState& a, const ProtocolState& b) {
  return a.config_.n_big == b.config_.n_big && a.phase_ == b.phase_ && a.day_ == b.day_ &&
         a.stage_one_ == b.stage_one_ && a.stage_two_ == b.stage_two_ &&
         a.id_zero_side_ == b.id_zero_side_ && a.stage_one_end_day_ == b.stage_one_end_day_ &&
         a.stage_two_end_day_ == b.stage_two_end_day_ &&
         a.cyclic_start_day_ == b.cyclic_start_day_ && a.last_record_ == b.last_record_;
}

std::string ProtocolState::to_json() const {
  nlohmann::json out;
  out["day"] = day_;
  switch (phase_) {
    case Phase::StageOne:
      out["phase"] = "stage_one";
      out["observed"] = stage_one_.has_value();
      if (stage_one_) {
        out["delta"] = stage_one_->delta;
        out["minority"] = std::string(1, to_char(stage_one_->minority_restaurant));
      }
      break;
    case Phase::StageTwo: {
      out["phase"] = "stage_two";
      out["assigned"] = stage_two_.assigned;
      out["id_zero_side"] = std::string(1, to_char(id_zero_side_));
      nlohmann::json stack = nlohmann::json::array();
      // Top first: processing order.
      for (auto it = stage_two_.stack.rbegin(); it != stage_two_.stack.rend(); ++it) {
        stack.push_back({{"size", it->size},
                         {"first_id", it->first_id},
                         {"location", std::string(1, to_char(it->location))}});
      }
      out["stack"] = std::move(stack);
      break;
    }
    case Phase::Cyclic:
      out["phase"] = "cyclic";
      out["start_day"] = cyclic_start_day_;
      out["assigned"] = stage_two_.assigned;
      out["id_zero_side"] = std::string(1, to_char(id_zero_side_));
      break;
  }
  return out.dump();
}

AgentMembership update_membership(const ProtocolState& state_before, const DayRecord& rec,
                                  const AgentMembership& membership, Choice own_prev,
                                  Choice own_today) {
  switch (state_before.phase()) {
    case Phase::StageOne: {
      const std::uint32_t n = state_before.config().n_big;
      if (std::min(rec.attendance_a, rec.attendance_b) != n) return membership;
      const Choice minority_side = rec.attendance_a == n ? Choice::A : Choice::B;
      AgentMembership next;
      if (own_today == minority_side) {
        next.kind = AgentMembership::Kind::IdZero;
        next.id = 0;
      } else {
        next.kind = AgentMembership::Kind::Pending;
        next.first_id = 1;
        next.size = n + 1;
      }
      return next;
    }
    case Phase::StageTwo: {
      const PendingSet top = state_before.stage_two().top();
      if (!membership.in_set(top)) return membership;
      const SplitOutcome outcome = infer_split(state_before.last_record(), rec, top);
      if (outcome.first_size == 0) return membership;  // whole set re-splits
      const bool shifted = own_today != own_prev;
      const bool first_is_shifted = 2 * outcome.j <= top.size;
      AgentMembership next = membership;
      if (shifted == first_is_shifted) {
        next.first_id = top.first_id;
        next.size = outcome.first_size;
      } else {
        next.first_id = top.first_id + outcome.first_size;
        next.size = top.size - outcome.first_size;
      }
      if (next.size == 1) {
        next.kind = AgentMembership::Kind::Assigned;
        next.id = next.first_id;
      }
      return next;
    }
    case Phase::Cyclic:
      return membership;
  }
  throw std::logic_error("update_membership: unreachable");
}

AgentMembership derive_membership(const GameConfig& config, const PublicTranscript& t,
                                  const std::vector<Choice>& own_choices) {
  if (own_choices.size() != t.size()) {
    throw std::logic_error("derive_membership: own_choices length must match transcript");
  }
  ProtocolState state = ProtocolState::initial(config);
  AgentMembership membership;
  for (std::size_t d = 1; d <= t.size(); ++d) {
    const Choice today = own_choices[d - 1];
    const Choice prev = d >= 2 ? own_choices[d - 2] : today;
    membership = update_membership(state, t.day(d), membership, prev, today);
    state.advance(t.day(d));
  }
  return membership;
}

Choice stage_one_decision(const GameConfig& config, const std::optional<StageOneState>& state,
                          AgentView& view) {
  if (view.rng_stream == nullptr) throw std::logic_error("stage_one_decision: no rng stream");
  if (view.own_choices.empty()) {
    return view.rng_stream->next_uniform() <= 0.5 ? Choice::A : Choice::B;
  }
  if (!state) throw std::logic_error("stage_one_decision: no observation after day 1");
  if (state->delta == 0) throw std::logic_error("stage_one_decision: stage one already over");
  const Choice last = view.last_choice();
  if (last == state->minority_restaurant) return last;
  const double shift_prob =
      static_cast<double>(state->delta) / (config.n_big + state->delta + 1.0);
  return view.rng_stream->next_uniform() < shift_prob ? other(last) : last;
}

Choice stage_two_decision(const StageTwoState& state, bool in_top_set, AgentView& view) {
  if (state.stack.empty()) throw std::logic_error("stage_two_decision: no pending sets");
  const Choice last = view.last_choice();
  if (!in_top_set) return last;
  if (view.rng_stream == nullptr) throw std::logic_error("stage_two_decision: no rng stream");
  return view.rng_stream->next_uniform() < 0.5 ? other(last) : last;
}

Choice next_choice(const ProtocolState& state, const AgentMembership& membership,
                   AgentView& view) {
  switch (state.phase()) {
    case Phase::StageOne:
      return stage_one_decision(state.config(), state.stage_one(), view);
    case Phase::StageTwo:
      return stage_two_decision(state.stage_two(), membership.in_set(state.stage_two().top()),
                                view);
    case Phase::Cyclic: {
      const auto id = membership.resolved_id();
      if (!id) throw std::logic_error("next_choice: unresolved membership in cyclic phase");
      return cyclic_choice(*id, state.day_offset(state.day() + 1), state.config().n_big);
    }
  }
  throw std::logic_error("next_choice: unreachable");
}

Choice decide_from_history(const GameConfig& config, const PublicTranscript& t,
                           AgentView& view) {
  const ProtocolState state = ProtocolState::replay(t, config);
  const AgentMembership membership = derive_membership(config, t, view.own_choices);
  return next_choice(state, membership, view);
}

}  // namespace mg
