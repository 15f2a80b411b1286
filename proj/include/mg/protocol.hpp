#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mg/model.hpp"
#include "mg/rng.hpp"

namespace mg {

// Transcript inconsistent with every agent following the common strategy.
class ProtocolDeviation : public std::runtime_error {
 public:
  explicit ProtocolDeviation(const std::string& what) : std::runtime_error(what) {}
};

// Convergence toward the exact (N, N+1) split. The minority restaurant
// holds N - delta agents; stage one ends exactly when delta hits 0.
struct StageOneState {
  std::uint32_t delta = 0;
  Choice minority_restaurant = Choice::A;
  friend bool operator==(const StageOneState&, const StageOneState&) = default;
};

// A co-located group of agents awaiting the reserved ID range
// [first_id, first_id + size - 1].
struct PendingSet {
  std::uint32_t size = 0;
  std::uint32_t first_id = 0;
  Choice location = Choice::A;

  std::uint32_t last_id() const { return first_id + size - 1; }
  friend bool operator==(const PendingSet&, const PendingSet&) = default;
};

// Depth-first splitting state. stack.back() is the set currently splitting;
// IDs are fixed in increasing order, so ids 1..assigned are already taken.
struct StageTwoState {
  std::vector<PendingSet> stack;
  std::uint32_t assigned = 0;

  const PendingSet& top() const { return stack.back(); }
  friend bool operator==(const StageTwoState&, const StageTwoState&) = default;
};

// Publicly inferable outcome of one splitting day: j agents shifted out of
// the set's restaurant. On an exact tie the shifted half becomes the first
// set (the one taking the lower ID sub-range).
struct SplitOutcome {
  std::uint32_t j = 0;
  std::uint32_t first_size = 0;
  bool tie_broken_by_shift = false;
};

enum class Phase : std::uint8_t { StageOne, StageTwo, Cyclic };

// j from the attendance delta at the splitting set's restaurant. Only the
// splitting set moves between the two days, so the drop equals j.
SplitOutcome infer_split(const DayRecord& prev, const DayRecord& cur, const PendingSet& set);

// Applies a split outcome to the top of the stack: the first (smaller) set
// takes the low sub-range and is processed next; singletons resolve
// instantly and cascade without consuming a day. j = 0 and j = r leave the
// set whole (relocated when j = r) to re-split the next day.
StageTwoState split_resolution(const StageTwoState& state, const SplitOutcome& outcome);

// Terminal schedule: ID 0 plays A every day; ID r >= 1 plays A only when
// day_offset == 2r-1 (mod 2N+1). day_offset counts 1, 2, ... from the day
// after assignments complete.
Choice cyclic_choice(AgentId id, std::uint64_t day_offset, std::uint32_t n_big);

// The protocol state every agent reconstructs from the public transcript
// alone. Deterministic: identical transcripts yield identical states.
class ProtocolState {
 public:
  struct SetResolved {
    std::uint32_t size = 0;  // pending-set size (>= 2)
    std::uint32_t days = 0;  // splitting days consumed by its whole subtree
  };
  using SetResolvedHook = std::function<void(const SetResolved&)>;

  static ProtocolState initial(const GameConfig& config);
  static ProtocolState replay(const PublicTranscript& t, const GameConfig& config);

  // Folds one day's attendance into the state. Throws ProtocolDeviation if
  // the record is inconsistent with any legal execution.
  void advance(const DayRecord& rec);

  Phase phase() const { return phase_; }
  std::uint32_t day() const { return day_; }
  const GameConfig& config() const { return config_; }

  // StageOne only; empty until the first record lands.
  const std::optional<StageOneState>& stage_one() const { return stage_one_; }
  // StageTwo only.
  const StageTwoState& stage_two() const { return stage_two_; }

  // Valid from StageTwo on.
  Choice id_zero_side() const { return id_zero_side_; }
  std::uint32_t stage_one_end_day() const { return stage_one_end_day_; }
  // Valid in Cyclic.
  std::uint32_t stage_two_end_day() const { return stage_two_end_day_; }
  std::uint32_t cyclic_start_day() const { return cyclic_start_day_; }
  std::uint64_t day_offset(std::uint64_t absolute_day) const;

  const DayRecord& last_record() const { return last_record_; }

  // Public-portion dump: phase tag, delta or stack contents (top first),
  // assigned count. Stable across replays byte for byte.
  std::string to_json() const;

  void set_on_set_resolved(SetResolvedHook hook) { on_set_resolved_ = std::move(hook); }

  friend bool operator==(const ProtocolState& a, const ProtocolState& b);

 private:
  void advance_stage_one(const DayRecord& rec);
  void advance_stage_two(const DayRecord& rec);
  void advance_cyclic(const DayRecord& rec);

  GameConfig config_;
  Phase phase_ = Phase::StageOne;
  std::uint32_t day_ = 0;
  std::optional<StageOneState> stage_one_;
  StageTwoState stage_two_;
  Choice id_zero_side_ = Choice::A;
  std::uint32_t stage_one_end_day_ = 0;
  std::uint32_t stage_two_end_day_ = 0;
  std::uint32_t cyclic_start_day_ = 0;
  DayRecord last_record_;

  // Open resolution spans, innermost last; (last_id, size) identifies one.
  struct ActiveSpan {
    std::uint32_t last_id = 0;
    std::uint32_t size = 0;
    std::uint32_t start_day = 0;
  };
  std::vector<ActiveSpan> spans_;
  SetResolvedHook on_set_resolved_;
};

// What one agent privately knows about her own place in the protocol,
// derivable from (transcript, own choices) alone.
struct AgentMembership {
  enum class Kind : std::uint8_t { Undecided, Pending, IdZero, Assigned };
  Kind kind = Kind::Undecided;
  std::uint32_t first_id = 0;  // Pending: reserved range start
  std::uint32_t size = 0;      // Pending: reserved range size
  std::uint32_t id = 0;        // IdZero / Assigned

  bool in_set(const PendingSet& set) const {
    return kind == Kind::Pending && first_id == set.first_id;
  }
  std::optional<AgentId> resolved_id() const {
    if (kind == Kind::IdZero || kind == Kind::Assigned) return AgentId{id};
    return std::nullopt;
  }
};

// Incremental private update: state_before is the public state before this
// day's record, own_prev the agent's choice the day before (ignored on day
// 1), own_today her choice on the day rec describes.
AgentMembership update_membership(const ProtocolState& state_before, const DayRecord& rec,
                                  const AgentMembership& membership, Choice own_prev,
                                  Choice own_today);

// Full private replay from scratch; pure in (transcript, own choices).
AgentMembership derive_membership(const GameConfig& config, const PublicTranscript& t,
                                  const std::vector<Choice>& own_choices);

// --- decision functions: public information + one agent's view only ---

// Stage one: day 1 picks A iff the draw is <= 1/2; later days the minority
// side repeats and a majority agent shifts with probability delta/(N+delta+1).
// Calling with delta = 0 is a contract violation (stage one already over).
Choice stage_one_decision(const GameConfig& config, const std::optional<StageOneState>& state,
                          AgentView& view);

// Stage two: members of the splitting set shift on a fair coin; everyone
// else repeats. in_top_set is the agent's own replay-derived membership.
Choice stage_two_decision(const StageTwoState& state, bool in_top_set, AgentView& view);

// One agent's next move given the public state after the last recorded day.
// The single dispatch point used by both the simulator and the pure replay
// path; touches nothing but (state, membership, view).
Choice next_choice(const ProtocolState& state, const AgentMembership& membership,
                   AgentView& view);

// Pure end-to-end decision from raw public + private history. Recomputes
// the replay every call; tests use it to pin the incremental path.
Choice decide_from_history(const GameConfig& config, const PublicTranscript& t, AgentView& view);

}  // namespace mg
