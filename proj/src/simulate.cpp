#include "mg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <thread>

namespace mg {

namespace {

std::uint32_t default_day_cap(const GameConfig& config) {
  return 10000 + 100 * (config.n_big + 1);
}

McStats stats_from(const std::vector<std::uint32_t>& samples) {
  McStats stats;
  stats.trials = samples.size();
  if (samples.empty()) return stats;
  double sum = 0;
  for (std::uint32_t x : samples) {
    sum += x;
    ++stats.histogram[x];
  }
  stats.mean = sum / static_cast<double>(samples.size());
  if (samples.size() >= 2) {
    double ss = 0;
    for (std::uint32_t x : samples) {
      const double d = static_cast<double>(x) - stats.mean;
      ss += d * d;
    }
    stats.std_error = std::sqrt(ss / (static_cast<double>(samples.size()) *
                                      static_cast<double>(samples.size() - 1)));
  }
  return stats;
}

// Splits [0, total) into chunks and runs fn(first, last) on each worker.
void parallel_chunks(std::uint64_t total, unsigned n_threads,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  unsigned workers = n_threads != 0 ? n_threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (total < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  if (workers <= 1 || total < 2) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = w * chunk;
    const std::uint64_t last = std::min(total, first + chunk);
    if (first >= last) break;
    pool.emplace_back(fn, first, last);
  }
  for (auto& t : pool) t.join();
}

EpisodeResult run_episode_impl(const GameConfig& config,
                               const std::vector<RandomSource*>& streams,
                               const EpisodeOptions& options) {
  config.validate();
  const std::uint32_t n_agents = config.n_agents();
  if (streams.size() != n_agents) {
    throw std::invalid_argument("run_episode: need one stream per agent");
  }

  std::vector<AgentView> views(n_agents);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    views[i].agent_index = i;
    views[i].rng_stream = streams[i];
  }
  std::vector<AgentMembership> memberships(n_agents);

  ProtocolState state = ProtocolState::initial(config);
  if (options.set_hook) state.set_on_set_resolved(options.set_hook);

  const std::uint32_t cap = options.day_cap != 0 ? options.day_cap : default_day_cap(config);
  EpisodeResult result;
  std::vector<Choice> today(n_agents);

  try {
    while (state.phase() != Phase::Cyclic) {
      if (options.stop_after_stage_one && state.phase() == Phase::StageTwo) break;
      if (state.day() >= cap) {
        throw std::runtime_error("run_episode: day cap exceeded before the cyclic phase");
      }

      std::uint32_t att_a = 0;
      for (std::uint32_t i = 0; i < n_agents; ++i) {
        today[i] = next_choice(state, memberships[i], views[i]);
        att_a += today[i] == Choice::A ? 1 : 0;
      }
      const DayRecord rec{att_a, n_agents - att_a};

      for (std::uint32_t i = 0; i < n_agents; ++i) {
        const Choice prev = views[i].own_choices.empty() ? today[i] : views[i].own_choices.back();
        memberships[i] = update_membership(state, rec, memberships[i], prev, today[i]);
        views[i].own_choices.push_back(today[i]);
      }
      state.advance(rec);
      result.transcript.append(rec);
    }

    if (state.phase() != Phase::StageOne) result.stage_one_days = state.stage_one_end_day();
    if (state.phase() == Phase::Cyclic) {
      result.stage_two_days = state.stage_two_end_day() - state.stage_one_end_day();
      result.ids.resize(n_agents);
      for (std::uint32_t i = 0; i < n_agents; ++i) {
        const auto id = memberships[i].resolved_id();
        if (!id) throw std::logic_error("run_episode: unresolved agent after completion");
        result.ids[i] = *id;
      }
    }
  } catch (const ProtocolDeviation& deviation) {
    result.deviation = deviation.what();
  }
  return result;
}

}  // namespace

EpisodeResult run_episode(const GameConfig& config, std::uint64_t trial_index,
                          const EpisodeOptions& options) {
  const std::uint32_t n_agents = config.n_agents();
  std::vector<SeededStream> streams;
  streams.reserve(n_agents);
  std::vector<RandomSource*> ptrs(n_agents);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    streams.emplace_back(stream_seed(config.master_seed, trial_index, i));
    ptrs[i] = &streams[i];
  }
  return run_episode_impl(config, ptrs, options);
}

EpisodeResult run_episode_with_streams(const GameConfig& config,
                                       const std::vector<RandomSource*>& streams,
                                       const EpisodeOptions& options) {
  return run_episode_impl(config, streams, options);
}

std::string episode_to_json(const EpisodeResult& episode) {
  nlohmann::json out;
  out["stage_one_days"] = episode.stage_one_days;
  out["stage_two_days"] = episode.stage_two_days;
  nlohmann::json ids = nlohmann::json::array();
  for (const AgentId& id : episode.ids) ids.push_back(id.value);
  out["ids"] = std::move(ids);
  out["transcript"] = nlohmann::json::parse(transcript_to_json(episode.transcript));
  if (episode.deviation) {
    out["deviation"] = *episode.deviation;
  } else {
    out["deviation"] = nullptr;
  }
  return out.dump();
}

McResult run_monte_carlo(const GameConfig& config, std::uint64_t trials, unsigned n_threads) {
  if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
  std::vector<std::uint32_t> s1(trials), s2(trials);
  std::string failure;
  std::mutex failure_mu;

  parallel_chunks(trials, n_threads, [&](std::uint64_t first, std::uint64_t last) {
    try {
      for (std::uint64_t t = first; t < last; ++t) {
        const EpisodeResult episode = run_episode(config, t);
        if (episode.deviation) {
          throw std::runtime_error("run_monte_carlo: protocol deviation in trial " +
                                   std::to_string(t) + ": " + *episode.deviation);
        }
        s1[t] = episode.stage_one_days;
        s2[t] = episode.stage_two_days;
      }
    } catch (const std::exception& e) {
      const std::lock_guard<std::mutex> lock(failure_mu);
      if (failure.empty()) failure = e.what();
    }
  });
  if (!failure.empty()) throw std::runtime_error(failure);

  return McResult{stats_from(s1), stats_from(s2)};
}

std::vector<ScalingRow> stage_one_scaling(const std::vector<std::uint32_t>& n_values,
                                          std::uint64_t trials, std::uint64_t master_seed,
                                          unsigned n_threads) {
  std::vector<ScalingRow> rows;
  rows.reserve(n_values.size());
  for (const std::uint32_t n_big : n_values) {
    GameConfig config{n_big, master_seed};
    config.validate();
    std::vector<std::uint32_t> days(trials);
    std::string failure;
    std::mutex failure_mu;
    parallel_chunks(trials, n_threads, [&](std::uint64_t first, std::uint64_t last) {
      try {
        EpisodeOptions options;
        options.stop_after_stage_one = true;
        for (std::uint64_t t = first; t < last; ++t) {
          const EpisodeResult episode = run_episode(config, t, options);
          if (episode.deviation) throw std::runtime_error("stage_one_scaling: deviation");
          days[t] = episode.stage_one_days;
        }
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (failure.empty()) failure = e.what();
      }
    });
    if (!failure.empty()) throw std::runtime_error(failure);
    const McStats stats = stats_from(days);
    rows.push_back(ScalingRow{n_big, trials, stats.mean, stats.std_error});
  }
  return rows;
}

CyclicReport validate_cyclic(const GameConfig& config, const std::vector<AgentId>& ids,
                             std::uint64_t horizon) {
  config.validate();
  const std::uint32_t n_agents = config.n_agents();
  const std::uint32_t n = config.n_big;
  const std::uint64_t period = 2ull * n + 1;
  if (ids.size() != n_agents) throw std::invalid_argument("validate_cyclic: ids size mismatch");
  if (horizon < 2 * period) throw std::invalid_argument("validate_cyclic: horizon < 2 periods");

  // ids must be a legal completed assignment.
  std::vector<std::uint32_t> held(n + 2, 0);
  for (const AgentId& id : ids) {
    if (id.value > n + 1) throw std::invalid_argument("validate_cyclic: id out of range");
    ++held[id.value];
  }
  if (held[0] != n) throw std::invalid_argument("validate_cyclic: ID 0 must be held by N agents");
  for (std::uint32_t v = 1; v <= n + 1; ++v) {
    if (held[v] != 1) throw std::invalid_argument("validate_cyclic: IDs 1..N+1 must be unique");
  }

  CyclicReport report;
  report.periods = horizon / period;

  // wins[agent][day-1] over the horizon.
  std::vector<std::vector<bool>> won(n_agents, std::vector<bool>(horizon, false));
  for (std::uint64_t day = 1; day <= horizon; ++day) {
    const std::uint64_t offset = (day - 1) % period + 1;
    std::uint32_t att_a = 0;
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      if (cyclic_choice(ids[i], offset, n) == Choice::A) ++att_a;
    }
    const std::uint32_t expected_a = offset % 2 == 1 ? n + 1 : n;
    if (att_a != expected_a) report.attendance_ok = false;
    const Choice minority = att_a <= n ? Choice::A : Choice::B;
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      won[i][day - 1] = cyclic_choice(ids[i], offset, n) == minority;
    }
  }

  report.wins_per_period.assign(report.periods, std::vector<std::uint32_t>(n_agents, 0));
  for (std::uint64_t p = 0; p < report.periods; ++p) {
    for (std::uint64_t day = p * period + 1; day <= (p + 1) * period; ++day) {
      for (std::uint32_t i = 0; i < n_agents; ++i) {
        if (won[i][day - 1]) ++report.wins_per_period[p][i];
      }
    }
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      if (report.wins_per_period[p][i] != n) report.wins_exact_each_period = false;
    }
  }

  // Window property: in any 2m consecutive days an agent wins m-1 or m
  // times, for every m up to a full period. Exhaustive over in-horizon
  // windows via prefix sums.
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    std::vector<std::uint32_t> prefix(horizon + 1, 0);
    for (std::uint64_t day = 1; day <= horizon; ++day) {
      prefix[day] = prefix[day - 1] + (won[i][day - 1] ? 1 : 0);
    }
    for (std::uint64_t m = 1; m <= period; ++m) {
      const std::uint64_t len = 2 * m;
      if (len > horizon) break;
      for (std::uint64_t start = 1; start + len - 1 <= horizon; ++start) {
        const std::uint32_t w = prefix[start + len - 1] - prefix[start - 1];
        if (w + 1 < m || w > m) ++report.window_violations;
      }
    }
  }
  return report;
}

PayoffLedger payoff_audit(const GameConfig& config, const PublicTranscript& t,
                          const std::vector<std::vector<Choice>>& choices) {
  config.validate();
  const std::uint32_t n_agents = config.n_agents();
  if (choices.size() != n_agents) throw std::invalid_argument("payoff_audit: choices size");
  PayoffLedger ledger;
  ledger.wins.assign(n_agents, 0);
  ledger.horizon = t.size();

  for (std::size_t d = 1; d <= t.size(); ++d) {
    std::uint32_t att_a = 0;
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      if (choices[i].size() < t.size()) {
        throw std::invalid_argument("payoff_audit: choice history shorter than transcript");
      }
      if (choices[i][d - 1] == Choice::A) ++att_a;
    }
    if (att_a != t.day(d).attendance_a) {
      throw std::invalid_argument("payoff_audit: choices disagree with transcript");
    }
    const Choice minority = att_a <= config.n_big ? Choice::A : Choice::B;
    std::uint32_t winners = 0;
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      if (choices[i][d - 1] == minority) {
        ++ledger.wins[i];
        ++winners;
      }
    }
    ledger.max_winners_per_day = std::max(ledger.max_winners_per_day, winners);
  }
  return ledger;
}

namespace {

// Length-(2N+1) base pattern: A on day 1 and on even days, B otherwise,
// so a full stagger puts exactly N agents in B every day.
Choice template_choice(std::uint64_t position) {
  return (position == 1 || position % 2 == 0) ? Choice::A : Choice::B;
}

BaselineResult baseline_loop(const GameConfig& config, std::vector<std::uint32_t>& phases,
                             double readjust_prob, std::uint64_t max_rounds,
                             const std::function<double()>& draw) {
  const std::uint32_t n = config.n_big;
  const std::uint64_t period = 2ull * n + 1;
  const std::uint32_t n_agents = config.n_agents();

  std::vector<std::uint32_t> att_a(period + 1, 0);
  std::vector<std::uint32_t> low_days;
  for (std::uint64_t round = 1; round <= max_rounds; ++round) {
    std::fill(att_a.begin(), att_a.end(), 0);
    for (std::uint64_t tau = 1; tau <= period; ++tau) {
      for (std::uint32_t i = 0; i < n_agents; ++i) {
        const std::uint64_t position = (tau - 1 + period - phases[i]) % period + 1;
        if (template_choice(position) == Choice::A) ++att_a[tau];
      }
    }

    bool perfect = true;
    for (std::uint64_t tau = 1; tau <= period; ++tau) {
      if (att_a[tau] != n + 1) perfect = false;
    }
    if (perfect) return BaselineResult{round};

    // Synchronous re-draw pass on the period just observed: an agent whose
    // cycle start landed on an overcrowded day moves it to a day that
    // showed strictly less crowding than the one she abandons. (Targeting
    // only days with attendance <= N instead leaves the dynamics unable to
    // fill the final free phase; for N = 1 no near-perfect configuration
    // can complete under that rule.)
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      const std::uint64_t start_day = phases[i] + 1;
      if (att_a[start_day] > n + 1 && draw() < readjust_prob) {
        low_days.clear();
        for (std::uint64_t tau = 1; tau <= period; ++tau) {
          if (att_a[tau] < att_a[start_day]) low_days.push_back(static_cast<std::uint32_t>(tau));
        }
        const auto pick = static_cast<std::size_t>(draw() * static_cast<double>(low_days.size()));
        phases[i] = low_days[std::min(pick, low_days.size() - 1)] - 1;
      }
    }
  }
  return BaselineResult{std::nullopt};
}

}  // namespace

BaselineResult baseline_phase_shift(const GameConfig& config, double readjust_prob,
                                    std::uint64_t max_rounds, std::uint64_t trial_index) {
  config.validate();
  if (readjust_prob < 0.0 || readjust_prob > 1.0) {
    throw std::invalid_argument("baseline_phase_shift: readjust_prob in [0, 1]");
  }
  const std::uint32_t n_agents = config.n_agents();
  const std::uint64_t period = 2ull * config.n_big + 1;

  // One shared driver stream keeps the loop allocation-free; agents are
  // drawn for in a fixed order, which is equivalent to per-agent streams.
  SeededStream rng(stream_seed(config.master_seed, trial_index, 0x8a5e11eull));
  std::vector<std::uint32_t> phases(n_agents);
  for (auto& phase : phases) {
    phase = static_cast<std::uint32_t>(rng.next_uniform() * static_cast<double>(period));
    phase = std::min<std::uint32_t>(phase, static_cast<std::uint32_t>(period - 1));
  }
  return baseline_loop(config, phases, readjust_prob, max_rounds,
                       [&rng]() { return rng.next_uniform(); });
}

BaselineResult baseline_phase_shift_with_phases(const GameConfig& config,
                                                std::vector<std::uint32_t> phases,
                                                double readjust_prob, std::uint64_t max_rounds,
                                                RandomSource& rng) {
  config.validate();
  if (phases.size() != config.n_agents()) {
    throw std::invalid_argument("baseline_phase_shift_with_phases: phases size mismatch");
  }
  for (const std::uint32_t phase : phases) {
    if (phase > 2 * config.n_big) {
      throw std::invalid_argument("baseline_phase_shift_with_phases: phase out of [0, 2N]");
    }
  }
  return baseline_loop(config, phases, readjust_prob, max_rounds,
                       [&rng]() { return rng.next_uniform(); });
}

}  // namespace mg
