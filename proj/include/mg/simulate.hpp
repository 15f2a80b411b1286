#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mg/model.hpp"
#include "mg/protocol.hpp"
#include "mg/rng.hpp"

namespace mg {

struct EpisodeResult {
  std::uint32_t stage_one_days = 0;
  std::uint32_t stage_two_days = 0;
  std::vector<AgentId> ids;  // agent_index -> id; empty unless cyclic reached
  PublicTranscript transcript;
  std::optional<std::string> deviation;
};

std::string episode_to_json(const EpisodeResult& episode);

struct McStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // duration -> count
};

struct EpisodeOptions {
  std::uint32_t day_cap = 0;  // 0: default, 10000 + 100*(N+1)
  bool stop_after_stage_one = false;
  ProtocolState::SetResolvedHook set_hook;  // per-set duration samples
};

// Simulates one full episode, day by day, until the cyclic phase begins.
// Fully deterministic in (config.master_seed, trial_index): agent i's
// stream is seeded by a stable hash of the triple. Exceeding the day cap
// throws; a protocol deviation is reported in the result (it cannot happen
// with compliant agents).
EpisodeResult run_episode(const GameConfig& config, std::uint64_t trial_index,
                          const EpisodeOptions& options = {});

// Test variant with externally scripted streams, one per agent.
EpisodeResult run_episode_with_streams(const GameConfig& config,
                                       const std::vector<RandomSource*>& streams,
                                       const EpisodeOptions& options = {});

struct McResult {
  McStats stage_one;
  McStats stage_two;
};

// Independent episodes, optionally in parallel; the reduction is ordered by
// trial index, so results do not depend on the worker count.
McResult run_monte_carlo(const GameConfig& config, std::uint64_t trials,
                         unsigned n_threads = 0);

struct ScalingRow {
  std::uint32_t n_big = 0;
  std::uint64_t trials = 0;
  double mean_days = 0.0;
  double std_error = 0.0;
};

// Mean stage-one duration per population size (episodes stop at the end of
// stage one, so very large N stays cheap).
std::vector<ScalingRow> stage_one_scaling(const std::vector<std::uint32_t>& n_values,
                                          std::uint64_t trials, std::uint64_t master_seed,
                                          unsigned n_threads = 0);

struct CyclicReport {
  std::uint64_t periods = 0;
  bool attendance_ok = true;        // A holds N+1 on odd offsets, N on even
  bool wins_exact_each_period = true;  // every agent wins exactly N per period
  std::uint64_t window_violations = 0;
  std::vector<std::vector<std::uint32_t>> wins_per_period;  // [period][agent]
};

// Runs the terminal schedule for `horizon` days under the given assignment
// and checks the efficiency claims exhaustively: exact N wins per agent per
// period and m-1..m wins in every 2m-day window, for all m <= 2N+1.
CyclicReport validate_cyclic(const GameConfig& config, const std::vector<AgentId>& ids,
                             std::uint64_t horizon);

struct PayoffLedger {
  std::vector<std::uint64_t> wins;  // cumulative per agent
  std::uint64_t horizon = 0;
  std::uint32_t max_winners_per_day = 0;

  double mean_payoff_per_agent_day() const {
    if (horizon == 0 || wins.empty()) return 0.0;
    std::uint64_t total = 0;
    for (std::uint64_t w : wins) total += w;
    return static_cast<double>(total) /
           (static_cast<double>(wins.size()) * static_cast<double>(horizon));
  }
};

// Driver-side payoff accounting from ground-truth choices: the strictly
// smaller restaurant wins the day. Throws if choices do not tally with the
// transcript.
PayoffLedger payoff_audit(const GameConfig& config, const PublicTranscript& t,
                          const std::vector<std::vector<Choice>>& choices);

struct BaselineResult {
  std::optional<std::uint64_t> periods;  // empty on timeout
};

// Trial-and-error alternative: every agent phase-shifts a fixed
// length-(2N+1) template, and after each full period the agents whose
// cycle start landed on an overcrowded day re-draw (with probability
// readjust_prob) a phase among the days that showed attendance <= N.
// Terminates when a full period is perfect, i.e. restaurant A holds
// exactly N+1 agents every day.
BaselineResult baseline_phase_shift(const GameConfig& config, double readjust_prob,
                                    std::uint64_t max_rounds, std::uint64_t trial_index);

// Test variant with fixed initial phases (values in [0, 2N]).
BaselineResult baseline_phase_shift_with_phases(const GameConfig& config,
                                                std::vector<std::uint32_t> phases,
                                                double readjust_prob, std::uint64_t max_rounds,
                                                RandomSource& rng);

}  // namespace mg
