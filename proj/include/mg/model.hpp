#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mg {

// The two options available to every agent each day.
enum class Choice : std::uint8_t { A, B };

inline Choice other(Choice c) { return c == Choice::A ? Choice::B : Choice::A; }
inline char to_char(Choice c) { return c == Choice::A ? 'A' : 'B'; }

struct GameConfig {
  // Population is 2*n_big + 1 agents; n_big >= 1 so the population is odd and >= 3.
  std::uint32_t n_big = 1;
  std::uint64_t master_seed = 0;

  std::uint32_t n_agents() const { return 2 * n_big + 1; }

  void validate() const {
    if (n_big < 1) throw std::invalid_argument("GameConfig: n_big must be >= 1");
  }
};

// Daily attendance counts, the only information ever published.
struct DayRecord {
  std::uint32_t attendance_a = 0;
  std::uint32_t attendance_b = 0;

  std::uint32_t count(Choice c) const { return c == Choice::A ? attendance_a : attendance_b; }
  friend bool operator==(const DayRecord&, const DayRecord&) = default;
};

// Append-only public attendance history; day indices start at 1, so
// days[d-1] is the record of day d.
struct PublicTranscript {
  std::vector<DayRecord> days;

  std::size_t size() const { return days.size(); }
  const DayRecord& day(std::size_t d) const { return days.at(d - 1); }
  void append(DayRecord rec) { days.push_back(rec); }
  friend bool operator==(const PublicTranscript&, const PublicTranscript&) = default;
};

// true iff every day's attendance sums to exactly 2N+1.
inline bool validate_transcript(const PublicTranscript& t, const GameConfig& c) {
  for (const DayRecord& rec : t.days) {
    if (rec.attendance_a + rec.attendance_b != c.n_agents()) return false;
  }
  return true;
}

// Protocol-level identity. 0 is shared by N agents; 1..N+1 are unique.
struct AgentId {
  std::uint32_t value = 0;
  friend bool operator==(const AgentId&, const AgentId&) = default;
};

class RandomSource;

// One agent's private information: her own past choices and her personal
// random stream. The agent_index is a simulator-only label used by the
// driver and tests; decision logic never receives anything but one view.
struct AgentView {
  std::uint32_t agent_index = 0;
  std::vector<Choice> own_choices;
  RandomSource* rng_stream = nullptr;

  Choice last_choice() const {
    if (own_choices.empty()) throw std::logic_error("AgentView: no choices yet");
    return own_choices.back();
  }
};

// --- transcript serialization (CSV `day,attendance_a,attendance_b` and a JSON mirror) ---

std::string transcript_to_csv(const PublicTranscript& t);
PublicTranscript transcript_from_csv(const std::string& csv);
std::string transcript_to_json(const PublicTranscript& t);
PublicTranscript transcript_from_json(const std::string& json_text);

}  // namespace mg
