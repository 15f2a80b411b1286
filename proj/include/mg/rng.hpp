#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <utility>

namespace mg {

// Uniform draws in [0, 1). Abstract so tests can script exact sequences.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double next_uniform() = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stable per-agent stream seed: episodes are reproducible from
// (master_seed, trial_index) alone, independent of scheduling.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                 std::uint64_t agent_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ (trial_index * 0xD1B54A32D192ED03ull));
  h = splitmix64(h ^ (agent_index * 0xEB44ACCAB455D165ull));
  return h;
}

// xoshiro256++; small state and O(1) seeding, which matters when a single
// episode instantiates tens of thousands of streams.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) word = x = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Doubles use the top 53 bits, so draws are identical on every platform.
class SeededStream final : public RandomSource {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}
  double next_uniform() override {
    return static_cast<double>(engine_.next() >> 11) * 0x1.0p-53;
  }

 private:
  Xoshiro256 engine_;
};

// Test aid: replays a fixed sequence of draws, throws when exhausted.
class ScriptedStream final : public RandomSource {
 public:
  ScriptedStream() = default;
  explicit ScriptedStream(std::deque<double> draws) : draws_(std::move(draws)) {}
  void push(double u) { draws_.push_back(u); }
  double next_uniform() override {
    if (draws_.empty()) throw std::logic_error("ScriptedStream: out of draws");
    double u = draws_.front();
    draws_.pop_front();
    return u;
  }
  std::size_t remaining() const { return draws_.size(); }

 private:
  std::deque<double> draws_;
};

}  // namespace mg
