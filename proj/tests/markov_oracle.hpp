#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "mg/rational.hpp"

// Independent absorption-time oracle over the full state space of pending-set
// stacks. Never touches the closed recursion under test: the state is the
// literal stack of set sizes (top = back), a day splits the top set
// binomially, the smaller part goes on top, and parts of size <= 1 vanish.
namespace oracle {

class StackAbsorption {
 public:
  mg::BigRational expected_days(const std::vector<std::uint32_t>& stack) {
    if (stack.empty()) return mg::BigRational(0);
    if (stack.back() <= 1) {
      std::vector<std::uint32_t> trimmed = stack;
      while (!trimmed.empty() && trimmed.back() <= 1) trimmed.pop_back();
      return expected_days(trimmed);
    }
    const auto it = memo_.find(stack);
    if (it != memo_.end()) return it->second;

    const std::uint32_t r = stack.back();
    const mg::BigInt denom = mg::pow2(r);
    // j = 0 and j = r keep the stack identical, so the one-step equation
    // E = 1 + sum_j P(j) E(next_j) solves to
    // E (1 - 2^{1-r}) = 1 + sum_{j=1}^{r-1} P(j) E(child_j).
    mg::BigRational weighted(0);
    for (std::uint32_t j = 1; j <= r - 1; ++j) {
      std::vector<std::uint32_t> child = stack;
      child.pop_back();
      const std::uint32_t j1 = std::min(j, r - j);
      const std::uint32_t j2 = r - j1;
      if (j2 >= 2) child.push_back(j2);
      if (j1 >= 2) child.push_back(j1);
      weighted += mg::BigRational(mg::binomial(r, j), denom) * expected_days(child);
    }
    const mg::BigRational result =
        (mg::BigRational(1) + weighted) /
        (mg::BigRational(1) - mg::BigRational(mg::BigInt(2), denom));
    memo_.emplace(stack, result);
    return result;
  }

 private:
  std::map<std::vector<std::uint32_t>, mg::BigRational> memo_;
};

}  // namespace oracle
