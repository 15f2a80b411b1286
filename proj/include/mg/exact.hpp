#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mg/rational.hpp"

namespace mg {

// Expected-days table for the recursive fair-coin splitting of n agents,
// computed exactly: values[0] = values[1] = 0, values[2] = 2, and so on.
class ExactTimeTable {
 public:
  static ExactTimeTable compute(std::size_t n_max);
  // Wraps externally supplied coefficients (tests, file import).
  static ExactTimeTable from_values(std::vector<BigRational> values) {
    ExactTimeTable table;
    table.values_ = std::move(values);
    return table;
  }

  const BigRational& at(std::size_t n) const { return values_.at(n); }
  std::size_t max_n() const { return values_.size() - 1; }
  const std::vector<BigRational>& values() const { return values_; }

  // `n,T_n_numerator,T_n_denominator,T_n_float`
  std::string to_csv() const;

 private:
  std::vector<BigRational> values_;
};

// Expected days to split one set of n agents into uniquely labeled
// singletons. Exact rational; n >= 0.
BigRational exact_expected_time(long n);

using SeriesCoefficients = std::vector<BigRational>;

// Checks, in exact rational series arithmetic, that the generating function
// of the table satisfies  T(x) = x^2/(1 - x/2) + 4/(2-x) * T(x/(2-x))
// through the given coefficient order.
bool verify_functional_equation(const ExactTimeTable& table, std::size_t order);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of T_n against n over n_min..n_max inclusive.
LinearFit linear_fit(const ExactTimeTable& table, std::size_t n_min, std::size_t n_max);

}  // namespace mg
