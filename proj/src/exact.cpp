#include "mg/exact.hpp"

#include <cstdio>
#include <stdexcept>

namespace mg {

ExactTimeTable ExactTimeTable::compute(std::size_t n_max) {
  ExactTimeTable table;
  table.values_.reserve(n_max + 1);
  table.values_.push_back(BigRational(0));
  if (n_max >= 1) table.values_.push_back(BigRational(0));

  for (std::size_t n = 2; n <= n_max; ++n) {
    // T_n (1 - 2^{1-n}) = 1 + 2^{1-n} sum_{r<n} C(n,r) T_r, solved for T_n:
    //   T_n = (2^{n-1} + sum_{r=2}^{n-1} C(n,r) T_r) / (2^{n-1} - 1).
    BigRational sum(0);
    BigInt binom(1);  // C(n, r), updated incrementally
    for (std::size_t r = 0; r <= n - 1; ++r) {
      if (r >= 2) sum += BigRational(binom) * table.values_[r];
      binom *= static_cast<unsigned long>(n - r);
      binom /= static_cast<unsigned long>(r + 1);
    }
    const BigInt half_pow = pow2(static_cast<unsigned long>(n - 1));
    table.values_.push_back((BigRational(half_pow) + sum) / BigRational(half_pow - 1));
  }
  return table;
}

BigRational exact_expected_time(long n) {
  if (n < 0) throw std::invalid_argument("exact_expected_time: n must be >= 0");
  return ExactTimeTable::compute(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(n));
}

std::string ExactTimeTable::to_csv() const {
  std::string out = "n,T_n_numerator,T_n_denominator,T_n_float\n";
  char buf[64];
  for (std::size_t n = 0; n < values_.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%.17g", values_[n].to_double());
    out += std::to_string(n);
    out += ',';
    out += values_[n].numerator().get_str();
    out += ',';
    out += values_[n].denominator().get_str();
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

namespace {

// Truncated product of two formal power series.
SeriesCoefficients series_mul(const SeriesCoefficients& a, const SeriesCoefficients& b,
                              std::size_t order) {
  SeriesCoefficients out(order + 1, BigRational(0));
  for (std::size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i] == BigRational(0)) continue;
    for (std::size_t k = 0; i + k <= order && k < b.size(); ++k) {
      out[i + k] += a[i] * b[k];
    }
  }
  return out;
}

}  // namespace

bool verify_functional_equation(const ExactTimeTable& table, std::size_t order) {
  if (order > table.max_n()) {
    throw std::invalid_argument("verify_functional_equation: order exceeds computed table");
  }

  // x^2/(1 - x/2): coefficient 2^{2-m} at x^m for m >= 2.
  SeriesCoefficients geometric(order + 1, BigRational(0));
  for (std::size_t m = 2; m <= order; ++m) {
    geometric[m] = BigRational(BigInt(4), pow2(static_cast<unsigned long>(m)));
  }

  // 4/(2 - x): coefficient 2^{1-k} at x^k.
  SeriesCoefficients prefactor(order + 1, BigRational(0));
  for (std::size_t k = 0; k <= order; ++k) {
    prefactor[k] = BigRational(BigInt(2), pow2(static_cast<unsigned long>(k)));
  }

  // u(x) = x/(2 - x): coefficient 2^{-k} at x^k for k >= 1.
  SeriesCoefficients u(order + 1, BigRational(0));
  for (std::size_t k = 1; k <= order; ++k) {
    u[k] = BigRational(BigInt(1), pow2(static_cast<unsigned long>(k)));
  }

  // T(u) truncated: u has no constant term, so powers of u gain degree.
  SeriesCoefficients composed(order + 1, BigRational(0));
  SeriesCoefficients u_pow = u;
  for (std::size_t r = 2; r <= order; ++r) {
    u_pow = series_mul(u_pow, u, order);  // now u^r
    const BigRational& coeff = table.at(r);
    for (std::size_t k = 0; k <= order; ++k) composed[k] += coeff * u_pow[k];
  }

  SeriesCoefficients rhs = series_mul(prefactor, composed, order);
  for (std::size_t k = 0; k <= order; ++k) rhs[k] += geometric[k];

  for (std::size_t k = 0; k <= order; ++k) {
    const BigRational lhs = k < 2 ? BigRational(0) : table.at(k);
    if (lhs != rhs[k]) return false;
  }
  return true;
}

LinearFit linear_fit(const ExactTimeTable& table, std::size_t n_min, std::size_t n_max) {
  if (n_max > table.max_n()) throw std::invalid_argument("linear_fit: range exceeds table");
  if (n_min + 1 > n_max) throw std::invalid_argument("linear_fit: need at least 2 points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(n_max - n_min + 1);
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    const double y = table.at(n).to_double();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  LinearFit fit;
  fit.slope = (count * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / count;
  return fit;
}

}  // namespace mg
