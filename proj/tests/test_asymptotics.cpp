#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>

#include "mg/asymptotics.hpp"
#include "mg/rng.hpp"

using namespace mg;
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kTol = 1e-15;
const double kLn2 = std::log(2.0);
const double kA = 1.0 / kLn2;

double rel_diff(double x, double y) { return std::fabs(x - y) / std::max(std::fabs(x), 1e-300); }

}  // namespace

TEST_CASE("kernel: symmetric, unit mass, stable in the tails") {
  CHECK(logistic_kernel(0.0) == doctest::Approx(0.25).epsilon(1e-15));
  for (double x : {0.5, 3.0, 20.0, 700.0, 5000.0}) {
    CHECK(logistic_kernel(x) == logistic_kernel(-x));
    CHECK(logistic_kernel(x) >= 0.0);
    CHECK(std::isfinite(logistic_kernel(x)));
  }
  CHECK(logistic_kernel(5000.0) == 0.0);  // underflows cleanly, no NaN
  // Unit mass, via the transform at zero frequency.
  CHECK(std::abs(g_tilde_numeric(0.0).real() - 1.0) < 1e-12);
}

TEST_CASE("one-sided sum satisfies its own downshift identity") {
  const double tol = 1e-12;
  for (double y : {0.1, 1.0, 3.0}) {
    const double lhs = dyadic_sum_one_sided(y, tol) - dyadic_sum_one_sided(2 * y, tol);
    const double rhs = y / ((1 + y) * (1 + y));
    CHECK(std::fabs(lhs - rhs) < 10 * tol);
  }
}

TEST_CASE("one-sided sum: large-argument decay and errors") {
  CHECK(dyadic_sum_one_sided(1e6, 1e-12) < 1e-5);
  CHECK_THROWS_AS(dyadic_sum_one_sided(0.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_sum_one_sided(-1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_sum_one_sided(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("one-sided sum at y = 1 matches the extended-precision partial sums") {
  // Oracle: direct partial sums with s <= 80 in 50-digit arithmetic.
  Float50 reference = 0;
  for (int s = 0; s <= 80; ++s) {
    const Float50 u = pow(Float50(2), s);
    reference += u / ((u + 1) * (u + 1));
  }
  CHECK(static_cast<double>(reference) == doctest::Approx(0.8463475204797203).epsilon(1e-15));
  CHECK(rel_diff(dyadic_sum_one_sided(1.0, 1e-18), static_cast<double>(reference)) < 1e-14);
}

TEST_CASE("two-sided sum: log-periodic and reflection-symmetric") {
  for (double y : {0.3, 1.0, 1.7}) {
    CHECK(rel_diff(dyadic_sum_two_sided(2 * y), dyadic_sum_two_sided(y)) < 1e-14);
  }
  Xoshiro256 rng(577);
  for (int iter = 0; iter < 100; ++iter) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    const double y = std::pow(10.0, -3.0 + 6.0 * u);
    CHECK(rel_diff(dyadic_sum_two_sided(2 * y), dyadic_sum_two_sided(y)) < 1e-14);
    CHECK(rel_diff(dyadic_sum_two_sided(1.0 / y), dyadic_sum_two_sided(y)) < 1e-14);
  }
  CHECK_THROWS_AS(dyadic_sum_two_sided(0.0), std::invalid_argument);
}

TEST_CASE("two-sided sum at y = 1") {
  CHECK(dyadic_sum_two_sided(1.0) == doctest::Approx(1.4426950).epsilon(1e-7));
  CHECK(dyadic_sum_two_sided(1.0) == doctest::Approx(1.4426950409594406).epsilon(1e-14));
}

TEST_CASE("one-sided sum converges to the two-sided limit as y -> 0") {
  const double y0 = 1.3;
  double previous_gap = 1.0;
  for (int m = 2; m <= 30; m += 7) {
    const double y = std::ldexp(y0, -m);  // 2^-m y0, exact
    const double gap = std::fabs(dyadic_sum_one_sided(y, 1e-18) - dyadic_sum_two_sided(y));
    CHECK(gap < 2 * y);  // omitted negative-s terms total about y
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
}

TEST_CASE("oscillation profile: mean, amplitude, shape") {
  const OscillationProfile profile = sample_oscillation_profile(1024);
  REQUIRE(profile.samples.size() == 1024);
  CHECK(profile.samples.front().first == 0.0);
  CHECK(profile.samples.back().first < 1.0);

  CHECK(std::fabs(profile.mean - 1.44269504089) < 1e-9);
  CHECK(std::fabs(profile.mean - kA) < 1e-9);
  CHECK(profile.mean > 1.4426);
  CHECK(profile.mean < 1.4428);

  // First harmonic about 7.05e-11; (max-min)/2 agrees to sampling accuracy.
  CHECK(profile.amplitude_dft == doctest::Approx(7.0477e-11).epsilon(5e-3));
  CHECK(rel_diff(profile.amplitude_minmax, profile.amplitude_dft) < 1e-2);

  CHECK_THROWS_AS(sample_oscillation_profile(63), std::invalid_argument);
}

TEST_CASE("kernel transform: numeric integration against the closed form") {
  const std::complex<double> at_zero = g_tilde_numeric(0.0);
  CHECK(std::fabs(at_zero.real() - 1.0) < 1e-12);
  CHECK(std::fabs(at_zero.imag()) < 1e-14);

  // Hermitian symmetry of the transform of a real kernel.
  for (double kappa : {0.37, kA, 2.2}) {
    const std::complex<double> plus = g_tilde_numeric(kappa);
    const std::complex<double> minus = g_tilde_numeric(-kappa);
    CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-13));
    CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-13));
  }

  CHECK(rel_diff(std::abs(g_tilde_numeric(0.5)), g_tilde_closed(0.5)) < 1e-8);
  // Residue magnitude at the first log-periodic frequency, within 1%.
  CHECK(rel_diff(std::abs(g_tilde_numeric(kA)), g_tilde_closed(kA)) < 1e-2);
  CHECK(g_tilde_closed(kA) == doctest::Approx(2.4426e-11).epsilon(1e-2));
}

TEST_CASE("alpha: closed form, arithmetic, and measured harmonic") {
  const AlphaReport report = compute_alpha();
  CHECK(rel_diff(report.closed_form, 7.05e-11) < 1e-2);
  CHECK(report.measured_dft / report.closed_form > 0.95);
  CHECK(report.measured_dft / report.closed_form < 1.05);

  // Exponent bookkeeping: 2 pi^2 / ln 2 = 28.47788... and the prefactor
  // folds the mean 1/ln2 into 8 pi^2 / ln^2 2.
  const double exponent = 2.0 * M_PI * M_PI / kLn2;
  CHECK(exponent == doctest::Approx(28.477889766899388).epsilon(1e-13));
  const double closed = 8.0 * M_PI * M_PI / (kLn2 * kLn2) * std::exp(-exponent);
  CHECK(rel_diff(report.closed_form, closed) < 1e-14);
  // The cosine coefficient equals twice the transform value, over ln 2.
  CHECK(rel_diff(report.closed_form, 2.0 * g_tilde_closed(kA) / kLn2) < 1e-12);
}

TEST_CASE("poisson reconstruction from harmonics 0 and +-1 (double)") {
  const double coefficient = 2.0 * g_tilde_numeric(kA).real() / kLn2;
  Xoshiro256 rng(40404);
  for (int iter = 0; iter < 50; ++iter) {
    const double theta = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    const double y = std::exp2(theta);
    const double reconstructed = kA + coefficient * std::cos(2.0 * M_PI * theta);
    CHECK(std::fabs(reconstructed - dyadic_sum_two_sided(y)) < 1e-12);
  }
}

TEST_CASE("extended precision validates the double pipeline") {
  using std::cos;
  const Float50 pi_mp = acos(Float50(-1));
  const Float50 ln2_mp = log(Float50(2));

  // Pointwise agreement of the two-sided sum.
  for (double y : {0.2, 0.77, 1.0, 1.5, 13.0}) {
    const Float50 fine = dyadic_sum_two_sided(Float50(y));
    CHECK(rel_diff(dyadic_sum_two_sided(y), static_cast<double>(fine)) < 1e-13);
  }

  // Harmonics measured in 50-digit arithmetic: the mean is 1/ln 2 to
  // ~1e-45, the first harmonic matches the closed form, and the second
  // harmonic is suppressed by ten orders of magnitude.
  const int n = 256;
  std::vector<Float50> values(n);
  Float50 mean = 0;
  for (int i = 0; i < n; ++i) {
    values[i] = dyadic_sum_two_sided(pow(Float50(2), Float50(i) / n));
    mean += values[i];
  }
  mean /= n;
  CHECK(rel_diff(static_cast<double>(mean), kA) < 1e-15);

  auto harmonic = [&](int k) {
    Float50 re = 0, im = 0;
    for (int i = 0; i < n; ++i) {
      const Float50 phase = 2 * pi_mp * k * Float50(i) / n;
      re += (values[i] - mean) * cos(phase);
      im -= (values[i] - mean) * sin(phase);
    }
    return Float50(2) * sqrt(re * re + im * im) / n;
  };
  const Float50 h1 = harmonic(1);
  const Float50 h2 = harmonic(2);

  const Float50 z1 = 2 * pi_mp * pi_mp / ln2_mp;
  const Float50 closed_h1 = 2 * (z1 / sinh(z1)) / ln2_mp;
  CHECK(rel_diff(static_cast<double>(h1), static_cast<double>(closed_h1)) < 1e-6);
  CHECK(h2 / h1 < Float50(1e-10));

  // Poisson reconstruction in 50-digit arithmetic: harmonics 0 and +-1
  // reproduce the two-sided sum up to the k = +-2 term (~6e-23).
  for (double theta_d : {0.0, 0.31, 0.5, 0.86}) {
    const Float50 theta(theta_d);
    const Float50 y = pow(Float50(2), theta);
    const Float50 reconstructed = 1 / ln2_mp + closed_h1 * cos(2 * pi_mp * theta);
    const Float50 gap = fabs(reconstructed - dyadic_sum_two_sided(y));
    CHECK(gap < Float50(1e-20));
  }
}
