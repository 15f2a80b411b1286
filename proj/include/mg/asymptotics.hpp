#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mg {

// Smoothing kernel e^x / (1 + e^x)^2, written as 1/(4 cosh^2(x/2)) so both
// tails underflow to 0 instead of overflowing. Symmetric, integrates to 1.
template <class Scalar>
Scalar logistic_kernel(Scalar x) {
  using std::cosh;
  const Scalar c = cosh(x / 2);
  return 1 / (4 * c * c);
}

namespace detail {

// Neumaier compensated accumulation.
template <class Scalar>
void compensated_add(Scalar& sum, Scalar& comp, Scalar term) {
  using std::fabs;
  const Scalar t = sum + term;
  if (fabs(sum) >= fabs(term)) {
    comp += (sum - t) + term;
  } else {
    comp += (term - t) + sum;
  }
  sum = t;
}

}  // namespace detail

// One-sided dyadic kernel sum  sum_{s>=0} y 2^s / (2^s y + 1)^2, truncated
// once the next term falls below tol times the running sum (the terms rise
// until 2^s y ~ 1, then halve). Compensated summation.
template <class Scalar>
Scalar dyadic_sum_one_sided(Scalar y, Scalar tol) {
  if (!(y > 0)) throw std::invalid_argument("dyadic_sum_one_sided: y must be positive");
  if (!(tol > 0)) throw std::invalid_argument("dyadic_sum_one_sided: tol must be positive");
  Scalar sum = 0, comp = 0;
  Scalar u = y;  // 2^s y, exact doubling
  for (int s = 0; s < 4096; ++s) {
    const Scalar term = u / ((u + 1) * (u + 1));
    detail::compensated_add(sum, comp, term);
    const Scalar next_u = 2 * u;
    const Scalar next_term = next_u / ((next_u + 1) * (next_u + 1));
    if (next_u > 1 && next_term < tol * (sum + comp)) break;
    if (next_term == 0) break;
    u = next_u;
  }
  return sum + comp;
}

// Two-sided limit  sum_{s=-inf}^{+inf} y 2^s / (2^s y + 1)^2. Both tails
// halve geometrically; terms are cut once below ~eps/1000 of the result
// scale (for double that is < 1e-18 relative) and accumulated
// smallest-first with compensation.
template <class Scalar>
Scalar dyadic_sum_two_sided(Scalar y) {
  if (!(y > 0)) throw std::invalid_argument("dyadic_sum_two_sided: y must be positive");
  const Scalar cutoff = std::numeric_limits<Scalar>::epsilon() / 1000;

  std::vector<Scalar> terms;
  Scalar u = y;
  for (int s = 0; s < 100000; ++s) {  // s = 0, 1, 2, ...
    const Scalar term = u / ((u + 1) * (u + 1));
    if (term < cutoff) break;
    terms.push_back(term);
    u = 2 * u;
  }
  u = y / 2;
  for (int s = 0; s < 100000; ++s) {  // s = -1, -2, ...
    const Scalar term = u / ((u + 1) * (u + 1));
    if (term < cutoff) break;
    terms.push_back(term);
    u = u / 2;
  }

  std::sort(terms.begin(), terms.end());
  Scalar sum = 0, comp = 0;
  for (const Scalar& term : terms) detail::compensated_add(sum, comp, term);
  return sum + comp;
}

// One period of the log-periodic limit profile, sampled at log2(y) = i/n.
struct OscillationProfile {
  std::vector<std::pair<double, double>> samples;  // (log2_y, value)
  double mean = 0.0;
  double amplitude_dft = 0.0;     // first-harmonic magnitude (primary)
  double amplitude_minmax = 0.0;  // (max - min)/2, reported alongside
};

OscillationProfile sample_oscillation_profile(std::size_t n_samples);

// Fourier transform of the kernel at frequency kappa,
// integral of g(x) exp(2 pi i kappa x) dx; adaptive panel quadrature over
// [-L, L] with the tail beyond L under 1e-20.
std::complex<double> g_tilde_numeric(double kappa);

// Same transform in closed form: 2 pi^2 kappa / sinh(2 pi^2 kappa).
double g_tilde_closed(double kappa);

struct AlphaReport {
  double closed_form = 0.0;   // 8 pi^2 / ln(2)^2 * exp(-2 pi^2 / ln 2)
  double measured_dft = 0.0;  // first harmonic of the sampled profile
};

// Leading oscillation amplitude of the limit profile, both as the residue
// closed form and as independently measured from the sampled profile.
AlphaReport compute_alpha();

// `log2_y,h_star` rows for plotting.
std::string profile_to_csv(const OscillationProfile& profile);
// {mean, amplitude_dft, amplitude_minmax, alpha_closed_form}
std::string oscillation_report_json(const OscillationProfile& profile);

}  // namespace mg
