#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sinkpi/distribution.hpp"
#include "sinkpi/rng.hpp"

namespace sinkpi {

// Proposal/acceptance counters. The empirical rate acceptances/proposals is
// the observable counterpart of 1/M_k.
struct SamplerStats {
  std::uint64_t proposals = 0;
  std::uint64_t acceptances = 0;

  double acceptance_rate() const noexcept {
    return proposals == 0
               ? 0.0
               : static_cast<double>(acceptances) /
                     static_cast<double>(proposals);
  }
};

namespace detail {

// Standard normal via Box-Muller, cosine branch. Two uniforms per variate;
// fixed consumption keeps streams reproducible.
template <RandomSource R>
double standard_normal(R& rng) {
  const double u1 = rng.next_open01();
  const double u2 = rng.next_open01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

/* Gamma(shape, 1) for shape >= 1 by the method of
   Marsaglia, G. & Tsang, W. W. (2000). A simple method for generating gamma
   variables. ACM Transactions on Mathematical Software, 26, 363-372.
   The squeeze u < 1 - 0.0331 x^4 accepts most draws without a log;
   expected cost is O(1) uniform/normal pairs independent of shape. */
template <RandomSource R>
double gamma_variate(double shape, R& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_open01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace detail

// V ~ Beta(k+1, k+1) as G1/(G1+G2) with G1, G2 independent Gamma(k+1, 1).
// Expected cost is O(1) regardless of k.
template <RandomSource R>
double sample_beta_symmetric(double shape_minus_one, R& rng) {
  if (!(std::isfinite(shape_minus_one) && shape_minus_one >= 1.0)) {
    throw std::domain_error("sample_beta_symmetric: k must be >= 1");
  }
  const double g1 = detail::gamma_variate(shape_minus_one + 1.0, rng);
  const double g2 = detail::gamma_variate(shape_minus_one + 1.0, rng);
  return g1 / (g1 + g2);
}

// Acceptance predicate of the rejection step, split out for testability:
//   (1/k) log u <= log(pi^2 sin x / (4 x (pi - x))).
// The inner ratio has no k-th powers, so it neither under- nor overflows for
// any k; the k-th roots live entirely on the log side.
inline bool rejection_accept(double k, double x, double u) noexcept {
  const double log_ratio =
      std::log(pi * pi * std::sin(x) / (4.0 * x * (pi - x)));
  return std::log(u) / k <= log_ratio;
}

// One draw with density c_k sin^k(x): propose X = pi * Beta(k+1, k+1), accept
// with the log-space test above. Expected number of proposals is M_k, which
// never exceeds pi/(2 sqrt 2) ~ 1.11. A proposal that rounds onto the support
// boundary is discarded and counted as rejected.
template <RandomSource R>
double sample(const SinKDistribution& dist, R& rng,
              SamplerStats* stats = nullptr) {
  const double k = dist.k();
  for (;;) {
    const double x = pi * sample_beta_symmetric(k, rng);
    if (stats != nullptr) ++stats->proposals;
    if (!(x > 0.0 && x < pi)) continue;
    const double u = rng.next_open01();
    if (rejection_accept(k, x, u)) {
      if (stats != nullptr) ++stats->acceptances;
      return x;
    }
  }
}

}  // namespace sinkpi
