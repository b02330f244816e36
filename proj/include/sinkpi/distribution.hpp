#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinkpi {

inline constexpr double pi = std::numbers::pi;

// Distribution with density c_k sin^k(x) on (0, pi). The exponent k is real
// valued with k >= 1; every derived quantity below is evaluated through
// std::lgamma so large k cannot overflow.
class SinKDistribution {
 public:
  explicit SinKDistribution(double k) : k_(k) {
    if (!(std::isfinite(k) && k >= 1.0)) {
      throw std::domain_error(
          "SinKDistribution: exponent k must be finite and >= 1");
    }
  }

  double k() const noexcept { return k_; }

 private:
  double k_;
};

namespace detail {

inline void require_support(double x) {
  if (!(x > 0.0 && x < pi)) {
    throw std::domain_error("sinkpi: x must lie in the open interval (0, pi)");
  }
}

// Valid for any k >= 0, which the recursive CDF needs for its base case.
inline double log_normalizer_k(double k) {
  return std::lgamma(0.5 * k + 1.0) - 0.5 * std::log(pi) -
         std::lgamma(0.5 * k + 0.5);
}

}  // namespace detail

// log c_k where c_k = Gamma(k/2 + 1) / (sqrt(pi) Gamma(k/2 + 1/2)).
inline double log_normalizer(const SinKDistribution& dist) {
  return detail::log_normalizer_k(dist.k());
}

// log f(x) = log c_k + k log sin(x). Tends to -inf at either end of the
// support; x outside (0, pi) is a domain error. sin is evaluated on the
// argument folded into (0, pi/2] so the computed density is exactly
// symmetric about pi/2.
inline double log_density(const SinKDistribution& dist, double x) {
  detail::require_support(x);
  const double folded = x > 0.5 * pi ? pi - x : x;
  return log_normalizer(dist) + dist.k() * std::log(std::sin(folded));
}

// log of the scaled symmetric beta proposal density
//   g(x) = x^k (pi - x)^k / (B(k+1, k+1) pi^(2k+1)),
// i.e. pi times a Beta(k+1, k+1) variate. log B goes through lgamma.
inline double log_envelope_density(const SinKDistribution& dist, double x) {
  detail::require_support(x);
  const double k = dist.k();
  const double log_beta_fn =
      2.0 * std::lgamma(k + 1.0) - std::lgamma(2.0 * k + 2.0);
  return k * std::log(x) + k * std::log(pi - x) - log_beta_fn -
         (2.0 * k + 1.0) * std::log(pi);
}

// log M_k with M_k = sqrt(pi) 2^(k-1) Gamma(k/2+1)^2 / Gamma(k+3/2), the
// supremum of f/g, attained at x = pi/2. M_k increases from pi/3 at k = 1
// towards the limit pi/(2 sqrt 2), so exp(log_bound) stays close to 1.
inline double log_bound(const SinKDistribution& dist) {
  const double k = dist.k();
  return 0.5 * std::log(pi) + (k - 1.0) * std::numbers::ln2 +
         2.0 * std::lgamma(0.5 * k + 1.0) - std::lgamma(k + 1.5);
}

}  // namespace sinkpi
