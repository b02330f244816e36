#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sinkpi/oracle.hpp"
#include "sinkpi/rng.hpp"
#include "sinkpi/sampler.hpp"

namespace sinkpi {

namespace detail {

inline void require_dimension(int p) {
  if (p < 1) throw std::domain_error("sinkpi: dimension p must be >= 1");
}

}  // namespace detail

// Strictly lower-triangular p x p collection of angles theta_ij in (0, pi),
// stored column-major: column j holds rows j+1..p-1. p = 1 holds no angles.
class AngleMatrix {
 public:
  explicit AngleMatrix(int p) : p_(p) {
    detail::require_dimension(p);
    theta_.resize(count());
  }

  int dim() const noexcept { return p_; }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(p_) * (p_ - 1) / 2;
  }

  double operator()(int i, int j) const { return theta_[index(i, j)]; }
  double& operator()(int i, int j) { return theta_[index(i, j)]; }

  const std::vector<double>& flat() const noexcept { return theta_; }

 private:
  std::size_t index(int i, int j) const {
    if (!(0 <= j && j < i && i < p_)) {
      throw std::out_of_range("AngleMatrix: need 0 <= j < i < p");
    }
    const std::size_t col = static_cast<std::size_t>(j);
    const std::size_t offset = col * (p_ - 1) - col * (col - 1) / 2;
    return offset + static_cast<std::size_t>(i - j - 1);
  }

  int p_;
  std::vector<double> theta_;
};

// Lower-triangular factor with unit-norm rows; B[0][0] = 1 and all diagonal
// entries positive, so R = B B^T has a unit diagonal up to rounding.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(int p) : p_(p), b_(static_cast<std::size_t>(p) * p) {
    detail::require_dimension(p);
  }

  int dim() const noexcept { return p_; }
  double operator()(int i, int j) const { return b_[idx(i, j)]; }
  double& operator()(int i, int j) { return b_[idx(i, j)]; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * p_ + j;
  }

  int p_;
  std::vector<double> b_;
};

// Symmetric positive-definite matrix with an exact unit diagonal.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(int p) : p_(p), r_(static_cast<std::size_t>(p) * p) {
    detail::require_dimension(p);
  }

  int dim() const noexcept { return p_; }
  double operator()(int i, int j) const { return r_[idx(i, j)]; }
  double& operator()(int i, int j) { return r_[idx(i, j)]; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * p_ + j;
  }

  int p_;
  std::vector<double> r_;
};

// Draw the p(p-1)/2 angles: every angle in (0-based) column j comes from the
// sin^k density with k = p - 1 - j, so the exponents run p-1 down to 1 and
// cover {1, ..., p-1}. Fill order is column-major against the single rng
// stream, making the result a deterministic function of the seed.
template <RandomSource R>
AngleMatrix sample_angles(int p, R& rng, SamplerStats* stats = nullptr) {
  AngleMatrix angles(p);
  for (int j = 0; j < p - 1; ++j) {
    const SinKDistribution dist(static_cast<double>(p - 1 - j));
    for (int i = j + 1; i < p; ++i) {
      angles(i, j) = sample(dist, rng, stats);
    }
  }
  return angles;
}

// Baseline variant: same angle layout and exponent rule, but each draw goes
// through the O(k) inverse-transform oracle. Used for benchmarking only.
template <RandomSource R>
AngleMatrix sample_angles_inverse_transform(int p, R& rng) {
  AngleMatrix angles(p);
  for (int j = 0; j < p - 1; ++j) {
    const SinKDistribution dist(static_cast<double>(p - 1 - j));
    for (int i = j + 1; i < p; ++i) {
      angles(i, j) = oracle::sample_inverse_transform(dist, rng);
    }
  }
  return angles;
}

// Optional parallel mode: each column has its own engine seeded from
// derive_substream_seed(master_seed, column), so the output depends only on
// (p, master_seed), never on the thread count. Columns are assigned
// round-robin; stats are merged after the join.
inline AngleMatrix sample_angles_parallel(int p, std::uint64_t master_seed,
                                          unsigned threads,
                                          SamplerStats* stats = nullptr) {
  detail::require_dimension(p);
  if (threads < 1) threads = 1;
  AngleMatrix angles(p);
  std::vector<SamplerStats> per_thread(threads);

  auto worker = [&](unsigned t) {
    for (int j = static_cast<int>(t); j < p - 1; j += static_cast<int>(threads)) {
      Xoshiro256StarStar rng(derive_substream_seed(master_seed, j));
      const SinKDistribution dist(static_cast<double>(p - 1 - j));
      for (int i = j + 1; i < p; ++i) {
        angles(i, j) = sample(dist, rng, &per_thread[t]);
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (stats != nullptr) {
    for (const auto& s : per_thread) {
      stats->proposals += s.proposals;
      stats->acceptances += s.acceptances;
    }
  }
  return angles;
}

// Hyperspherical construction of the factor: row 0 is e_1, and for i >= 1
//   B[i][j] = cos(theta_ij) * prod_{l<j} sin(theta_il)   for j < i,
//   B[i][i] = prod_{l<i} sin(theta_il),
// with the partial sine products accumulated left to right (O(i) per row).
// Every row is a unit vector by construction.
inline CholeskyFactor build_cholesky(const AngleMatrix& angles) {
  const int p = angles.dim();
  CholeskyFactor factor(p);
  factor(0, 0) = 1.0;
  for (int i = 1; i < p; ++i) {
    double sin_prod = 1.0;
    for (int j = 0; j < i; ++j) {
      const double theta = angles(i, j);
      factor(i, j) = std::cos(theta) * sin_prod;
      sin_prod *= std::sin(theta);
    }
    factor(i, i) = sin_prod;
  }
  return factor;
}

// R = B B^T. The lower triangle is computed and mirrored; the diagonal is set
// to exactly 1 rather than trusting the row norms, so downstream Cholesky
// checks cannot fail on last-bit rounding.
inline CorrelationMatrix correlation_matrix(const CholeskyFactor& factor) {
  const int p = factor.dim();
  CorrelationMatrix corr(p);
  for (int i = 0; i < p; ++i) {
    corr(i, i) = 1.0;
    for (int j = 0; j < i; ++j) {
      double sum = 0.0;
      for (int l = 0; l <= j; ++l) sum += factor(i, l) * factor(j, l);
      corr(i, j) = sum;
      corr(j, i) = sum;
    }
  }
  return corr;
}

// Full pipeline: angles -> factor -> R. Expected sampling cost is O(p^2)
// proposals with O(1) work per proposal; the product dominates at O(p^3).
template <RandomSource R>
CorrelationMatrix randcorr(int p, R& rng, SamplerStats* stats = nullptr) {
  return correlation_matrix(build_cholesky(sample_angles(p, rng, stats)));
}

// log det R = 2 sum_i log B[i][i], read off the triangular factor.
inline double log_det(const CholeskyFactor& factor) {
  double sum = 0.0;
  for (int i = 0; i < factor.dim(); ++i) sum += std::log(factor(i, i));
  return 2.0 * sum;
}

// Plain lower Cholesky of a correlation matrix, independent of the factor
// that generated it. Returns the row-major lower triangle, or nullopt if a
// pivot falls below the tolerance (matrix not numerically positive definite).
inline std::optional<std::vector<double>> cholesky_lower(
    const CorrelationMatrix& corr, double pivot_tolerance = 1e-12) {
  const int p = corr.dim();
  std::vector<double> lower(static_cast<std::size_t>(p) * p, 0.0);
  auto at = [p](std::vector<double>& a, int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * p + j];
  };
  for (int j = 0; j < p; ++j) {
    double pivot = corr(j, j);
    for (int t = 0; t < j; ++t) pivot -= at(lower, j, t) * at(lower, j, t);
    if (!(pivot > pivot_tolerance)) return std::nullopt;
    const double diag = std::sqrt(pivot);
    at(lower, j, j) = diag;
    for (int i = j + 1; i < p; ++i) {
      double sum = corr(i, j);
      for (int t = 0; t < j; ++t) sum -= at(lower, i, t) * at(lower, j, t);
      at(lower, i, j) = sum / diag;
    }
  }
  return lower;
}

struct CorrelationCheck {
  bool symmetric = false;
  bool unit_diagonal = false;
  bool off_diagonal_in_range = false;
  bool positive_definite = false;

  bool ok() const noexcept {
    return symmetric && unit_diagonal && off_diagonal_in_range &&
           positive_definite;
  }
};

// Validity suite for a claimed correlation matrix: exact symmetry, exact unit
// diagonal, off-diagonals strictly inside (-1, 1), and a successful Cholesky
// factorization at the given pivot tolerance.
inline CorrelationCheck check_correlation(const CorrelationMatrix& corr,
                                          double pivot_tolerance = 1e-12) {
  const int p = corr.dim();
  CorrelationCheck result;
  result.symmetric = true;
  result.unit_diagonal = true;
  result.off_diagonal_in_range = true;
  for (int i = 0; i < p; ++i) {
    if (corr(i, i) != 1.0) result.unit_diagonal = false;
    for (int j = 0; j < i; ++j) {
      if (corr(i, j) != corr(j, i)) result.symmetric = false;
      if (!(corr(i, j) > -1.0 && corr(i, j) < 1.0)) {
        result.off_diagonal_in_range = false;
      }
    }
  }
  result.positive_definite =
      cholesky_lower(corr, pivot_tolerance).has_value();
  return result;
}

}  // namespace sinkpi
