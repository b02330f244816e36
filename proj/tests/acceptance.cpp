// Acceptance suite: end-to-end checks of the sampler's mathematical
// guarantees, the correlation generator, and the CLI determinism contract.
// Each criterion prints a single PASS/FAIL line; the process exits non-zero
// if any criterion fails. argv[1] must point at the sinkpi CLI binary.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sinkpi/sinkpi.hpp"
#include "test_helpers.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string g_cli;
fs::path g_scratch;

struct CriterionResult {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// C1: the expected-proposals bound matches its closed forms for k = 1..4.

CriterionResult criterion_bound_values() {
  CriterionResult r;
  const double expected[] = {sinkpi::pi / 3.0, 16.0 / 15.0,
                             12.0 * sinkpi::pi / 35.0, 1024.0 / 945.0};
  for (int k = 1; k <= 4; ++k) {
    const double m = std::exp(sinkpi::log_bound(sinkpi::SinKDistribution(k)));
    const double rel = std::abs(m - expected[k - 1]) / expected[k - 1];
    if (!(rel < 1e-12)) {
      r.fail("k=" + std::to_string(k) + " rel err " + fmt(rel));
    }
  }
  if (r.pass) r.detail = "k=1..4 closed forms within 1e-12 relative";
  return r;
}

// ---------------------------------------------------------------------------
// C2: M_k stays below pi/(2 sqrt 2) for k = 1..10^4 and approaches it.

CriterionResult criterion_bound_limit() {
  CriterionResult r;
  const double limit = sinkpi::pi / (2.0 * std::sqrt(2.0));
  double last = 0.0;
  for (int k = 1; k <= 10'000; ++k) {
    last = std::exp(sinkpi::log_bound(sinkpi::SinKDistribution(k)));
    if (!(last < limit)) {
      r.fail("M_k >= limit at k=" + std::to_string(k));
      return r;
    }
  }
  if (!(last > limit - 1e-3)) {
    r.fail("M_10000 = " + fmt(last) + " not within 1e-3 of " + fmt(limit));
  }
  if (r.pass) {
    r.detail = "max M_k = " + fmt(last) + " < " + fmt(limit);
  }
  return r;
}

// ---------------------------------------------------------------------------
// C3: the scaled envelope dominates the density everywhere, with equality
// at the mode.

CriterionResult criterion_domination() {
  CriterionResult r;
  for (double k : {1.0, 2.0, 5.0, 50.0, 1000.0}) {
    const sinkpi::SinKDistribution dist(k);
    const double log_m = sinkpi::log_bound(dist);
    double worst = -1.0;
    for (double x : testutil::linspace_interior(0.0, sinkpi::pi, 10'000)) {
      const double gap = sinkpi::log_density(dist, x) -
                         (log_m + sinkpi::log_envelope_density(dist, x));
      worst = std::max(worst, gap);
    }
    if (!(worst <= 1e-10)) {
      r.fail("k=" + fmt(k) + " envelope violated by exp(" + fmt(worst) + ")");
    }
    const double mode_gap =
        std::abs(sinkpi::log_density(dist, sinkpi::pi / 2.0) -
                 (log_m + sinkpi::log_envelope_density(dist, sinkpi::pi / 2.0)));
    if (!(mode_gap < 1e-9)) {
      r.fail("k=" + fmt(k) + " mode gap " + fmt(mode_gap));
    }
  }
  if (r.pass) r.detail = "f <= M g on 1e4-point grids, equality at pi/2";
  return r;
}

// ---------------------------------------------------------------------------
// C4: observed acceptance rates sit within 3 binomial sigma of 1/M_k.

CriterionResult criterion_acceptance_rate() {
  CriterionResult r;
  for (double k : {1.0, 5.0, 100.0}) {
    const sinkpi::SinKDistribution dist(k);
    sinkpi::Xoshiro256StarStar rng(1101 + static_cast<std::uint64_t>(k));
    sinkpi::SamplerStats stats;
    for (int i = 0; i < 100'000; ++i) sinkpi::sample(dist, rng, &stats);

    const double q = std::exp(-sinkpi::log_bound(dist));
    const double sigma =
        std::sqrt(q * (1.0 - q) / static_cast<double>(stats.proposals));
    const double gap = std::abs(stats.acceptance_rate() - q);
    if (!(gap <= 3.0 * sigma)) {
      r.fail("k=" + fmt(k) + " rate " + fmt(stats.acceptance_rate()) +
             " vs " + fmt(q) + " (3 sigma = " + fmt(3.0 * sigma) + ")");
    } else {
      if (!r.detail.empty()) r.detail += ", ";
      r.detail += "k=" + fmt(k) + ": " + fmt(stats.acceptance_rate()) +
                  " ~ " + fmt(q);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// C5: KS goodness of fit, one-sample against the recursive CDF and
// two-sample against the inverse-transform baseline.

CriterionResult criterion_distribution() {
  CriterionResult r;
  for (double k : {1.0, 5.0, 100.0}) {
    const sinkpi::SinKDistribution dist(k);
    sinkpi::Xoshiro256StarStar rng(2202 + static_cast<std::uint64_t>(k));
    const std::size_t n = 100'000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sinkpi::sample(dist, rng);
    const double d = sinkpi::oracle::ks_statistic(
        sinkpi::oracle::EmpiricalSample(std::move(xs)),
        [&](double x) { return sinkpi::oracle::cdf(dist, x); });
    const double threshold = 1.63 / std::sqrt(static_cast<double>(n));
    if (!(d < threshold)) {
      r.fail("k=" + fmt(k) + " KS " + fmt(d) + " >= " + fmt(threshold));
    }
  }

  const sinkpi::SinKDistribution dist(7.0);
  const std::size_t n = 10'000;
  sinkpi::Xoshiro256StarStar rng_a(3303);
  sinkpi::Xoshiro256StarStar rng_b(3313);
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (auto& x : a) x = sinkpi::sample(dist, rng_a);
  for (auto& x : b) {
    x = sinkpi::oracle::sample_inverse_transform(dist, rng_b);
  }
  const double d2 =
      sinkpi::oracle::ks_two_sample(sinkpi::oracle::EmpiricalSample(a),
                                    sinkpi::oracle::EmpiricalSample(b));
  const double threshold2 = sinkpi::oracle::ks_two_sample_threshold(n, n);
  if (!(d2 < threshold2)) {
    r.fail("two-sample KS " + fmt(d2) + " >= " + fmt(threshold2));
  }
  if (r.pass) {
    r.detail = "one-sample k={1,5,100} and two-sample k=7 below critical";
  }
  return r;
}

// ---------------------------------------------------------------------------
// C6: the sample mean reproduces the symmetric expectation pi/2.

CriterionResult criterion_mean() {
  CriterionResult r;
  for (double k : {1.0, 100.0}) {
    const sinkpi::SinKDistribution dist(k);
    sinkpi::Xoshiro256StarStar rng(4404 + static_cast<std::uint64_t>(k));
    const std::size_t n = 100'000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sinkpi::sample(dist, rng);
    const double mean = testutil::mean(xs);
    const double se =
        std::sqrt(testutil::sample_variance(xs) / static_cast<double>(n));
    const double gap = std::abs(mean - sinkpi::pi / 2.0);
    if (!(gap <= 4.0 * se)) {
      r.fail("k=" + fmt(k) + " mean " + fmt(mean) + " off by " + fmt(gap) +
             " (4 se = " + fmt(4.0 * se) + ")");
    }
  }
  if (r.pass) r.detail = "means within 4 standard errors of pi/2";
  return r;
}

// ---------------------------------------------------------------------------
// C7: correlation matrices are valid, large cases are fast, and rejection
// beats the inverse-transform baseline by at least 5x at p = 100.

double time_generation(int p, bool inverse, std::uint64_t seed,
                       double* checksum) {
  std::vector<double> times;
  for (int rep = 0; rep < 3; ++rep) {
    sinkpi::Xoshiro256StarStar rng(seed);
    const auto start = Clock::now();
    const sinkpi::AngleMatrix angles =
        inverse ? sinkpi::sample_angles_inverse_transform(p, rng)
                : sinkpi::sample_angles(p, rng);
    const sinkpi::CorrelationMatrix corr =
        sinkpi::correlation_matrix(sinkpi::build_cholesky(angles));
    times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    *checksum += corr(p - 1, 0);
  }
  std::sort(times.begin(), times.end());
  return times[1];
}

CriterionResult criterion_matrices() {
  CriterionResult r;
  sinkpi::Xoshiro256StarStar rng(5505);
  for (int p : {2, 5, 20, 100}) {
    for (int rep = 0; rep < 200; ++rep) {
      const sinkpi::CorrelationMatrix corr = sinkpi::randcorr(p, rng);
      if (!sinkpi::check_correlation(corr).ok()) {
        r.fail("invalid matrix at p=" + std::to_string(p) + " rep " +
               std::to_string(rep));
        return r;
      }
    }
  }

  double checksum = 0.0;
  const double t100 = time_generation(100, false, 6606, &checksum);
  const double t1000 = time_generation(1000, false, 6607, &checksum);
  if (!(t100 < 1.0)) r.fail("p=100 took " + fmt(t100) + "s (budget 1s)");
  if (!(t1000 < 10.0)) r.fail("p=1000 took " + fmt(t1000) + "s (budget 10s)");

  const double t_inverse = time_generation(100, true, 6606, &checksum);
  const double ratio = t_inverse / t100;
  if (!(ratio >= 5.0)) {
    r.fail("inverse/rejection ratio " + fmt(ratio) + " < 5 at p=100");
  }
  if (r.pass) {
    r.detail = "800 matrices valid; p=1000 in " + fmt(t1000) +
               "s; baseline ratio " + fmt(ratio) + "x";
  }
  if (!std::isfinite(checksum)) r.fail("checksum not finite");
  return r;
}

// ---------------------------------------------------------------------------
// C8: for p = 3 the marginal law of (r12 + 1)/2 is Beta(3/2, 3/2), the
// signature of the uniform distribution over the elliptope.

CriterionResult criterion_elliptope_marginal() {
  CriterionResult r;

  // Closed-form Beta(3/2,3/2) CDF, cross-checked against quadrature of the
  // density t^(1/2) (1-t)^(1/2) / B(3/2,3/2) before use (B(3/2,3/2) = pi/8).
  const auto beta_cdf = [](double t) {
    const double phi = std::asin(std::sqrt(t));
    return (2.0 / sinkpi::pi) * (phi - std::sin(4.0 * phi) / 4.0);
  };
  for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double quad = testutil::integrate(
                            [](double s) {
                              return std::sqrt(s * (1.0 - s));
                            },
                            0.0, t, 1e-9) /
                        (sinkpi::pi / 8.0);
    if (std::abs(beta_cdf(t) - quad) > 1e-8) {
      r.fail("reference CDF check failed at t=" + fmt(t));
      return r;
    }
  }

  const std::size_t reps = 20'000;
  sinkpi::Xoshiro256StarStar rng(7707);
  std::vector<double> mapped;
  mapped.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const sinkpi::CorrelationMatrix corr = sinkpi::randcorr(3, rng);
    mapped.push_back(0.5 * (corr(0, 1) + 1.0));
  }
  const double d = sinkpi::oracle::ks_statistic(
      sinkpi::oracle::EmpiricalSample(std::move(mapped)), beta_cdf);
  const double threshold = sinkpi::oracle::ks_one_sample_threshold(reps);
  if (!(d < threshold)) {
    r.fail("KS " + fmt(d) + " >= " + fmt(threshold));
  } else {
    r.detail = "KS " + fmt(d) + " < " + fmt(threshold) + " on 2e4 matrices";
  }
  return r;
}

// ---------------------------------------------------------------------------
// C9: the CLI's output is byte-identical across repeated runs for every
// subcommand when the seed is pinned.

struct RunOutput {
  int exit_code = -1;
  std::string out;
};

RunOutput run_cli(const std::string& args, const std::string& tag) {
  const fs::path out_path = g_scratch / (tag + ".out");
  const std::string cmd =
      g_cli + " " + args + " > " + out_path.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunOutput result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  result.out = ss.str();
  return result;
}

CriterionResult criterion_determinism() {
  CriterionResult r;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"sample", "sample --k 1 --n 1000 --seed 42 --stats --no-timing"},
      {"randcorr", "randcorr --p 20 --seed 7 --format csv"},
      {"validate", "validate --k 2 --n 20000 --seed 11 --no-timing"},
      {"bench",
       "bench --p 4,8 --reps 2 --seed 13 --method both --format csv "
       "--no-timing"},
  };
  for (const auto& [name, args] : commands) {
    const RunOutput first = run_cli(args, name + "-1");
    const RunOutput second = run_cli(args, name + "-2");
    if (first.exit_code != 0 || second.exit_code != 0) {
      r.fail(name + " exited " + std::to_string(first.exit_code) + "/" +
             std::to_string(second.exit_code));
    } else if (first.out != second.out) {
      r.fail(name + " output differs between runs");
    } else if (first.out.empty()) {
      r.fail(name + " produced no output");
    }
  }
  if (r.pass) r.detail = "all four subcommands byte-identical across runs";
  return r;
}

// ---------------------------------------------------------------------------

struct Criterion {
  std::string name;
  double time_budget;  // seconds; 0 = no bound enforced
  CriterionResult (*fn)();
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-sinkpi-binary>\n";
    return 2;
  }
  g_cli = argv[1];
  std::error_code ec;
  g_scratch = fs::temp_directory_path() / "sinkpi-acceptance";
  fs::create_directories(g_scratch, ec);
  if (ec) {
    std::cerr << "cannot create scratch directory: " << ec.message() << '\n';
    return 2;
  }

  const std::vector<Criterion> criteria = {
      {"C1 exact bound values", 1.0, criterion_bound_values},
      {"C2 bound limit", 1.0, criterion_bound_limit},
      {"C3 envelope domination", 5.0, criterion_domination},
      {"C4 acceptance-rate reproduction", 10.0, criterion_acceptance_rate},
      {"C5 distributional correctness", 30.0, criterion_distribution},
      {"C6 mean at pi/2", 0.0, criterion_mean},
      {"C7 correlation matrix validity and speed", 0.0, criterion_matrices},
      {"C8 uniform-elliptope marginal", 60.0, criterion_elliptope_marginal},
      {"C9 CLI determinism", 0.0, criterion_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    CriterionResult result = criterion.fn();
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (criterion.time_budget > 0.0 && elapsed >= criterion.time_budget) {
      result.fail("runtime " + fmt(elapsed) + "s exceeded budget " +
                  fmt(criterion.time_budget) + "s");
    }
    std::printf("%s %s (%.2fs)%s%s\n", result.pass ? "PASS" : "FAIL",
                criterion.name.c_str(), elapsed,
                result.detail.empty() ? "" : " - ", result.detail.c_str());
    if (!result.pass) ++failures;
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
