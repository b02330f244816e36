// Command-line frontend: variate sampling, correlation matrix generation,
// statistical validation reports, and a benchmark harness.
//
// Exit codes: 0 ok, 1 I/O failure, 2 usage error, 3 matrix check failure,
// 4 statistical validation failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinkpi/sinkpi.hpp"

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Fixed default so runs are reproducible without any flags; randomness never
// comes from the wall clock.
constexpr std::uint64_t kDefaultSeed = 42;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMatrixCheck = 3;
constexpr int kExitValidation = 4;

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Output goes to stdout unless --out was given.
class OutputTarget {
 public:
  bool open(const std::string& path) {
    if (path.empty()) return true;
    file_.open(path);
    if (!file_) {
      std::cerr << "sinkpi: cannot open output file '" << path << "'\n";
      return false;
    }
    return true;
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  bool good() {
    stream().flush();
    return static_cast<bool>(stream());
  }

 private:
  std::ofstream file_;
};

bool is_integer(double v) { return v == std::floor(v); }

struct SampleArgs {
  double k = 1.0;
  std::uint64_t n = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string method = "rejection";
  std::string out;
  bool stats = false;
  bool no_timing = false;
};

int run_sample(const SampleArgs& args) {
  if (!(std::isfinite(args.k) && args.k >= 1.0)) {
    std::cerr << "sinkpi sample: k must be >= 1 (got " << args.k << ")\n";
    return kExitUsage;
  }
  if (args.n < 1) {
    std::cerr << "sinkpi sample: n must be >= 1\n";
    return kExitUsage;
  }
  if (args.method == "inverse" && !is_integer(args.k)) {
    std::cerr << "sinkpi sample: the inverse method requires an integer k\n";
    return kExitUsage;
  }

  OutputTarget target;
  if (!target.open(args.out)) return kExitIo;
  std::ostream& os = target.stream();

  const sinkpi::SinKDistribution dist(args.k);
  sinkpi::Xoshiro256StarStar rng(args.seed);
  sinkpi::SamplerStats stats;

  const auto start = Clock::now();
  for (std::uint64_t i = 0; i < args.n; ++i) {
    const double x = args.method == "rejection"
                         ? sinkpi::sample(dist, rng, &stats)
                         : sinkpi::oracle::sample_inverse_transform(dist, rng);
    os << fmt17(x) << '\n';
  }
  const double elapsed = seconds_since(start);

  if (args.stats) {
    if (args.method != "rejection") {
      stats.proposals = args.n;
      stats.acceptances = args.n;
    }
    ordered_json record;
    record["k"] = args.k;
    record["n"] = args.n;
    record["seed"] = args.seed;
    record["method"] = args.method;
    record["proposals"] = stats.proposals;
    record["acceptances"] = stats.acceptances;
    if (!args.no_timing) record["seconds"] = elapsed;
    os << record.dump() << '\n';
  }
  return target.good() ? kExitOk : kExitIo;
}

struct RandcorrArgs {
  int p = 2;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string out;
  bool check = false;
  unsigned threads = 1;
};

int run_randcorr(const RandcorrArgs& args) {
  if (args.p < 1) {
    std::cerr << "sinkpi randcorr: p must be >= 1\n";
    return kExitUsage;
  }
  if (args.threads < 1) {
    std::cerr << "sinkpi randcorr: threads must be >= 1\n";
    return kExitUsage;
  }

  OutputTarget target;
  if (!target.open(args.out)) return kExitIo;
  std::ostream& os = target.stream();

  // Per-column substreams regardless of the thread count: the matrix is a
  // function of (p, seed) alone, and --threads only changes wall time.
  sinkpi::SamplerStats stats;
  const sinkpi::CorrelationMatrix corr =
      sinkpi::correlation_matrix(sinkpi::build_cholesky(
          sinkpi::sample_angles_parallel(args.p, args.seed, args.threads,
                                         &stats)));

  if (args.check) {
    const auto report = sinkpi::check_correlation(corr);
    if (!report.ok()) {
      std::cerr << "sinkpi randcorr: generated matrix failed validity checks:"
                << (report.symmetric ? "" : " symmetry")
                << (report.unit_diagonal ? "" : " unit-diagonal")
                << (report.off_diagonal_in_range ? "" : " off-diagonal-range")
                << (report.positive_definite ? "" : " positive-definite")
                << '\n';
      return kExitMatrixCheck;
    }
  }

  if (args.format == "csv") {
    sinkpi::io::write_csv(os, corr);
  } else if (args.format == "matrixmarket") {
    sinkpi::io::write_matrix_market(os, corr);
  } else {  // jsonl
    ordered_json record;
    record["p"] = args.p;
    record["seed"] = args.seed;
    std::vector<std::vector<double>> rows(args.p, std::vector<double>(args.p));
    for (int i = 0; i < args.p; ++i) {
      for (int j = 0; j < args.p; ++j) rows[i][j] = corr(i, j);
    }
    record["rows"] = rows;
    os << record.dump() << '\n';
  }
  return target.good() ? kExitOk : kExitIo;
}

struct ValidateArgs {
  double k = 1.0;
  std::uint64_t n = 100'000;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  bool no_timing = false;
};

int run_validate(const ValidateArgs& args) {
  if (!(std::isfinite(args.k) && args.k >= 1.0 && is_integer(args.k))) {
    std::cerr << "sinkpi validate: k must be an integer >= 1 (the reference "
                 "CDF is recursive)\n";
    return kExitUsage;
  }
  if (args.n < 1000) {
    std::cerr << "sinkpi validate: n must be >= 1000\n";
    return kExitUsage;
  }

  OutputTarget target;
  if (!target.open(args.out)) return kExitIo;
  std::ostream& os = target.stream();

  const sinkpi::SinKDistribution dist(args.k);
  sinkpi::Xoshiro256StarStar rng(args.seed);
  sinkpi::SamplerStats stats;

  const auto start = Clock::now();
  std::vector<double> draws(args.n);
  for (auto& x : draws) x = sinkpi::sample(dist, rng, &stats);
  const double elapsed = seconds_since(start);

  double sum = 0.0;
  for (double x : draws) sum += x;
  const double mean = sum / static_cast<double>(args.n);
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  const double stddev = std::sqrt(ss / static_cast<double>(args.n - 1));
  const double mean_se = stddev / std::sqrt(static_cast<double>(args.n));

  const sinkpi::oracle::EmpiricalSample sample(std::move(draws));
  const double ks = sinkpi::oracle::ks_statistic(
      sample, [&](double x) { return sinkpi::oracle::cdf(dist, x); });
  const double ks_threshold = sinkpi::oracle::ks_one_sample_threshold(args.n);

  const double theoretical_rate = std::exp(-sinkpi::log_bound(dist));
  const double rate = stats.acceptance_rate();
  const double rate_sigma =
      std::sqrt(theoretical_rate * (1.0 - theoretical_rate) /
                static_cast<double>(stats.proposals));

  const bool ks_pass = ks < ks_threshold;
  const bool mean_pass = std::abs(mean - sinkpi::pi / 2.0) <= 4.0 * mean_se;
  const bool rate_pass = std::abs(rate - theoretical_rate) <= 3.0 * rate_sigma;
  const bool pass = ks_pass && mean_pass && rate_pass;

  ordered_json record;
  record["k"] = args.k;
  record["n"] = args.n;
  record["seed"] = args.seed;
  record["method"] = "rejection";
  record["ks"] = ks;
  record["ks_threshold"] = ks_threshold;
  record["mean"] = mean;
  record["mean_se"] = mean_se;
  record["proposals"] = stats.proposals;
  record["acceptances"] = stats.acceptances;
  record["acceptance_rate"] = rate;
  record["theoretical_rate"] = theoretical_rate;
  if (!args.no_timing) record["seconds"] = elapsed;
  record["ks_pass"] = ks_pass;
  record["mean_pass"] = mean_pass;
  record["rate_pass"] = rate_pass;
  record["pass"] = pass;
  os << record.dump() << '\n';

  if (!target.good()) return kExitIo;
  return pass ? kExitOk : kExitValidation;
}

struct BenchArgs {
  std::vector<int> dims;
  int reps = 3;
  std::uint64_t seed = kDefaultSeed;
  std::string method = "both";
  std::string format = "csv";
  std::string out;
  bool no_timing = false;
};

struct BenchRow {
  int p = 0;
  std::string method;
  std::size_t angles = 0;
  sinkpi::SamplerStats stats;
  double seconds_median = 0.0;
};

BenchRow bench_one(int p, const std::string& method, std::uint64_t run_seed,
                   int reps) {
  BenchRow row;
  row.p = p;
  row.method = method;
  std::vector<double> times(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    // Same seed every rep: identical workload, so the median isolates
    // machine noise.
    sinkpi::Xoshiro256StarStar rng(run_seed);
    sinkpi::SamplerStats stats;
    const auto start = Clock::now();
    sinkpi::AngleMatrix angles =
        method == "rejection"
            ? sinkpi::sample_angles(p, rng, &stats)
            : sinkpi::sample_angles_inverse_transform(p, rng);
    sinkpi::CorrelationMatrix corr =
        sinkpi::correlation_matrix(sinkpi::build_cholesky(angles));
    times[static_cast<std::size_t>(r)] = seconds_since(start);
    (void)corr;
    if (method != "rejection") {
      stats.proposals = angles.count();
      stats.acceptances = angles.count();
    }
    row.angles = angles.count();
    row.stats = stats;
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  row.seconds_median = times.size() % 2 == 1
                           ? times[mid]
                           : 0.5 * (times[mid - 1] + times[mid]);
  return row;
}

int run_bench(const BenchArgs& args) {
  if (args.dims.empty()) {
    std::cerr << "sinkpi bench: at least one dimension is required (--p)\n";
    return kExitUsage;
  }
  for (int p : args.dims) {
    if (p < 1) {
      std::cerr << "sinkpi bench: dimensions must be >= 1\n";
      return kExitUsage;
    }
  }
  if (args.reps < 1) {
    std::cerr << "sinkpi bench: reps must be >= 1\n";
    return kExitUsage;
  }

  OutputTarget target;
  if (!target.open(args.out)) return kExitIo;
  std::ostream& os = target.stream();

  std::vector<std::string> methods;
  if (args.method == "both") {
    methods = {"rejection", "inverse"};
  } else {
    methods = {args.method};
  }

  if (args.format == "csv") {
    os << "p,method,reps,angles,proposals,acceptances,acceptance_rate";
    if (!args.no_timing) os << ",seconds_median";
    os << '\n';
  }

  std::uint64_t run_index = 0;
  for (int p : args.dims) {
    for (const auto& method : methods) {
      const std::uint64_t run_seed =
          sinkpi::derive_substream_seed(args.seed, run_index++);
      const BenchRow row = bench_one(p, method, run_seed, args.reps);
      if (args.format == "csv") {
        os << row.p << ',' << row.method << ',' << args.reps << ','
           << row.angles << ',' << row.stats.proposals << ','
           << row.stats.acceptances << ','
           << fmt17(row.stats.acceptance_rate());
        if (!args.no_timing) os << ',' << fmt17(row.seconds_median);
        os << '\n';
      } else {
        ordered_json record;
        record["p"] = row.p;
        record["method"] = row.method;
        record["reps"] = args.reps;
        record["seed"] = args.seed;
        record["angles"] = row.angles;
        record["proposals"] = row.stats.proposals;
        record["acceptances"] = row.stats.acceptances;
        record["acceptance_rate"] = row.stats.acceptance_rate();
        if (!args.no_timing) record["seconds"] = row.seconds_median;
        os << record.dump() << '\n';
      }
    }
  }
  return target.good() ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sinkpi: sampler for densities proportional to sin^k(x) on (0, pi) "
      "and random correlation matrix generator"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "Draw variates from sin^k");
  sample->add_option("--k", sample_args.k, "Exponent k (real, >= 1)")
      ->required();
  sample->add_option("--n", sample_args.n, "Number of variates")->required();
  sample->add_option("--seed", sample_args.seed, "RNG seed (default 42)");
  sample->add_option("--method", sample_args.method,
                     "Sampling method (default rejection)")
      ->check(CLI::IsMember({"rejection", "inverse"}));
  sample->add_option("--out", sample_args.out, "Output path (default stdout)");
  sample->add_flag("--stats", sample_args.stats,
                   "Append a jsonl stats record after the variates");
  sample->add_flag("--no-timing", sample_args.no_timing,
                   "Omit the seconds field from the stats record");

  RandcorrArgs randcorr_args;
  CLI::App* randcorr =
      app.add_subcommand("randcorr", "Generate a random correlation matrix");
  randcorr->add_option("--p", randcorr_args.p, "Matrix dimension (>= 1)")
      ->required();
  randcorr->add_option("--seed", randcorr_args.seed, "RNG seed (default 42)");
  randcorr->add_option("--format", randcorr_args.format,
                       "Output format (default csv)")
      ->check(CLI::IsMember({"csv", "matrixmarket", "jsonl"}));
  randcorr->add_option("--out", randcorr_args.out,
                       "Output path (default stdout)");
  randcorr->add_flag("--check", randcorr_args.check,
                     "Run validity checks before writing");
  randcorr->add_option(
      "--threads", randcorr_args.threads,
      "Worker threads for angle generation; the matrix does not depend on it");

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "validate", "Statistical validation against the recursive-CDF oracle");
  validate->add_option("--k", validate_args.k, "Exponent k (integer, >= 1)")
      ->required();
  validate->add_option("--n", validate_args.n,
                       "Number of draws (>= 1000, default 100000)");
  validate->add_option("--seed", validate_args.seed, "RNG seed (default 42)");
  validate->add_option("--out", validate_args.out,
                       "Output path (default stdout)");
  validate->add_flag("--no-timing", validate_args.no_timing,
                     "Omit the seconds field from the report");

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "Time correlation matrix generation");
  bench->add_option("--p", bench_args.dims, "Dimensions (comma separated)")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", bench_args.reps,
                    "Repetitions per configuration (median reported)");
  bench->add_option("--seed", bench_args.seed, "RNG seed (default 42)");
  bench->add_option("--method", bench_args.method,
                    "rejection, inverse, or both (default both)")
      ->check(CLI::IsMember({"rejection", "inverse", "both"}));
  bench->add_option("--format", bench_args.format, "Report format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  bench->add_option("--out", bench_args.out, "Output path (default stdout)");
  bench->add_flag("--no-timing", bench_args.no_timing,
                  "Omit timing columns (stable output for regression diffs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sample->parsed()) return run_sample(sample_args);
    if (randcorr->parsed()) return run_randcorr(randcorr_args);
    if (validate->parsed()) return run_validate(validate_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "sinkpi: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
