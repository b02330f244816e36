// Minimal tour of the library: draw sin^k variates, generate a random
// correlation matrix, validate it, and print both.

#include <cstdio>
#include <iostream>

#include "sinkpi/sinkpi.hpp"

int main() {
  sinkpi::Xoshiro256StarStar rng(2024);

  // Variates with density proportional to sin^k(x) on (0, pi).
  const sinkpi::SinKDistribution dist(8.0);
  sinkpi::SamplerStats stats;
  std::printf("five draws from sin^8:");
  for (int i = 0; i < 5; ++i) {
    std::printf(" %.4f", sinkpi::sample(dist, rng, &stats));
  }
  std::printf("\nacceptance rate %.3f (theory %.3f)\n\n",
              stats.acceptance_rate(),
              std::exp(-sinkpi::log_bound(dist)));

  // A random correlation matrix, uniform over the set of valid ones.
  const int p = 5;
  const sinkpi::CorrelationMatrix corr = sinkpi::randcorr(p, rng);
  std::printf("random %dx%d correlation matrix:\n", p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) std::printf("% .4f ", corr(i, j));
    std::printf("\n");
  }

  const sinkpi::CorrelationCheck report = sinkpi::check_correlation(corr);
  std::printf("valid correlation matrix: %s\n",
              report.ok() ? "yes" : "no");

  sinkpi::io::write_csv(std::cout, corr);
  return report.ok() ? 0 : 1;
}
