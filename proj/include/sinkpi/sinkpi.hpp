#pragma once

// Umbrella header for the sinkpi library: exact mathematics and a rejection
// sampler for densities proportional to sin^k(x) on (0, pi), inverse-CDF
// baselines, and random correlation matrix generation via the hyperspherical
// Cholesky parametrization.

#include "sinkpi/distribution.hpp"
#include "sinkpi/matrix_io.hpp"
#include "sinkpi/oracle.hpp"
#include "sinkpi/randcorr.hpp"
#include "sinkpi/rng.hpp"
#include "sinkpi/sampler.hpp"
