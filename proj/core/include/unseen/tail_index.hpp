#pragma once

#include "unseen/partition.hpp"

namespace unseen {

enum class MleBoundary { interior, all_singletons, single_block };

struct TailIndexEstimate {
  double alpha_hat = 0.0;
  MleBoundary boundary = MleBoundary::interior;
  int iterations = 0;
  double residual = 0.0;  // |score(alpha_hat)| at termination
};

const char* to_string(MleBoundary b);

// Score function of the stable Poisson-Kingman partition likelihood:
//   sum_{k=1}^{n-1} alpha/(k-alpha) * C_{n,k+1} - (C_{n,1} - 1),
// summed only over the nonzero C entries. Strictly increasing on (0,1)
// whenever C_{n,2} > 0. Throws std::domain_error for alpha outside (0,1).
double score(double alpha, const CumulativeCounts& c);

// d/d(alpha) of the score: sum_k k/(k-alpha)^2 * C_{n,k+1}; strictly
// positive when C_{n,2} > 0.
double score_derivative(double alpha, const CumulativeCounts& c);

// Maximum-likelihood tail index. All-singleton partitions return 1 and a
// single block returns 0, by convention; otherwise the unique root of the
// score in (0,1), located by Newton steps safeguarded by a bisection
// bracket. tol bounds |score| at the root.
TailIndexEstimate solve_mle(const Fingerprint& fp, double tol = 1e-10);

// Log-probability of the fingerprint under the CRP(alpha, 0) partition law,
// computed through log-gamma so blocks of any size are safe:
//   log p = (K-1) log alpha + lgamma(K) - lgamma(n)
//           + sum_j M_j [lgamma(j - alpha) - lgamma(1 - alpha)].
double log_eppf(double alpha, const Fingerprint& fp);

// Brute-force likelihood maximizer over a uniform grid on (0,1), refined
// twice around the best cell. Test oracle for solve_mle; requires a
// non-degenerate partition and grid_size >= 1000.
double mle_grid_oracle(const Fingerprint& fp, int grid_size);

}  // namespace unseen
