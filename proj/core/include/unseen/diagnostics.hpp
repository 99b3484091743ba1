#pragma once

#include <cstddef>
#include <cstdint>

#include "unseen/distributions.hpp"
#include "unseen/partition.hpp"

namespace unseen {

// Least-squares fit of log C_{n,j} = log Gamma(j-A)/Gamma(j) + B, the
// signature cumulative counts follow under a power-law tail of index A.
struct SignatureFit {
  double A = 0.0;
  double B = 0.0;
  double residual_rms = 0.0;
  std::uint64_t j_min = 1;
  std::uint64_t j_max = 0;
  std::size_t points = 0;
};

// Fits over j = 1..j_max restricted to C_{n,j} > 0; B is profiled out in
// closed form at each A and A is located by a scan plus golden-section
// refinement. Throws std::invalid_argument with fewer than 3 usable points.
SignatureFit fit_power_signature(const CumulativeCounts& c, std::uint64_t j_max);

// Default fitting range: the largest j with C_{n,j} >= 5; tiny tail cells
// carry enormous log-variance and only add noise.
std::uint64_t default_signature_jmax(const CumulativeCounts& c);

// E[C_{n,k}] = sum_j P(Binomial(n, p_j) >= k), the atomwise form of the
// Mellin-type integral identity. Atoms with n p_j above a small cutoff are
// summed directly; the rest contribute through an exact alternating series
// in the mass-tail power sums, so truncation error stays below 1e-12.
double expected_cumulative(const DiscreteMasses& dist, std::uint64_t n, std::uint64_t k);

// Membership data for the regularly-varying class: the limit
// L = lim x^alpha F(x) and the largest normalized deviation
// |x^alpha F(x) - L| / sqrt(x^alpha log(e/x)) over a log-spaced grid.
// The grid supremum is a lower bound for the true sup over (0,1).
struct ClassMembership {
  double alpha = 0.0;
  double L = 0.0;
  double margin = 0.0;
};

ClassMembership class_margin(const DiscreteMasses& dist, double alpha,
                             std::size_t grid_points = 10000);

}  // namespace unseen
