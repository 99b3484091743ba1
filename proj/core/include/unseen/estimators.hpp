#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "unseen/partition.hpp"

namespace unseen {

struct UnseenEstimate {
  double value = 0.0;
  bool thresholded = false;  // true when the indicator zeroed the estimate
  double alpha_used = 0.0;
  double lambda = 0.0;
  std::uint64_t n = 0;
};

// Plug-in estimator K_n ((1+lambda)^alpha - 1), zeroed when
// log(lambda) > threshold_c * sqrt(n^alpha / log n). Natural logs.
UnseenEstimate plugin_unseen(const Fingerprint& fp, double alpha_hat, double lambda,
                             double threshold_c = 1.0);

// Normalized quadratic loss (u - v)^2 / (lambda n)^{2 alpha}.
double loss(double u, double v, double alpha, double lambda, std::uint64_t n);

// Good-Toulmin alternating series -sum_i (-lambda)^i M_i. Divergent in
// practice for lambda > 1; reported as computed, never clamped.
double good_toulmin(const Fingerprint& fp, double lambda);

// Tail-probability damping of the Good-Toulmin series.
struct SmoothingSpec {
  enum class Kind { none, poisson, binomial };

  Kind kind = Kind::none;
  double rate = 0.0;          // poisson
  std::uint64_t trials = 0;   // binomial
  double q = 0.0;             // binomial success probability

  static SmoothingSpec none() { return {}; }
  static SmoothingSpec poisson(double rate);
  static SmoothingSpec binomial(std::uint64_t trials, double q);
};

// Smoothed Efron-Thisted estimator -sum_i (-lambda)^i P(L >= i) M_i with L
// drawn from the smoothing spec. Kind::none reproduces good_toulmin exactly.
double smoothed_gt(const Fingerprint& fp, double lambda, const SmoothingSpec& smoothing);

// The three baseline configurations compared against the plug-in estimator:
// a Poisson smoothing and two Binomial smoothings, parameterized from
// (n, lambda) for lambda > 1. All of them are ordinary SmoothingSpecs and
// can be overridden freely.
std::array<std::pair<std::string, SmoothingSpec>, 3> orl_baselines(std::uint64_t n,
                                                                   double lambda);

}  // namespace unseen
