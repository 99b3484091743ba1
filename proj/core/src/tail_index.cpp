#include "unseen/tail_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace unseen {

const char* to_string(MleBoundary b) {
  switch (b) {
    case MleBoundary::interior: return "interior";
    case MleBoundary::all_singletons: return "all_singletons";
    case MleBoundary::single_block: return "single_block";
  }
  return "?";
}

namespace {

void check_open_unit(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("tail index alpha must lie in (0,1)");
  }
}

}  // namespace

double score(double alpha, const CumulativeCounts& c) {
  check_open_unit(alpha);
  // C_{n,k+1} vanishes beyond the largest block size, so the sum runs over
  // k = 1 .. max_size-1 only.
  const auto& raw = c.raw();
  double acc = 0.0;
  for (std::size_t k = raw.size() - 1; k >= 1; --k) {
    acc += alpha / (static_cast<double>(k) - alpha) * static_cast<double>(raw[k]);
  }
  return acc - (static_cast<double>(c.at(1)) - 1.0);
}

double score_derivative(double alpha, const CumulativeCounts& c) {
  check_open_unit(alpha);
  const auto& raw = c.raw();
  double acc = 0.0;
  for (std::size_t k = raw.size() - 1; k >= 1; --k) {
    const double d = static_cast<double>(k) - alpha;
    acc += static_cast<double>(k) / (d * d) * static_cast<double>(raw[k]);
  }
  return acc;
}

TailIndexEstimate solve_mle(const Fingerprint& fp, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_mle: tol must be positive");
  const std::uint64_t k_n = fp.distinct();
  if (k_n == fp.n()) {
    return {1.0, MleBoundary::all_singletons, 0, 0.0};
  }
  if (k_n == 1) {
    return {0.0, MleBoundary::single_block, 0, 0.0};
  }

  const CumulativeCounts c = cumulative_from_fingerprint(fp);
  // score(0+) = -(K_n - 1) < 0 and score(1-) = +inf, so the root is bracketed.
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  double x = std::clamp(std::log(static_cast<double>(k_n)) /
                            std::log(static_cast<double>(fp.n())),
                        0.05, 0.95);
  double fx = score(x, c);
  int iters = 0;
  const int max_iters = 200;
  while (std::abs(fx) > tol && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() &&
         iters < max_iters) {
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double dfx = score_derivative(x, c);
    double next = x - fx / dfx;
    if (!(next > lo) || !(next < hi)) {
      next = 0.5 * (lo + hi);
    }
    x = next;
    fx = score(x, c);
    ++iters;
  }
  return {x, MleBoundary::interior, iters, std::abs(fx)};
}

double log_eppf(double alpha, const Fingerprint& fp) {
  check_open_unit(alpha);
  const double k = static_cast<double>(fp.distinct());
  const double lg1ma = std::lgamma(1.0 - alpha);
  double acc = (k - 1.0) * std::log(alpha) + std::lgamma(k) -
               std::lgamma(static_cast<double>(fp.n()));
  const auto& m = fp.raw();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    const double j = static_cast<double>(i + 1);
    acc += static_cast<double>(m[i]) * (std::lgamma(j - alpha) - lg1ma);
  }
  return acc;
}

double mle_grid_oracle(const Fingerprint& fp, int grid_size) {
  if (grid_size < 1000) {
    throw std::invalid_argument("mle_grid_oracle: grid_size must be at least 1000");
  }
  const std::uint64_t k_n = fp.distinct();
  if (k_n == 1 || k_n == fp.n()) {
    throw std::domain_error("mle_grid_oracle: degenerate partition has no interior maximum");
  }
  double lo = 0.0;
  double hi = 1.0;
  double best = 0.5;
  for (int round = 0; round < 3; ++round) {
    const double h = (hi - lo) / (grid_size + 1);
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_size; ++i) {
      const double a = lo + h * i;
      if (a <= 0.0 || a >= 1.0) continue;
      const double v = log_eppf(a, fp);
      if (v > best_val) {
        best_val = v;
        best = a;
      }
    }
    lo = std::max(0.0, best - h);
    hi = std::min(1.0, best + h);
  }
  return best;
}

}  // namespace unseen
