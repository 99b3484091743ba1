#include "unseen/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace unseen {

namespace {

struct SignatureData {
  std::vector<double> j;      // usable indices
  std::vector<double> log_c;  // log C_{n,j}
};

// Residual sum of squares at tail-index candidate a, with the intercept B
// profiled out (it is the mean residual).
double signature_rss(const SignatureData& d, double a, double* b_out = nullptr) {
  const std::size_t m = d.j.size();
  std::vector<double> g(m);
  double mean_resid = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = std::lgamma(d.j[i] - a) - std::lgamma(d.j[i]);
    mean_resid += d.log_c[i] - g[i];
  }
  mean_resid /= static_cast<double>(m);
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = d.log_c[i] - g[i] - mean_resid;
    rss += r * r;
  }
  if (b_out) *b_out = mean_resid;
  return rss;
}

}  // namespace

std::uint64_t default_signature_jmax(const CumulativeCounts& c) {
  std::uint64_t j_max = 0;
  for (std::uint64_t j = 1; j <= c.max_size(); ++j) {
    if (c.at(j) >= 5) j_max = j;
  }
  return j_max;
}

SignatureFit fit_power_signature(const CumulativeCounts& c, std::uint64_t j_max) {
  SignatureData data;
  for (std::uint64_t j = 1; j <= j_max && j <= c.max_size(); ++j) {
    const std::uint64_t cj = c.at(j);
    if (cj == 0) continue;
    data.j.push_back(static_cast<double>(j));
    data.log_c.push_back(std::log(static_cast<double>(cj)));
  }
  if (data.j.size() < 3) {
    throw std::invalid_argument("fit_power_signature: need at least 3 nonzero C_{n,j} values");
  }

  // Coarse scan over (0,1), then golden-section refinement in the best cell.
  const double eps = 1e-9;
  const int scan = 200;
  double best_a = 0.5;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    const double a = eps + (1.0 - 2.0 * eps) * i / scan;
    const double rss = signature_rss(data, a);
    if (rss < best_rss) {
      best_rss = rss;
      best_a = a;
    }
  }
  const double cell = (1.0 - 2.0 * eps) / scan;
  double lo = std::max(eps, best_a - cell);
  double hi = std::min(1.0 - eps, best_a + cell);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = signature_rss(data, x1);
  double f2 = signature_rss(data, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = signature_rss(data, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = signature_rss(data, x2);
    }
  }

  SignatureFit fit;
  fit.A = 0.5 * (lo + hi);
  const double rss = signature_rss(data, fit.A, &fit.B);
  fit.residual_rms = std::sqrt(rss / static_cast<double>(data.j.size()));
  fit.j_min = static_cast<std::uint64_t>(data.j.front());
  fit.j_max = static_cast<std::uint64_t>(data.j.back());
  fit.points = data.j.size();
  return fit;
}

// ---------------------------------------------------------------------------
// Exact expectation of cumulative counts

namespace {

// P(Binomial(n, p) >= k), stable across the whole (n p, k) range. Large
// survival probabilities come from the complement, small ones from an
// upper-tail sum in log space, so no catastrophic cancellation occurs.
double binomial_survival(std::uint64_t n, double p, std::uint64_t k) {
  if (k == 0) return 1.0;
  if (k > n || p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double nn = static_cast<double>(n);
  const double np = nn * p;
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  auto log_pmf = [&](double t) {
    return std::lgamma(nn + 1.0) - std::lgamma(t + 1.0) - std::lgamma(nn - t + 1.0) +
           t * log_p + (nn - t) * log_1mp;
  };
  const double sd = std::sqrt(np * (1.0 - p));
  if (static_cast<double>(k) > np + 6.0 * sd + 4.0) {
    // Far upper tail: sum pmf upward until it stops contributing.
    double sum = 0.0;
    for (double t = static_cast<double>(k); t <= nn; t += 1.0) {
      const double term = std::exp(log_pmf(t));
      sum += term;
      if (term < sum * 1e-18 && t > np) break;
    }
    return sum;
  }
  double below = 0.0;
  for (double t = 0.0; t < static_cast<double>(k); t += 1.0) {
    below += std::exp(log_pmf(t));
  }
  return std::max(0.0, 1.0 - below);
}

}  // namespace

double expected_cumulative(const DiscreteMasses& dist, std::uint64_t n, std::uint64_t k) {
  if (k < 1 || k > n) {
    throw std::domain_error("expected_cumulative: need 1 <= k <= n");
  }
  // Direct part: all atoms with n p_j above the cutoff (plus a floor), found
  // through the survival function rather than by scanning.
  const double cutoff = 0.05;
  std::uint64_t m_direct = dist.survival(cutoff / static_cast<double>(n));
  m_direct = std::max<std::uint64_t>(m_direct, 64);
  if (const auto support = dist.support_size()) {
    m_direct = std::min(m_direct, *support);
  }

  double acc = 0.0;
  for (std::uint64_t j = 1; j <= m_direct; ++j) {
    acc += binomial_survival(n, dist.mass(j), k);
  }

  if (const auto support = dist.support_size(); support && m_direct >= *support) {
    return acc;
  }

  // Tail part. With n p_j < cutoff for all j > m, expand
  //   P(Bin(n,p) >= k) = k C(n,k) sum_r C(n-k,r) (-1)^r p^{k+r} / (k+r)
  // and swap the sums: each r-term needs only sum_{j>m} p_j^{k+r}, which the
  // distribution reports exactly. The series is alternating with ratio
  // below n*cutoff, so a few terms reach full precision.
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  // k C(n,k) C(n-k,r) / (k+r) tracked in log space; the binomial
  // coefficient alone can overflow double range for large n.
  double log_scale = std::log(kk) + std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                     std::lgamma(nn - kk + 1.0) - std::log(kk);
  double tail = 0.0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    const double power_sum = dist.tail_power_sum(kk + static_cast<double>(r), m_direct);
    const double term = (power_sum > 0.0) ? std::exp(log_scale + std::log(power_sum)) : 0.0;
    tail += (r % 2 == 0) ? term : -term;
    if (term < 1e-16 * (std::abs(acc) + std::abs(tail) + 1e-300)) break;
    const double rr = static_cast<double>(r);
    if (nn - kk - rr <= 0.0) break;  // exhausted the (n-k choose r) factors
    log_scale += std::log(nn - kk - rr) - std::log(rr + 1.0) + std::log(kk + rr) -
                 std::log(kk + rr + 1.0);
  }
  return acc + tail;
}

// ---------------------------------------------------------------------------
// Class membership margin

ClassMembership class_margin(const DiscreteMasses& dist, double alpha,
                             std::size_t grid_points) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("class_margin: alpha must lie in (0,1)");
  }
  if (grid_points < 2) throw std::invalid_argument("class_margin: grid too small");

  ClassMembership result;
  result.alpha = alpha;
  result.L = dist.power_law_limit(alpha);

  double x_min;
  if (const auto support = dist.support_size()) {
    x_min = 0.5 * dist.mass(*support);
  } else {
    x_min = dist.mass(10'000'000ULL);
  }
  const double x_max = 1.0 - 1e-12;
  const double log_lo = std::log(x_min);
  const double log_hi = std::log(x_max);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                           static_cast<double>(grid_points - 1));
    const double xa = std::pow(x, alpha);
    const double dev = std::abs(xa * static_cast<double>(dist.survival(x)) - result.L);
    const double norm = std::sqrt(xa * std::log(std::exp(1.0) / x));
    sup = std::max(sup, dev / norm);
  }
  result.margin = sup;
  return result;
}

}  // namespace unseen
