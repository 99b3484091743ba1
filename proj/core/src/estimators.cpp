#include "unseen/estimators.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace unseen {

UnseenEstimate plugin_unseen(const Fingerprint& fp, double alpha_hat, double lambda,
                             double threshold_c) {
  if (!(lambda > 0.0)) throw std::domain_error("plugin_unseen: lambda must be positive");
  if (!(alpha_hat >= 0.0) || !(alpha_hat <= 1.0)) {
    throw std::domain_error("plugin_unseen: alpha_hat must lie in [0,1]");
  }
  if (!(threshold_c > 0.0)) {
    throw std::domain_error("plugin_unseen: threshold constant must be positive");
  }
  const double n = static_cast<double>(fp.n());
  const double gate = threshold_c * std::sqrt(std::pow(n, alpha_hat) / std::log(n));
  UnseenEstimate est;
  est.alpha_used = alpha_hat;
  est.lambda = lambda;
  est.n = fp.n();
  if (std::log(lambda) > gate) {
    est.value = 0.0;
    est.thresholded = true;
    return est;
  }
  est.value = static_cast<double>(fp.distinct()) * (std::pow(1.0 + lambda, alpha_hat) - 1.0);
  est.thresholded = false;
  return est;
}

double loss(double u, double v, double alpha, double lambda, std::uint64_t n) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("loss: alpha must lie in (0,1)");
  if (!(lambda > 0.0)) throw std::domain_error("loss: lambda must be positive");
  if (n == 0) throw std::domain_error("loss: n must be positive");
  const double d = u - v;
  return d * d / std::pow(lambda * static_cast<double>(n), 2.0 * alpha);
}

namespace {

// Compensated (Neumaier) evaluation of -sum_i (-lambda)^i w_i M_i. Terms of
// alternating sign grow like lambda^i and cancel heavily, so naive summation
// is not an option. When a term overflows double range the sum is evaluated
// in log space instead and comes back as +/-inf or a huge finite value,
// never NaN.
double alternating_fingerprint_sum(const Fingerprint& fp, double lambda,
                                   const std::vector<double>& weights) {
  const auto& m = fp.raw();
  const double log_lambda = std::log(lambda);

  double max_log_term = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < m.size(); ++idx) {
    if (m[idx] == 0 || weights[idx] <= 0.0) continue;
    const double i = static_cast<double>(idx + 1);
    const double lt = i * log_lambda + std::log(weights[idx]) +
                      std::log(static_cast<double>(m[idx]));
    max_log_term = std::max(max_log_term, lt);
  }
  if (max_log_term == -std::numeric_limits<double>::infinity()) return 0.0;

  if (max_log_term < 700.0) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
      if (m[idx] == 0 || weights[idx] <= 0.0) continue;
      const double i = static_cast<double>(idx + 1);
      const double magnitude =
          std::exp(i * log_lambda) * weights[idx] * static_cast<double>(m[idx]);
      const double term = (idx % 2 == 0) ? magnitude : -magnitude;
      const double t = sum + term;
      if (std::abs(sum) >= std::abs(term)) {
        comp += (sum - t) + term;
      } else {
        comp += (term - t) + sum;
      }
      sum = t;
    }
    return sum + comp;
  }

  // Log-space route for the divergent regime.
  double pos = -std::numeric_limits<double>::infinity();
  double neg = -std::numeric_limits<double>::infinity();
  auto log_add = [](double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
  };
  for (std::size_t idx = 0; idx < m.size(); ++idx) {
    if (m[idx] == 0 || weights[idx] <= 0.0) continue;
    const double i = static_cast<double>(idx + 1);
    const double lt = i * log_lambda + std::log(weights[idx]) +
                      std::log(static_cast<double>(m[idx]));
    if (idx % 2 == 0) {
      pos = log_add(pos, lt);
    } else {
      neg = log_add(neg, lt);
    }
  }
  if (pos >= neg) {
    return std::exp(pos + std::log1p(-std::exp(neg - pos)));
  }
  return -std::exp(neg + std::log1p(-std::exp(pos - neg)));
}

// P(L >= i) for i = 1..len as a dense vector.
std::vector<double> tail_weights(const SmoothingSpec& sm, std::size_t len) {
  std::vector<double> w(len, 0.0);
  switch (sm.kind) {
    case SmoothingSpec::Kind::none: {
      std::fill(w.begin(), w.end(), 1.0);
      break;
    }
    case SmoothingSpec::Kind::poisson: {
      const double r = sm.rate;
      if (r == 0.0) break;  // P(L >= i) = 0 for all i >= 1
      const double log_r = std::log(r);
      auto log_pmf = [&](double t) { return -r + t * log_r - std::lgamma(t + 1.0); };
      // Tail at the top index by upward summation, then a downward
      // recurrence tail_i = tail_{i+1} + pmf(i); all terms positive.
      const double top = static_cast<double>(len);
      double tail_top = 0.0;
      for (double t = top;; t += 1.0) {
        const double lp = log_pmf(t);
        if (lp < -745.0 && t > r) break;
        tail_top += std::exp(lp);
        if (std::exp(lp) < tail_top * 1e-18 && t > r) break;
      }
      double tail = tail_top;
      w[len - 1] = tail;
      for (std::size_t i = len - 1; i-- > 0;) {
        tail += std::exp(log_pmf(static_cast<double>(i + 1)));
        w[i] = std::min(tail, 1.0);
      }
      break;
    }
    case SmoothingSpec::Kind::binomial: {
      const std::uint64_t k = sm.trials;
      const double q = sm.q;
      if (k == 0 || q == 0.0) break;
      const double log_q = std::log(q);
      const double log_1mq = (q < 1.0) ? std::log1p(-q) : -std::numeric_limits<double>::infinity();
      auto log_pmf = [&](std::uint64_t t) {
        const double kk = static_cast<double>(k);
        const double tt = static_cast<double>(t);
        if (q >= 1.0) return (t == k) ? 0.0 : -std::numeric_limits<double>::infinity();
        return std::lgamma(kk + 1.0) - std::lgamma(tt + 1.0) - std::lgamma(kk - tt + 1.0) +
               tt * log_q + (kk - tt) * log_1mq;
      };
      double tail = 0.0;
      for (std::uint64_t t = k;; --t) {
        tail += std::exp(log_pmf(t));
        if (t <= len && t >= 1) w[t - 1] = std::min(tail, 1.0);
        if (t == 1) break;
      }
      break;
    }
  }
  return w;
}

}  // namespace

double good_toulmin(const Fingerprint& fp, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("good_toulmin: lambda must be positive");
  const std::vector<double> ones(fp.raw().size(), 1.0);
  return alternating_fingerprint_sum(fp, lambda, ones);
}

SmoothingSpec SmoothingSpec::poisson(double rate) {
  if (!(rate >= 0.0)) throw std::domain_error("SmoothingSpec: Poisson rate must be >= 0");
  SmoothingSpec s;
  s.kind = Kind::poisson;
  s.rate = rate;
  return s;
}

SmoothingSpec SmoothingSpec::binomial(std::uint64_t trials, double q) {
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw std::domain_error("SmoothingSpec: binomial q must lie in [0,1]");
  }
  SmoothingSpec s;
  s.kind = Kind::binomial;
  s.trials = trials;
  s.q = q;
  return s;
}

double smoothed_gt(const Fingerprint& fp, double lambda, const SmoothingSpec& smoothing) {
  if (!(lambda > 0.0)) throw std::domain_error("smoothed_gt: lambda must be positive");
  if (fp.raw().empty()) return 0.0;
  return alternating_fingerprint_sum(fp, lambda, tail_weights(smoothing, fp.raw().size()));
}

std::array<std::pair<std::string, SmoothingSpec>, 3> orl_baselines(std::uint64_t n,
                                                                   double lambda) {
  if (!(lambda > 1.0)) {
    throw std::domain_error("orl_baselines: smoothing targets the lambda > 1 regime");
  }
  const double x = static_cast<double>(n) * lambda * lambda / (lambda - 1.0);
  const auto trials = static_cast<std::uint64_t>(std::ceil(0.5 * std::log2(x)));
  const double rate = std::log(x) / (2.0 * lambda);
  return {{
      {"sgt-poisson", SmoothingSpec::poisson(rate)},
      {"sgt-binomial", SmoothingSpec::binomial(trials, 2.0 / (lambda + 2.0))},
      {"sgt-binomial-et", SmoothingSpec::binomial(trials, 1.0 / (lambda + 1.0))},
  }};
}

}  // namespace unseen
