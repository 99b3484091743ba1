#include "unseen/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace unseen {

double power_tail_sum(double q, std::uint64_t m) {
  if (!(q > 1.0)) {
    throw std::domain_error("power_tail_sum: exponent must exceed 1");
  }
  // Everything past m is below the double underflow threshold.
  if (-q * std::log(static_cast<double>(m) + 1.0) < -745.0) return 0.0;

  // Direct terms, then Euler-Maclaurin from a = m + n0 + 1. n0 grows with q
  // so the correction series stays far below 1e-12 relative error.
  const std::uint64_t n0 = 100 + static_cast<std::uint64_t>(12.0 * q);
  double direct = 0.0;
  for (std::uint64_t j = m + n0; j > m; --j) {
    direct += std::pow(static_cast<double>(j), -q);
  }
  const double a = static_cast<double>(m + n0) + 1.0;
  const double fa = std::pow(a, -q);
  double tail = a * fa / (q - 1.0);  // integral a^{1-q}/(q-1)
  tail += 0.5 * fa;
  tail += q * fa / (12.0 * a);
  tail -= q * (q + 1.0) * (q + 2.0) * fa / (720.0 * a * a * a);
  tail += q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) * fa /
          (30240.0 * a * a * a * a * a);
  return direct + tail;
}

double zeta_fn(double q) { return power_tail_sum(q, 0); }

// ---------------------------------------------------------------------------
// Zipf

ZipfDistribution::ZipfDistribution(double s) : s_(s) {
  if (!(s > 1.0)) {
    throw std::domain_error("Zipf: exponent s must exceed 1 for summability");
  }
  zeta_s_ = zeta_fn(s);
}

double ZipfDistribution::mass(std::uint64_t j) const {
  if (j == 0) throw std::domain_error("Zipf: atoms are indexed from 1");
  return std::pow(static_cast<double>(j), -s_) / zeta_s_;
}

std::uint64_t ZipfDistribution::survival(double x) const {
  if (!(x > 0.0)) throw std::domain_error("survival: x must be positive");
  if (x >= mass(1)) return 0;
  // Invert p_j > x: j < (zeta(s) x)^{-1/s}, then fix the boundary exactly.
  const double t = std::pow(zeta_s_ * x, -1.0 / s_);
  if (t >= 9.0e18) throw std::overflow_error("survival: count exceeds 64-bit range");
  std::uint64_t j = static_cast<std::uint64_t>(t);
  while (j >= 1 && !(mass(j) > x)) --j;
  while (mass(j + 1) > x) ++j;
  return j;
}

double ZipfDistribution::tail_power_sum(double t, std::uint64_t m) const {
  return std::pow(zeta_s_, -t) * unseen::power_tail_sum(s_ * t, m);
}

double ZipfDistribution::power_law_limit(double alpha) const {
  const double index = tail_index();
  if (alpha > index * (1.0 + 1e-9)) return 0.0;
  if (alpha < index * (1.0 - 1e-9)) {
    throw std::domain_error("power_law_limit: x^alpha F(x) diverges below the tail index");
  }
  return std::pow(zeta_s_, -index);
}

// ---------------------------------------------------------------------------
// Double Zipf

DoubleZipfDistribution::DoubleZipfDistribution(double alpha, double beta, std::uint64_t J)
    : alpha_(alpha), beta_(beta), J_(J) {
  if (!(beta > 0.0) || !(alpha < 1.0) || !(beta <= alpha)) {
    throw std::domain_error("DoubleZipf: need 0 < beta <= alpha < 1");
  }
  if (J == 0) throw std::domain_error("DoubleZipf: J must be at least 1");
  const double qa = 1.0 / alpha_;
  double head = 0.0;
  head_cdf_.reserve(J);
  for (std::uint64_t j = 1; j <= J; ++j) {
    head += std::pow(static_cast<double>(j), -qa);
    head_cdf_.push_back(head);
  }
  const double tail = unseen::power_tail_sum(1.0 / beta_, J);
  c_ = 1.0 / (head + tail);
  for (double& v : head_cdf_) v *= c_;
}

double DoubleZipfDistribution::mass(std::uint64_t j) const {
  if (j == 0) throw std::domain_error("DoubleZipf: atoms are indexed from 1");
  const double q = (j <= J_) ? 1.0 / alpha_ : 1.0 / beta_;
  return c_ * std::pow(static_cast<double>(j), -q);
}

std::uint64_t DoubleZipfDistribution::survival(double x) const {
  if (!(x > 0.0)) throw std::domain_error("survival: x must be positive");
  if (x >= mass(1)) return 0;
  const double first_tail_mass = mass(J_ + 1);
  double t;
  if (x < first_tail_mass) {
    // Deep enough that the whole head qualifies; count through the tail law.
    t = std::pow(c_ / x, beta_);
  } else {
    // Only head atoms can exceed x.
    t = std::min(static_cast<double>(J_), std::pow(c_ / x, alpha_));
  }
  if (t >= 9.0e18) throw std::overflow_error("survival: count exceeds 64-bit range");
  std::uint64_t j = static_cast<std::uint64_t>(t);
  while (j >= 1 && !(mass(j) > x)) --j;
  while (mass(j + 1) > x) ++j;
  return j;
}

double DoubleZipfDistribution::tail_power_sum(double t, std::uint64_t m) const {
  const double qa = 1.0 / alpha_;
  const double qb = 1.0 / beta_;
  const double ct = std::pow(c_, t);
  if (m >= J_) return ct * unseen::power_tail_sum(qb * t, m);
  double head = 0.0;
  for (std::uint64_t j = J_; j > m; --j) {
    head += std::pow(static_cast<double>(j), -qa * t);
  }
  return ct * (head + unseen::power_tail_sum(qb * t, J_));
}

double DoubleZipfDistribution::power_law_limit(double alpha) const {
  if (alpha > beta_ * (1.0 + 1e-9)) return 0.0;
  if (alpha < beta_ * (1.0 - 1e-9)) {
    throw std::domain_error("power_law_limit: x^alpha F(x) diverges below the tail index");
  }
  return std::pow(c_, beta_);
}

// ---------------------------------------------------------------------------
// Spec helpers

double true_tail_index(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZipfSpec>) {
          return 1.0 / s.s;
        } else if constexpr (std::is_same_v<T, DoubleZipfSpec>) {
          return s.beta;
        } else {
          return s.alpha;
        }
      },
      spec);
}

std::unique_ptr<DiscreteMasses> masses_of(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::unique_ptr<DiscreteMasses> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZipfSpec>) {
          return std::make_unique<ZipfDistribution>(s.s);
        } else if constexpr (std::is_same_v<T, DoubleZipfSpec>) {
          return std::make_unique<DoubleZipfDistribution>(s.alpha, s.beta, s.J);
        } else {
          throw std::domain_error("CRP is a random measure with no fixed atom masses");
        }
      },
      spec);
}

std::uint64_t survival_function(const DistributionSpec& spec, double x) {
  return masses_of(spec)->survival(x);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZipfSpec>) {
          os << "zipf(s=" << s.s << ")";
        } else if constexpr (std::is_same_v<T, DoubleZipfSpec>) {
          os << "double-zipf(alpha=" << s.alpha << ",beta=" << s.beta << ",J=" << s.J << ")";
        } else {
          os << "crp(alpha=" << s.alpha << ")";
        }
      },
      spec);
  return os.str();
}

}  // namespace unseen
