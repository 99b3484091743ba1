#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace unseen {

// Sum_{j > m} j^{-q} for q > 1, via direct summation plus Euler-Maclaurin
// tail corrections. Relative error below 1e-12 over the parameter ranges
// used here.
double power_tail_sum(double q, std::uint64_t m);

// Riemann zeta for q > 1, built on the same machinery.
double zeta_fn(double q);

// A discrete distribution on {1, 2, ...} with explicit, directly computable
// masses. Everything needed by the diagnostics: pointwise mass, the survival
// count F(x) = #{j : p_j > x}, and exact power sums of the mass tail.
class DiscreteMasses {
 public:
  virtual ~DiscreteMasses() = default;

  virtual double mass(std::uint64_t j) const = 0;
  // F(x): number of atoms with mass strictly greater than x.
  virtual std::uint64_t survival(double x) const = 0;
  // Sum_{j > m} p_j^t, exact up to floating error.
  virtual double tail_power_sum(double t, std::uint64_t m) const = 0;
  // Limit L = lim_{x->0} x^alpha F(x). Returns 0 when alpha exceeds the
  // distribution's tail index; throws std::domain_error when the limit is
  // infinite (alpha below the tail index).
  virtual double power_law_limit(double alpha) const = 0;
  // Number of atoms when finite.
  virtual std::optional<std::uint64_t> support_size() const { return std::nullopt; }
};

// Zipf(s): p_j = j^{-s} / zeta(s), s > 1, infinite support. Tail index 1/s.
class ZipfDistribution final : public DiscreteMasses {
 public:
  explicit ZipfDistribution(double s);

  double s() const { return s_; }
  double tail_index() const { return 1.0 / s_; }
  double normalizer() const { return zeta_s_; }

  double mass(std::uint64_t j) const override;
  std::uint64_t survival(double x) const override;
  double tail_power_sum(double t, std::uint64_t m) const override;
  double power_law_limit(double alpha) const override;

 private:
  double s_;
  double zeta_s_;
};

// Double Zipf: p_j proportional to j^{-1/alpha} for j <= J and to j^{-1/beta}
// for j > J, with 0 < beta <= alpha < 1. True tail index beta; for large J
// the head masquerades as Zipf(1/alpha).
class DoubleZipfDistribution final : public DiscreteMasses {
 public:
  DoubleZipfDistribution(double alpha, double beta, std::uint64_t J);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t J() const { return J_; }
  double tail_index() const { return beta_; }
  // The common normalizing constant C with p_j = C j^{-1/alpha} on the head.
  double normalizer() const { return c_; }

  double mass(std::uint64_t j) const override;
  std::uint64_t survival(double x) const override;
  double tail_power_sum(double t, std::uint64_t m) const override;
  double power_law_limit(double alpha) const override;

  // Cumulative head masses for inversion sampling; entry j-1 holds
  // sum_{i<=j} p_i for j <= J.
  const std::vector<double>& head_cdf() const { return head_cdf_; }

 private:
  double alpha_;
  double beta_;
  std::uint64_t J_;
  double c_;  // normalizer
  std::vector<double> head_cdf_;
};

// Generative model specifications used across samplers, diagnostics and the
// Monte-Carlo harness.
struct ZipfSpec {
  double s;  // exponent, > 1; tail index 1/s
};

struct DoubleZipfSpec {
  double alpha;
  double beta;
  std::uint64_t J;
};

struct CrpSpec {
  double alpha;  // in (0,1)
};

using DistributionSpec = std::variant<ZipfSpec, DoubleZipfSpec, CrpSpec>;

// The tail index implied by the spec: 1/s, beta, or alpha.
double true_tail_index(const DistributionSpec& spec);

// Explicit-mass view; throws std::domain_error for CRP (a random measure has
// no fixed masses).
std::unique_ptr<DiscreteMasses> masses_of(const DistributionSpec& spec);

// F(x) for specs with explicit masses; throws std::domain_error for CRP.
std::uint64_t survival_function(const DistributionSpec& spec, double x);

std::string describe(const DistributionSpec& spec);

}  // namespace unseen
