#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "unseen/distributions.hpp"

using namespace unseen;
using unseen::test::close;

TEST_CASE("power tail sums against reference constants") {
  // zeta values to 15+ digits (classical constants).
  CHECK(close(zeta_fn(2.0), 1.64493406684822643647, 1e-12));
  CHECK(close(zeta_fn(3.0), 1.20205690315959428540, 1e-12));
  CHECK(close(zeta_fn(4.0), 1.08232323371113819152, 1e-12));
  CHECK(close(zeta_fn(1.5), 2.61237534868548834335, 1e-12));
  CHECK(close(zeta_fn(1.25), 4.59511182584294338069, 1e-12));
  CHECK(close(zeta_fn(5.0), 1.03692775514336992633, 1e-12));
  // Hurwitz-style tails.
  CHECK(close(power_tail_sum(2.0, 10), 0.0951663356816857461222, 1e-12));
  CHECK(close(power_tail_sum(1.5, 100), 0.199501249981771907421, 1e-12));
  CHECK(close(power_tail_sum(3.7, 5), 0.00366259883902048677276, 1e-12));
  CHECK(power_tail_sum(200.0, 1000) >= 0.0);
  CHECK_THROWS_AS(power_tail_sum(1.0, 5), std::domain_error);
}

TEST_CASE("zipf masses and survival") {
  const ZipfDistribution z(2.0);
  CHECK(close(z.mass(1), 1.0 / 1.64493406684822643647, 1e-14));
  CHECK(z.tail_index() == doctest::Approx(0.5));

  // At x just below p_2 both top atoms qualify; the exact tie excludes the
  // boundary atom because the survival inequality is strict.
  const double p2 = z.mass(2);
  CHECK(z.survival(p2 * (1.0 - 1e-12)) == 2);
  CHECK(z.survival(p2) == 1);
  CHECK(z.survival(z.mass(1)) == 0);
  CHECK(z.survival(0.9) == 0);

  // x -> 0 limit: x^{1/s} F(x) -> zeta(s)^{-1/s}.
  const double x = 1e-10;
  const double scaled = std::sqrt(x) * static_cast<double>(z.survival(x));
  CHECK(close(scaled, std::pow(1.64493406684822643647, -0.5), 1e-4));

  // Monotone nonincreasing over a random grid.
  SeededRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double a = std::exp(-1.0 - 25.0 * rng.u01());
    const double b = a * (1.0 + rng.u01());
    CHECK(z.survival(a) >= z.survival(b));
  }
}

TEST_CASE("zipf tail power sums consistent with the normalizer") {
  const ZipfDistribution z(2.0);
  const double direct = [&] {
    double s = 0.0;
    for (std::uint64_t j = 6; j <= 300000; ++j) s += std::pow(z.mass(j), 2.0);
    return s;
  }();
  CHECK(close(z.tail_power_sum(2.0, 5), direct, 1e-9));
}

TEST_CASE("double zipf construction and masses") {
  CHECK_THROWS_AS(DoubleZipfDistribution(0.4, 0.5, 10), std::domain_error);  // beta > alpha
  CHECK_THROWS_AS(DoubleZipfDistribution(1.2, 0.4, 10), std::domain_error);
  CHECK_THROWS_AS(ZipfDistribution(1.0), std::domain_error);

  const DoubleZipfDistribution d(0.5, 0.4, 10);
  // Masses nonincreasing across the head/tail seam.
  for (std::uint64_t j = 1; j < 50; ++j) CHECK(d.mass(j) >= d.mass(j + 1));

  // J=1 head weight: w = 1 / (1 + sum_{j>=2} j^{-1/beta}).
  const DoubleZipfDistribution d1(0.5, 0.4, 1);
  const double expected_w = 1.0 / (1.0 + power_tail_sum(2.5, 1));
  CHECK(close(d1.head_cdf().back(), expected_w, 1e-13));

  // alpha == beta degenerates to Zipf(1/beta) exactly.
  const DoubleZipfDistribution deg(0.4, 0.4, 7);
  const ZipfDistribution z(2.5);
  for (std::uint64_t j = 1; j <= 100; ++j) CHECK(close(deg.mass(j), z.mass(j), 1e-12));
  CHECK(deg.survival(1e-6) == z.survival(1e-6));
}

TEST_CASE("double zipf survival counts by regime") {
  const DoubleZipfDistribution d(0.5, 0.4, 10);
  SeededRng rng(11);
  for (int i = 0; i < 300; ++i) {
    const double x = std::exp(-1.0 - 20.0 * rng.u01());
    const std::uint64_t fast = d.survival(x);
    std::uint64_t brute = 0;
    for (std::uint64_t j = 1; j <= 2000000; ++j) {
      if (d.mass(j) > x) {
        ++brute;
      } else {
        break;  // masses are nonincreasing
      }
    }
    CHECK(fast == brute);
  }
}

TEST_CASE("power law limits") {
  const ZipfDistribution z(2.0);
  CHECK(close(z.power_law_limit(0.5), std::pow(zeta_fn(2.0), -0.5), 1e-13));
  CHECK(z.power_law_limit(0.9) == 0.0);
  CHECK_THROWS_AS(z.power_law_limit(0.3), std::domain_error);

  const DoubleZipfDistribution d(0.5, 0.4, 10);
  CHECK(close(d.power_law_limit(0.4), std::pow(d.normalizer(), 0.4), 1e-13));
}

TEST_CASE("spec helpers") {
  CHECK(true_tail_index(ZipfSpec{2.0}) == doctest::Approx(0.5));
  CHECK(true_tail_index(DoubleZipfSpec{0.5, 0.4, 10}) == doctest::Approx(0.4));
  CHECK(true_tail_index(CrpSpec{0.7}) == doctest::Approx(0.7));
  CHECK_THROWS_AS(survival_function(CrpSpec{0.7}, 0.1), std::domain_error);
  CHECK(survival_function(ZipfSpec{2.0}, 0.9) == 0);
  CHECK(describe(ZipfSpec{2.0}) == "zipf(s=2)");
}
