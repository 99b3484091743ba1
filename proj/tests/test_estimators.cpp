#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "unseen/estimators.hpp"

using namespace unseen;
using unseen::test::close;

namespace {

// K_n = 100 distinct species in n = 1000 samples: 99 singletons plus one
// block of 901.
Fingerprint k100_n1000() {
  std::vector<std::uint64_t> m(901, 0);
  m[0] = 99;
  m[900] = 1;
  return Fingerprint(std::move(m), 1000);
}

}  // namespace

TEST_CASE("plugin estimator hand values") {
  const auto est = plugin_unseen(k100_n1000(), 0.5, 3.0, 1.0);
  // log 3 = 1.0986 <= sqrt(1000^0.5 / log 1000) = 2.1397, so active:
  // 100 * (4^0.5 - 1) = 100.
  CHECK_FALSE(est.thresholded);
  CHECK(est.value == doctest::Approx(100.0).epsilon(1e-12));

  const auto zero_alpha = plugin_unseen(k100_n1000(), 0.0, 3.0, 1.0);
  CHECK_FALSE(zero_alpha.thresholded);
  CHECK(zero_alpha.value == 0.0);

  const auto gated = plugin_unseen(k100_n1000(), 0.5, std::exp(10.0), 1.0);
  CHECK(gated.thresholded);
  CHECK(gated.value == 0.0);

  CHECK_THROWS_AS(plugin_unseen(k100_n1000(), 0.5, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(plugin_unseen(k100_n1000(), 1.5, 2.0, 1.0), std::domain_error);
}

TEST_CASE("plugin monotone in alpha below the threshold") {
  SeededRng rng(3);
  const Fingerprint fp = k100_n1000();
  for (int i = 0; i < 100; ++i) {
    const double a1 = rng.u01() * 0.9;
    const double a2 = a1 + 0.1 * rng.u01();
    const double lambda = 0.5 + 2.0 * rng.u01();
    const auto e1 = plugin_unseen(fp, a1, lambda, 5.0);
    const auto e2 = plugin_unseen(fp, a2, lambda, 5.0);
    REQUIRE_FALSE(e1.thresholded);
    REQUIRE_FALSE(e2.thresholded);
    CHECK(e2.value >= e1.value);
  }
}

TEST_CASE("loss hand values and properties") {
  CHECK(loss(7.0, 7.0, 0.5, 2.0, 100) == 0.0);
  // (10-0)^2 / (lambda n)^{2*0.5} with lambda n = 100 -> 100/100 = 1.
  CHECK(loss(10.0, 0.0, 0.5, 1.0, 100) == doctest::Approx(1.0));
  CHECK_THROWS_AS(loss(1.0, 2.0, 1.5, 1.0, 100), std::domain_error);
  CHECK_THROWS_AS(loss(1.0, 2.0, 0.5, -1.0, 100), std::domain_error);

  SeededRng rng(4);
  for (int i = 0; i < 100; ++i) {
    const double u = rng.u01() * 100.0;
    const double v = rng.u01() * 100.0;
    const double a = 0.1 + 0.8 * rng.u01();
    const double lambda = 0.5 + 3.0 * rng.u01();
    CHECK(loss(u, v, a, lambda, 500) == loss(v, u, a, lambda, 500));
    const double scale = 0.5 + 4.0 * rng.u01();
    CHECK(close(loss(scale * u, scale * v, a, lambda, 500),
                scale * scale * loss(u, v, a, lambda, 500), 1e-12));
  }
}

TEST_CASE("good-toulmin hand values") {
  // m = [3,1], lambda 1: 3 - 1 = 2.
  CHECK(good_toulmin(Fingerprint({3, 1}, 5), 1.0) == doctest::Approx(2.0));
  CHECK(good_toulmin(Fingerprint({}, 0), 1.0) == 0.0);
  CHECK(std::abs(good_toulmin(Fingerprint({3, 1}, 5), 1e-12)) <= 1e-10);
}

TEST_CASE("smoothing degeneracies") {
  SeededRng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Fingerprint fp = unseen::test::random_partition(0.5, 300, 70 + trial);
    const double lambda = 0.2 + 3.0 * rng.u01();
    // none reproduces plain Good-Toulmin bit for bit.
    CHECK(smoothed_gt(fp, lambda, SmoothingSpec::none()) == good_toulmin(fp, lambda));
    // Poisson rate zero kills every term.
    CHECK(smoothed_gt(fp, lambda, SmoothingSpec::poisson(0.0)) == 0.0);
    // Binomial with one trial keeps only the i=1 term: lambda q M_1.
    const double q = rng.u01();
    CHECK(close(smoothed_gt(fp, lambda, SmoothingSpec::binomial(1, q)),
                lambda * q * static_cast<double>(fp.count_of_size(1)), 1e-12,
                1e-12));
  }
}

TEST_CASE("poisson smoothing converges to good-toulmin as the rate grows") {
  const Fingerprint fp = unseen::test::random_partition(0.5, 200, 123);
  const double lambda = 1.5;
  const double gt = good_toulmin(fp, lambda);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (const double rate : {50.0, 200.0, 1000.0}) {
    const double gap = std::abs(smoothed_gt(fp, lambda, SmoothingSpec::poisson(rate)) - gt);
    CHECK(gap <= prev_gap + 1e-9);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 1e-6 * std::max(1.0, std::abs(gt)));
}

TEST_CASE("baseline smoothing configurations") {
  CHECK_THROWS_AS(orl_baselines(1000, 1.0), std::domain_error);
  const auto base = orl_baselines(1000, 2.0);
  // X = n lambda^2/(lambda-1) = 4000.
  CHECK(base[0].first == "sgt-poisson");
  CHECK(base[0].second.rate == doctest::Approx(std::log(4000.0) / 4.0));
  CHECK(base[1].second.trials == 6);  // ceil(0.5 * log2 4000)
  CHECK(base[1].second.q == doctest::Approx(0.5));
  CHECK(base[2].second.q == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(SmoothingSpec::binomial(3, 1.5), std::domain_error);
  CHECK_THROWS_AS(SmoothingSpec::poisson(-1.0), std::domain_error);
}

TEST_CASE("divergent series stay well-defined") {
  // A partition with a large block at lambda 40 overflows naive summation;
  // the result must be a huge magnitude or inf, never NaN.
  std::vector<std::uint64_t> m(400, 0);
  m[0] = 30;
  m[399] = 1;
  const Fingerprint fp(std::move(m), 430);
  const double v = good_toulmin(fp, 40.0);
  CHECK_FALSE(std::isnan(v));
  CHECK(std::abs(v) > 1e100);
}
