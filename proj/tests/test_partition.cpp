#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "unseen/partition.hpp"
#include "unseen/rng.hpp"

using namespace unseen;

TEST_CASE("fingerprint from counts") {
  const auto s = SampleCounts::from_counts({{"a", 2}, {"b", 1}});
  CHECK(s.n() == 3);
  const Fingerprint fp = fingerprint_from_counts(s);
  CHECK(fp.count_of_size(1) == 1);
  CHECK(fp.count_of_size(2) == 1);
  CHECK(fp.count_of_size(3) == 0);

  const auto singletons = SampleCounts::from_counts({{"a", 1}, {"b", 1}, {"c", 1}});
  const Fingerprint fs = fingerprint_from_counts(singletons);
  CHECK(fs.count_of_size(1) == 3);
  CHECK(fs.max_size() == 1);

  const auto block = SampleCounts::from_counts({{"a", 4}});
  const Fingerprint fb = fingerprint_from_counts(block);
  CHECK(fb.count_of_size(4) == 1);
  CHECK(fb.count_of_size(1) == 0);
  CHECK(fb.distinct() == 1);
}

TEST_CASE("cumulative from fingerprint") {
  CHECK(cumulative_from_fingerprint(Fingerprint({1, 1}, 3)).raw() ==
        std::vector<std::uint64_t>{2, 1});
  CHECK(cumulative_from_fingerprint(Fingerprint({3}, 3)).raw() ==
        std::vector<std::uint64_t>{3});
  CHECK(cumulative_from_fingerprint(Fingerprint({0, 0, 0, 1}, 4)).raw() ==
        std::vector<std::uint64_t>{1, 1, 1, 1});
}

TEST_CASE("distinct count") {
  CHECK(distinct_count(Fingerprint({1, 1}, 3)) == 2);
  CHECK(distinct_count(Fingerprint({3}, 3)) == 3);
  CHECK(distinct_count(Fingerprint({0, 0, 0, 1}, 4)) == 1);
}

TEST_CASE("invariants rejected at construction") {
  CHECK_THROWS_AS(Fingerprint({1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(SampleCounts::from_counts({{"a", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SampleCounts::from_counts({}), std::invalid_argument);
  CHECK_THROWS_AS(CumulativeCounts({1, 2}, 3), std::invalid_argument);
}

TEST_CASE("round trip identity over random samples") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    SampleCounts::Map counts;
    const std::uint64_t species = 1 + rng.below(40);
    for (std::uint64_t sp = 0; sp < species; ++sp) {
      counts["s" + std::to_string(sp)] = 1 + rng.below(20);
    }
    const auto sample = SampleCounts::from_counts(std::move(counts));
    const Fingerprint fp = fingerprint_from_counts(sample);
    const CumulativeCounts c = cumulative_from_fingerprint(fp);

    // sum_k (C_k - C_{k+1}) * k rebuilds the sample size.
    std::uint64_t mass = 0;
    for (std::uint64_t k = 1; k <= c.max_size(); ++k) {
      mass += (c.at(k) - c.at(k + 1)) * k;
    }
    CHECK(mass == sample.n());
    CHECK(c.at(1) == sample.distinct());
    CHECK(fp.distinct() == sample.distinct());
    for (std::uint64_t k = 1; k < c.max_size(); ++k) {
      CHECK(c.at(k) >= c.at(k + 1));
    }
  }
}

TEST_CASE("fingerprints from sampled distributions keep identities") {
  SeededRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Fingerprint fp = crp_sample(CrpSpec{0.4}, 500, rng);
    std::uint64_t mass = 0;
    for (std::uint64_t l = 1; l <= fp.max_size(); ++l) mass += l * fp.count_of_size(l);
    CHECK(mass == 500);
    CHECK(cumulative_from_fingerprint(fp).at(1) == fp.distinct());
  }
}
