#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "unseen/distributions.hpp"
#include "unseen/partition.hpp"
#include "unseen/rng.hpp"

namespace unseen {

// Exact sampler for the full infinite-support Zipf(s) law, by rejection from
// the floor of a continuous Pareto envelope (Devroye). No truncation: the
// tail index of the draws is exactly 1/s.
class ZipfSampler {
 public:
  explicit ZipfSampler(double s);

  // One draw; the returned id is the atom index. Indices beyond 2^53 lose
  // integer resolution but remain distinct double values, so species
  // identity statistics are unaffected.
  double draw(SeededRng& rng);

  // Proposals consumed so far (accepted + rejected); the acceptance rate is
  // bounded below by a constant depending only on s.
  std::uint64_t proposals() const { return proposals_; }
  std::uint64_t draws() const { return draws_; }

 private:
  double s_;
  double inv_sm1_;  // 1/(s-1)
  double b_;        // 2^{s-1}
  std::uint64_t proposals_ = 0;
  std::uint64_t draws_ = 0;
};

// Exact sampler for the double Zipf law: head atoms j <= J by CDF inversion,
// tail atoms j > J by rejection from a shifted continuous power law.
class DoubleZipfSampler {
 public:
  DoubleZipfSampler(double alpha, double beta, std::uint64_t J);

  double draw(SeededRng& rng);

  std::uint64_t proposals() const { return proposals_; }
  std::uint64_t draws() const { return draws_; }

  const DoubleZipfDistribution& distribution() const { return dist_; }

 private:
  DoubleZipfDistribution dist_;
  double q_tail_;     // 1/beta
  double head_mass_;  // total mass of atoms 1..J
  std::uint64_t proposals_ = 0;
  std::uint64_t draws_ = 0;
};

// Incremental Chinese-restaurant seating with parameters (alpha, 0):
// customer i+1 joins a block of size n_b with probability (n_b - alpha)/i
// and opens a new block with probability (#blocks * alpha)/i. O(1) work per
// customer.
class CrpSeating {
 public:
  explicit CrpSeating(double alpha);

  void seat_next(SeededRng& rng);
  std::uint64_t customers() const { return customers_; }
  std::uint64_t blocks() const { return sizes_.size(); }
  const std::vector<std::uint64_t>& block_sizes() const { return sizes_; }

 private:
  double alpha_;
  std::uint64_t customers_ = 0;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint32_t> non_first_;  // block id per non-first customer
};

// Species-id stream over the explicit-mass specs (Zipf, double Zipf); ids
// are canonical bit patterns usable as hash keys.
class SpeciesStream {
 public:
  explicit SpeciesStream(const DistributionSpec& spec);

  std::uint64_t draw(SeededRng& rng);
  std::uint64_t proposals() const;
  std::uint64_t draws() const;

 private:
  std::variant<ZipfSampler, DoubleZipfSampler> sampler_;
};

// Spec-level operations returning the spec's domain types.
SampleCounts zipf_sample(const ZipfSpec& spec, std::uint64_t n, SeededRng& rng);
SampleCounts double_zipf_sample(const DoubleZipfSpec& spec, std::uint64_t n, SeededRng& rng);
Fingerprint crp_sample(const CrpSpec& spec, std::uint64_t n, SeededRng& rng);

// Labeled counts for any spec (CRP blocks get synthetic labels).
SampleCounts sample_counts(const DistributionSpec& spec, std::uint64_t n, SeededRng& rng);

}  // namespace unseen
