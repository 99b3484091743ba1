#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace unseen {

// Occurrence counts of one observed sample: species label -> multiplicity.
// Labels are opaque tokens; nothing downstream interprets them. Immutable
// after construction.
class SampleCounts {
 public:
  using Map = std::unordered_map<std::string, std::uint64_t>;

  // Throws std::invalid_argument on empty input or a zero count.
  static SampleCounts from_counts(Map counts);

  const Map& counts() const { return counts_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t distinct() const { return counts_.size(); }

 private:
  SampleCounts(Map counts, std::uint64_t n) : counts_(std::move(counts)), n_(n) {}
  Map counts_;
  std::uint64_t n_;
};

// The fingerprint (frequency of frequencies): entry l holds the number of
// species observed exactly l times. Stored densely up to the largest
// observed multiplicity; higher indices are implicitly zero.
class Fingerprint {
 public:
  // m[0] corresponds to multiplicity 1. Throws if sum(l * m[l-1]) != n.
  Fingerprint(std::vector<std::uint64_t> m, std::uint64_t n);

  static Fingerprint from_block_sizes(std::span<const std::uint64_t> sizes);

  std::uint64_t n() const { return n_; }
  // M_{n,l} for 1-based l; zero beyond the stored range.
  std::uint64_t count_of_size(std::uint64_t l) const {
    return (l >= 1 && l <= m_.size()) ? m_[l - 1] : 0;
  }
  std::uint64_t max_size() const { return m_.size(); }
  std::uint64_t distinct() const { return distinct_; }
  const std::vector<std::uint64_t>& raw() const { return m_; }

 private:
  std::vector<std::uint64_t> m_;
  std::uint64_t n_;
  std::uint64_t distinct_;
};

// Cumulative block counts: entry k holds C_{n,k}, the number of species
// observed at least k times. Nonincreasing in k; C_{n,1} equals the number
// of distinct species.
class CumulativeCounts {
 public:
  CumulativeCounts(std::vector<std::uint64_t> c, std::uint64_t n);

  std::uint64_t n() const { return n_; }
  // C_{n,k} for 1-based k; zero beyond the stored range.
  std::uint64_t at(std::uint64_t k) const {
    return (k >= 1 && k <= c_.size()) ? c_[k - 1] : 0;
  }
  std::uint64_t max_size() const { return c_.size(); }
  const std::vector<std::uint64_t>& raw() const { return c_; }

 private:
  std::vector<std::uint64_t> c_;
  std::uint64_t n_;
};

Fingerprint fingerprint_from_counts(const SampleCounts& sample);
CumulativeCounts cumulative_from_fingerprint(const Fingerprint& fp);
std::uint64_t distinct_count(const Fingerprint& fp);

}  // namespace unseen
