#include "unseen/partition.hpp"

#include <numeric>
#include <stdexcept>

namespace unseen {

SampleCounts SampleCounts::from_counts(Map counts) {
  if (counts.empty()) {
    throw std::invalid_argument("SampleCounts: empty sample (n = 0)");
  }
  std::uint64_t n = 0;
  for (const auto& [species, count] : counts) {
    if (count == 0) {
      throw std::invalid_argument("SampleCounts: species '" + species + "' has count 0");
    }
    n += count;
  }
  return SampleCounts(std::move(counts), n);
}

namespace {

std::vector<std::uint64_t> trim_trailing_zeros(std::vector<std::uint64_t> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

Fingerprint::Fingerprint(std::vector<std::uint64_t> m, std::uint64_t n)
    : m_(trim_trailing_zeros(std::move(m))), n_(n), distinct_(0) {
  std::uint64_t mass = 0;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    mass += (i + 1) * m_[i];
    distinct_ += m_[i];
  }
  if (mass != n_) {
    throw std::invalid_argument("Fingerprint: sum of l*M_l does not equal n");
  }
}

Fingerprint Fingerprint::from_block_sizes(std::span<const std::uint64_t> sizes) {
  std::uint64_t n = 0;
  std::uint64_t largest = 0;
  for (std::uint64_t s : sizes) {
    n += s;
    largest = std::max(largest, s);
  }
  std::vector<std::uint64_t> m(largest, 0);
  for (std::uint64_t s : sizes) {
    if (s == 0) throw std::invalid_argument("Fingerprint: zero block size");
    ++m[s - 1];
  }
  return Fingerprint(std::move(m), n);
}

CumulativeCounts::CumulativeCounts(std::vector<std::uint64_t> c, std::uint64_t n)
    : c_(trim_trailing_zeros(std::move(c))), n_(n) {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] > c_[i - 1]) {
      throw std::invalid_argument("CumulativeCounts: not nonincreasing");
    }
  }
}

Fingerprint fingerprint_from_counts(const SampleCounts& sample) {
  std::uint64_t largest = 0;
  for (const auto& [species, count] : sample.counts()) largest = std::max(largest, count);
  std::vector<std::uint64_t> m(largest, 0);
  for (const auto& [species, count] : sample.counts()) ++m[count - 1];
  return Fingerprint(std::move(m), sample.n());
}

CumulativeCounts cumulative_from_fingerprint(const Fingerprint& fp) {
  const auto& m = fp.raw();
  std::vector<std::uint64_t> c(m.size(), 0);
  std::uint64_t suffix = 0;
  for (std::size_t i = m.size(); i-- > 0;) {
    suffix += m[i];
    c[i] = suffix;
  }
  return CumulativeCounts(std::move(c), fp.n());
}

std::uint64_t distinct_count(const Fingerprint& fp) { return fp.distinct(); }

}  // namespace unseen
