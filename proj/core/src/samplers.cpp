#include "unseen/samplers.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace unseen {

// ---------------------------------------------------------------------------
// Zipf

ZipfSampler::ZipfSampler(double s) : s_(s) {
  if (!(s > 1.0)) throw std::domain_error("ZipfSampler: s must exceed 1");
  inv_sm1_ = 1.0 / (s - 1.0);
  b_ = std::pow(2.0, s - 1.0);
}

double ZipfSampler::draw(SeededRng& rng) {
  // Devroye's rejection scheme: X = floor(U^{-1/(s-1)}) is the floor of a
  // continuous Pareto variate; accept X with probability proportional to
  // X^{-s} over the envelope cell mass.
  for (;;) {
    ++proposals_;
    const double u = rng.u01_pos();
    const double v = rng.u01();
    const double x = std::floor(std::pow(u, -inv_sm1_));
    // T - 1 = (1 + 1/X)^{s-1} - 1, kept accurate for huge X.
    const double tm1 = std::expm1((s_ - 1.0) * std::log1p(1.0 / x));
    const double t = tm1 + 1.0;
    if (v * x * tm1 / (b_ - 1.0) <= t / b_) {
      ++draws_;
      return x;
    }
  }
}

// ---------------------------------------------------------------------------
// Double Zipf

DoubleZipfSampler::DoubleZipfSampler(double alpha, double beta, std::uint64_t J)
    : dist_(alpha, beta, J), q_tail_(1.0 / beta) {
  head_mass_ = dist_.head_cdf().back();
}

double DoubleZipfSampler::draw(SeededRng& rng) {
  ++draws_;
  const double u = rng.u01();
  if (u < head_mass_) {
    // Head: invert the precomputed CDF over atoms 1..J.
    const auto& cdf = dist_.head_cdf();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<double>((it - cdf.begin()) + 1);
  }
  // Tail: target p(m) proportional to m^{-q} on m > J. Envelope is the
  // continuous Pareto on (J, inf); m = floor(Y) + 1 has cell mass
  // (m-1)^{1-q} - m^{1-q} >= (q-1) m^{-q}, so accept with the exact ratio.
  const double j = static_cast<double>(dist_.J());
  for (;;) {
    ++proposals_;
    const double y = j * std::pow(rng.u01_pos(), -1.0 / (q_tail_ - 1.0));
    const double m = std::floor(y) + 1.0;
    // cell = (m-1)^{1-q} - m^{1-q}, via expm1 to dodge cancellation.
    const double cell =
        -std::pow(m, 1.0 - q_tail_) * std::expm1((1.0 - q_tail_) * std::log1p(-1.0 / m));
    const double accept = (q_tail_ - 1.0) * std::pow(m, -q_tail_) / cell;
    if (rng.u01() <= accept) return m;
  }
}

// ---------------------------------------------------------------------------
// CRP seating

CrpSeating::CrpSeating(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("CrpSeating: alpha must lie in (0,1)");
  }
}

void CrpSeating::seat_next(SeededRng& rng) {
  if (customers_ == 0) {
    sizes_.push_back(1);
    customers_ = 1;
    return;
  }
  const double i = static_cast<double>(customers_);
  const double k = static_cast<double>(sizes_.size());
  // Split the seating weights into three uniform urns: new block (mass
  // k*alpha), an existing non-first seat (mass 1 each), a block's first seat
  // (mass 1-alpha each). Summing per block: (size - 1) + (1 - alpha),
  // exactly the CRP(alpha, 0) rule.
  const double u = rng.u01() * i;
  const double new_cut = k * alpha_;
  const double old_cut = new_cut + (i - k);
  if (u < new_cut) {
    sizes_.push_back(1);
  } else if (u < old_cut) {
    auto idx = static_cast<std::size_t>(u - new_cut);
    if (idx >= non_first_.size()) idx = non_first_.size() - 1;
    const std::uint32_t block = non_first_[idx];
    ++sizes_[block];
    non_first_.push_back(block);
  } else {
    auto idx = static_cast<std::size_t>((u - old_cut) / (1.0 - alpha_));
    if (idx >= sizes_.size()) idx = sizes_.size() - 1;
    ++sizes_[idx];
    non_first_.push_back(static_cast<std::uint32_t>(idx));
  }
  ++customers_;
}

// ---------------------------------------------------------------------------
// Streams and spec-level operations

SpeciesStream::SpeciesStream(const DistributionSpec& spec)
    : sampler_(std::visit(
          [](const auto& s) -> std::variant<ZipfSampler, DoubleZipfSampler> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ZipfSpec>) {
              return ZipfSampler(s.s);
            } else if constexpr (std::is_same_v<T, DoubleZipfSpec>) {
              return DoubleZipfSampler(s.alpha, s.beta, s.J);
            } else {
              throw std::domain_error("SpeciesStream: CRP draws are partition-level");
            }
          },
          spec)) {}

std::uint64_t SpeciesStream::draw(SeededRng& rng) {
  const double id = std::visit([&rng](auto& s) { return s.draw(rng); }, sampler_);
  return std::bit_cast<std::uint64_t>(id);
}

std::uint64_t SpeciesStream::proposals() const {
  return std::visit([](const auto& s) { return s.proposals(); }, sampler_);
}

std::uint64_t SpeciesStream::draws() const {
  return std::visit([](const auto& s) { return s.draws(); }, sampler_);
}

namespace {

std::string species_label(double id) {
  if (id == std::floor(id) && id <= 9007199254740992.0) {  // 2^53
    return std::to_string(static_cast<std::uint64_t>(id));
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, id);
  return std::string(buf, res.ptr);
}

template <typename Sampler>
SampleCounts draw_counts(Sampler& sampler, std::uint64_t n, SeededRng& rng) {
  if (n == 0) throw std::invalid_argument("sample: n must be at least 1");
  std::unordered_map<double, std::uint64_t> tally;
  tally.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) ++tally[sampler.draw(rng)];
  SampleCounts::Map counts;
  counts.reserve(tally.size());
  for (const auto& [id, count] : tally) counts.emplace(species_label(id), count);
  return SampleCounts::from_counts(std::move(counts));
}

}  // namespace

SampleCounts zipf_sample(const ZipfSpec& spec, std::uint64_t n, SeededRng& rng) {
  ZipfSampler sampler(spec.s);
  return draw_counts(sampler, n, rng);
}

SampleCounts double_zipf_sample(const DoubleZipfSpec& spec, std::uint64_t n, SeededRng& rng) {
  DoubleZipfSampler sampler(spec.alpha, spec.beta, spec.J);
  return draw_counts(sampler, n, rng);
}

Fingerprint crp_sample(const CrpSpec& spec, std::uint64_t n, SeededRng& rng) {
  if (n == 0) throw std::invalid_argument("crp_sample: n must be at least 1");
  CrpSeating seating(spec.alpha);
  for (std::uint64_t i = 0; i < n; ++i) seating.seat_next(rng);
  return Fingerprint::from_block_sizes(seating.block_sizes());
}

SampleCounts sample_counts(const DistributionSpec& spec, std::uint64_t n, SeededRng& rng) {
  if (const auto* crp = std::get_if<CrpSpec>(&spec)) {
    CrpSeating seating(crp->alpha);
    for (std::uint64_t i = 0; i < n; ++i) seating.seat_next(rng);
    SampleCounts::Map counts;
    const auto& sizes = seating.block_sizes();
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      counts.emplace("b" + std::to_string(b + 1), sizes[b]);
    }
    return SampleCounts::from_counts(std::move(counts));
  }
  SpeciesStream stream(spec);
  std::unordered_map<std::uint64_t, std::uint64_t> tally;
  tally.reserve(n);
  if (n == 0) throw std::invalid_argument("sample: n must be at least 1");
  for (std::uint64_t i = 0; i < n; ++i) ++tally[stream.draw(rng)];
  SampleCounts::Map counts;
  counts.reserve(tally.size());
  for (const auto& [bits, count] : tally) {
    counts.emplace(species_label(std::bit_cast<double>(bits)), count);
  }
  return SampleCounts::from_counts(std::move(counts));
}

}  // namespace unseen
