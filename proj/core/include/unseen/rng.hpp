#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace unseen {

// Bit-mixing finalizer used to condition seeds and derive replicate streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for replicate r of a base seed. Identical (seed, r) pairs give
// identical streams; distinct replicates get decorrelated streams.
constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t replicate) {
  return splitmix64(splitmix64(seed) ^ splitmix64(replicate + 0x632be59bd9b4e019ULL));
}

// Deterministic random stream. The engine is mt19937_64, whose output
// sequence is fixed by the C++ standard, so runs reproduce across platforms.
// Uniform variates are built from raw 64-bit words rather than
// std::uniform_real_distribution, which is not portable.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t replicate = 0)
      : seed_(seed), replicate_(replicate), engine_(child_seed(seed, replicate)) {}

  static constexpr const char* algorithm() { return "mt19937_64/splitmix64-child"; }

  SeededRng child(std::uint64_t replicate) const { return SeededRng(seed_, replicate); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; never returns zero, safe under x^{-a} transforms.
  double u01_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replicate() const { return replicate_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replicate_;
  std::mt19937_64 engine_;
};

}  // namespace unseen
