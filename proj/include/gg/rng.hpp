#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace gg {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the stream for one restart, derived from the master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) {
  return mix64(master_seed ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Seedable generator with platform-independent draws. Standard library
/// distributions are implementation-defined, so index sampling is done here
/// by rejection on the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % range);
  }

  /// Independent child stream.
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace gg
