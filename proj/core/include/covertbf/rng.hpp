#pragma once

#include <cstdint>
#include <random>

namespace covertbf {

using Rng = std::mt19937_64;

/// Purposes that get their own independent stream off a top-level seed.
enum class Stream : std::uint64_t {
  kChannels = 1,
  kCsiError = 2,
  kRandomization = 3,
  kMonteCarlo = 4,
  kDetection = 5,
};

/// Derives reproducible per-purpose generators from one experiment seed.
/// The same (seed, stream, index) triple always yields the same generator,
/// regardless of how many other streams were drawn before it.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

  Rng make(Stream stream, std::uint64_t index = 0) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace covertbf
