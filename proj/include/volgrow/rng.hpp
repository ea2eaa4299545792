#ifndef VOLGROW_RNG_HPP
#define VOLGROW_RNG_HPP

#include <cmath>
#include <cstdint>

namespace volgrow {

// Counter-based pseudo-random numbers. Every draw is a pure function of
// (seed, stream, counter, slot), so concurrent consumers can pull samples in
// any order and still reproduce bit-identical results. The mixer is the
// splitmix64 finalizer.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Named streams keep the per-command sample sequences independent of one
// another while still deriving from the single experiment seed.
enum class Stream : std::uint64_t {
  kVolumeSampler = 1,
  kBallSampler = 2,
  kGrassmannPoints = 3,
  kGrassmannFrames = 4,
  kDominationPoints = 5,
  kLyapunovPoints = 6,
  kSplittingInit = 7,
  kBallCenters = 8,
  kTests = 100,
};

// At most 8 independent slots per counter; enough for a 4D Gaussian frame
// column drawn via Box-Muller pairs.
constexpr std::uint32_t kSlotsPerCounter = 8;

class Prng {
 public:
  Prng(std::uint64_t seed, Stream stream)
      : key_(mix64(seed ^ mix64(static_cast<std::uint64_t>(stream) * 0xd6e8feb86659fd93ull))) {}

  std::uint64_t bits(std::uint64_t counter, std::uint32_t slot = 0) const {
    return mix64(key_ + counter * kSlotsPerCounter + slot);
  }

  // Uniform in [0, 1), 53 significant bits.
  double uniform(std::uint64_t counter, std::uint32_t slot = 0) const {
    return static_cast<double>(bits(counter, slot) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes slots (2k, 2k+1).
  double gaussian(std::uint64_t counter, std::uint32_t pair = 0) const {
    const double u1 = 1.0 - uniform(counter, 2 * pair);      // (0, 1]
    const double u2 = uniform(counter, 2 * pair + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return radius * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace rng
}  // namespace volgrow

#endif  // VOLGROW_RNG_HPP
