#pragma once

#include <cstdint>
#include <random>

namespace uccsim {

/// SplitMix64 finalizer; used to derive independent seeds and as the counter
/// hash behind SharedRandomness.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Maps the top 53 bits of a word to a double in [0, 1).
constexpr double to_unit(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

/// Seedable, splittable generator used for private randomness.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Conversions to reals and bounded integers are done here rather
/// than with <random> distributions, which are implementation-defined, so a
/// seed reproduces bit-identical experiments on any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  /// Independent stream `stream` of the generator family rooted at `master`.
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix64(master, stream));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }
  double uniform() { return to_unit(engine_()); }
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer with the low `bits` bits random.
  std::uint64_t bits(int bits) {
    if (bits <= 0) return 0;
    std::uint64_t w = engine_();
    return bits >= 64 ? w : (w & ((std::uint64_t{1} << bits) - 1));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace uccsim
