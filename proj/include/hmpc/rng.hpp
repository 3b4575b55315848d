#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace hmpc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream (xoshiro256++) with keyed substream
/// derivation. Substreams are derived from the stream's seed, never from its
/// position, so a derived stream does not depend on how much the parent has
/// already consumed. Callers must use distinct keys for parallel branches.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s = splitmix64(s);
      word = s;
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&&) = default;
  Rng& operator=(Rng&&) = default;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform index in {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo) + 1));
  }

  /// Number of trials to the first success, support {1, 2, ...}, mean 1/p.
  /// Consumes exactly one draw.
  int geometric(double p) {
    if (!(p > 0.0)) throw std::invalid_argument("geometric: p must be > 0");
    if (p >= 1.0) return 1;
    const double u = uniform01();
    const double len = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(len < static_cast<double>(std::numeric_limits<int>::max() / 2)))
      return std::numeric_limits<int>::max() / 2;
    return static_cast<int>(len);
  }

  Rng derive(std::uint64_t key) const { return Rng(derive_seed(seed_, key)); }

  Rng derive(std::uint64_t k1, std::uint64_t k2) const {
    return Rng(derive_seed(seed_, k1, k2));
  }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL + splitmix64(key)));
  }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k1,
                                   std::uint64_t k2) {
    return derive_seed(derive_seed(seed, k1), k2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t state_[4];
};

}  // namespace hmpc
