#pragma once

#include <cstdint>
#include <string_view>

namespace phasebound {

/// Counter-style splitmix64 generator. Cheap, seedable, and fully specified,
/// so batches are bit-reproducible across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Derives an independent child stream from (seed, tag, index). Operations
/// tag their streams so that parallel sweeps reproduce regardless of
/// scheduling and no two operations share a stream by accident.
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view tag,
                                   std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the tag bytes
  for (const char c : tag) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ull;
  }
  Rng mix(seed ^ h);
  mix.next_u64();
  Rng out(mix.next_u64() ^ (index * 0x9e3779b97f4a7c15ull));
  return out.next_u64();
}

}  // namespace phasebound
