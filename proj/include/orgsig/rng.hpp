#pragma once

#include <cstdint>

namespace orgsig {

/// Counter-based seed derivation: mix_seed(master, k) is the (k+1)-th output
/// of a SplitMix64 generator seeded with `master`. Used to give every sample
/// in an experiment its own independent stream regardless of worker count.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// xoshiro256++ with SplitMix64 seeding. Chosen over std::mt19937 so the
/// generated bit stream is identical on every platform and standard library;
/// std::uniform_* distributions are implementation-defined and would break
/// cross-platform reproducibility of the graph corpus.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal via Box-Muller on next_double() pairs.
  double next_normal();

  /// Uniform integer in [0, bound) by rejection, bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace orgsig
