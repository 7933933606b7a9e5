#pragma once

#include <cstdint>
#include <random>

namespace zeno {

/// Engine used for every Monte Carlo draw. std::mt19937_64 and std::seed_seq
/// have fully specified output, so streams are reproducible across platforms.
using random_stream = std::mt19937_64;

/// Independent stream for trajectory `index` of a run seeded with `seed`.
inline random_stream make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return random_stream(seq);
}

/// Uniform double in [0, 1) built from the top 53 bits of one engine output.
/// std::uniform_real_distribution is avoided since its algorithm is
/// implementation-defined.
inline double uniform01(random_stream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace zeno
