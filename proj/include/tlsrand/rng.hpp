#pragma once

#include <cstdint>

#include "tlsrand/mat.hpp"

namespace tlsrand {

/// Seed for the counter-based sample streams. Equal seeds give bit-identical
/// streams; derived streams are independent for distinct tags.
struct RngSeed {
    std::uint64_t value = 0;
};

/// Splittable counter-based generator: sample i of a stream is a pure
/// function of (seed, i), so draws do not depend on traversal order and
/// sub-streams can be split off without shared state.
class CounterRng {
  public:
    explicit CounterRng(RngSeed seed) : seed_(seed.value) {}

    CounterRng derive(std::uint64_t tag) const;

    /// Uniform double in [0, 1) for counter i.
    double uniform_at(std::uint64_t i) const;
    /// Standard normal via Box-Muller (cosine branch) for counter i.
    double normal_at(std::uint64_t i) const;

    /// Sequential draws.
    double next_uniform() { return uniform_at(counter_++); }
    double next_normal() { return normal_at(counter_++); }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// i.i.d. standard normal entries, deterministic in the seed.
Mat gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed);
/// i.i.d. uniform entries on [-1, 1], deterministic in the seed.
Mat uniform_pm1_matrix(std::size_t rows, std::size_t cols, RngSeed seed);

Vec gaussian_vector(std::size_t n, RngSeed seed);

/// Deterministic sub-seed for tagged sub-streams.
RngSeed derive_seed(RngSeed seed, std::uint64_t tag);

}  // namespace tlsrand
