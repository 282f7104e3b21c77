#include "tlsrand/rng.hpp"

#include <cmath>

namespace tlsrand {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; a strong 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t sample_bits(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed + (counter + 1) * kGamma);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

CounterRng CounterRng::derive(std::uint64_t tag) const {
    return CounterRng(RngSeed{mix64(seed_ ^ mix64(tag + 0x5D4A9C31E7F08B6DULL))});
}

double CounterRng::uniform_at(std::uint64_t i) const {
    return static_cast<double>(sample_bits(seed_, i) >> 11) * 0x1.0p-53;
}

double CounterRng::normal_at(std::uint64_t i) const {
    // Two uniforms per normal keeps entry i independent of any other entry.
    const std::uint64_t bits1 = sample_bits(seed_, 2 * i);
    const std::uint64_t bits2 = sample_bits(seed_, 2 * i + 1);
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((bits1 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(bits2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

RngSeed derive_seed(RngSeed seed, std::uint64_t tag) {
    return RngSeed{mix64(seed.value ^ mix64(tag + 0x5D4A9C31E7F08B6DULL))};
}

Mat gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed) {
    if (rows < 1 || cols < 1)
        fail(ErrorCode::InvalidArgument, "gaussian_matrix needs rows >= 1 and cols >= 1");
    CounterRng rng(seed);
    Mat m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.normal_at(i);
    return m;
}

Mat uniform_pm1_matrix(std::size_t rows, std::size_t cols, RngSeed seed) {
    if (rows < 1 || cols < 1)
        fail(ErrorCode::InvalidArgument, "uniform_pm1_matrix needs rows >= 1 and cols >= 1");
    CounterRng rng(seed);
    Mat m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = 2.0 * rng.uniform_at(i) - 1.0;
    return m;
}

Vec gaussian_vector(std::size_t n, RngSeed seed) {
    return column_of(gaussian_matrix(n, 1, seed), 0);
}

}  // namespace tlsrand
