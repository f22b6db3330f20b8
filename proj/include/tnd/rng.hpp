#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "tnd/errors.hpp"

namespace tnd {

// splitmix64 finalizer (Steele, Lea, Flood 2014). The k-th value of the
// stream started at state s is splitmix64_mix(s + (k+1) * increment), which
// gives O(1) random access into the stream.
inline constexpr std::uint64_t kSeedStreamIncrement = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Reproducibility contract: derived seed #index for a given master seed.
// Replicate i of a Monte Carlo run uses derive_seed(master, i); sweep grid
// point k uses derive_seed(base_seed, k) as its own master.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return splitmix64_mix(master + (index + 1) * kSeedStreamIncrement);
}

// Deterministic draw source. mt19937_64 output is bit-specified by the
// standard, and all sampling below is built from raw engine output only, so
// results are reproducible across platforms and toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0,1) with 53 random bits.
    double uniform01()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Binomial(n, p) by Bernoulli summation: exact distribution, no
    // implementation-defined shortcuts. n arrives as a real count and must
    // be a nonnegative integer.
    double binomial(double n, double p)
    {
        if (!(n >= 0.0) || std::floor(n) != n)
            fail(ErrorKind::invalid_input,
                 "binomial draw requires a nonnegative integral count, got " + std::to_string(n));
        if (!(p >= 0.0 && p <= 1.0))
            fail(ErrorKind::invalid_input,
                 "binomial draw requires a probability in [0,1], got " + std::to_string(p));
        const auto trials = static_cast<std::uint64_t>(n);
        if (p == 0.0)
            return 0.0;
        if (p == 1.0)
            return n;
        std::uint64_t successes = 0;
        for (std::uint64_t i = 0; i < trials; ++i)
            successes += uniform01() < p ? 1 : 0;
        return static_cast<double>(successes);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace tnd
