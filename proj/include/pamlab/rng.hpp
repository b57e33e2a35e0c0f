#pragma once

#include <cstdint>
#include <random>

namespace pamlab {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of replicate r derived from a base seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t r)
{
    return mix64(seed ^ (r * 0x9E3779B97F4A7C15ULL));
}

// Variate generation on top of mt19937_64. All transforms are implemented here
// so that streams are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on the open interval (0,1).
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    double exponential();
    double normal();
    double gamma(double shape);
    double beta(double a, double b);
    std::uint64_t poisson(double mu);

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pamlab
