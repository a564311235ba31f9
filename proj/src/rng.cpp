#include "iftt_pin/rng.hpp"

#include <stdexcept>

namespace iftt {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t s = mix64(seed + kGamma);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p + kGamma));
    return Rng(s);
}

std::uint64_t Rng::next()
{
    state_ += kGamma;
    return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    // Largest multiple of bound representable; values at or above it are redrawn.
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % bound;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace iftt
