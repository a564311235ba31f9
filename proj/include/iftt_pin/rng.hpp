#pragma once

#include <cstdint>
#include <initializer_list>

namespace iftt {

/// SplitMix64 (Steele, Lea, Flood 2014). The state advances by the golden
/// gamma 0x9E3779B97F4A7C15 and each output is the state passed through the
/// Stafford variant-13 finalizer. Chosen because it is fully specified by
/// those two constants, so every platform reproduces the same stream.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream keyed by a seed and a path of indices, e.g.
    // (seed, phase, click). Each component is absorbed through the finalizer.
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next();

    // Uniform integer in [0, bound) by rejection of the biased tail.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) from the top 53 bits.
    double unit();

    bool chance(double p) { return unit() < p; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next(); }

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace iftt
