#pragma once

#include <cstdint>

#include "polypack/rational.hpp"

namespace polypack {

// Counter-based generator: output k of stream s under seed is
//   mix64(key(seed, s) + (k + 1) * 0x9E3779B97F4A7C15)
// with mix64 the SplitMix64 finalizer (shifts 30/27/31, multipliers
// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Streams are independent, so
// per-item draws do not depend on how many values earlier items consumed.
class Rng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(mix64(seed) ^ (stream * kGamma + 0x632BE59BD9B4E019ULL))) {}

    constexpr std::uint64_t next() { return mix64(key_ + (++counter_) * kGamma); }

    // Uniform integer in [lo, hi] by rejection; no modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

    bool coin() { return (next() >> 63) != 0; }

    // True with probability p (exact for p with denominator dividing 2^32 * den(p)).
    bool bernoulli(const Rational& p);

    // Uniform on the grid {lo + (hi - lo) * k / 2^32 : 0 <= k < 2^32}.
    Rational uniform_rational(const Rational& lo, const Rational& hi);

    double uniform_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Stream ids for independent draws; tag keeps families apart.
constexpr std::uint64_t stream_id(std::uint32_t tag, std::uint64_t index) {
    return (static_cast<std::uint64_t>(tag) << 40) ^ index;
}

}  // namespace polypack
