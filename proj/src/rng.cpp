#include "polypack/rng.hpp"

#include <stdexcept>

namespace polypack {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
}

bool Rng::bernoulli(const Rational& p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    Rational u(BigInt(next() >> 32), BigInt(1) << 32);
    return u < p;
}

Rational Rng::uniform_rational(const Rational& lo, const Rational& hi) {
    Rational u(BigInt(next() >> 32), BigInt(1) << 32);
    return lo + (hi - lo) * u;
}

}  // namespace polypack
