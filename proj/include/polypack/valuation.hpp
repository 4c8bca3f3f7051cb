#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "polypack/instance.hpp"
#include "polypack/rational.hpp"

namespace polypack {

enum class ValueKind { Area, ConvexHullArea, RotatedBoundingBox, Uniform };

std::string_view to_string(ValueKind kind);
// Accepts "area", "hull", "convex-hull-area", "bbox", "rotated-bounding-box", "uniform".
ValueKind parse_value_kind(std::string_view text);

struct ValueSpec {
    ValueKind kind = ValueKind::Area;
    // Multiplicative noise factor is uniform on [1 - noise, 1 + noise].
    Rational noise = Rational(1, 10);
    std::uint64_t seed = 0;
    Rational global_scale = 1;
    // When false the value function is left out of the instance meta.
    bool reveal = true;

    std::string describe() const;
};

class ValueOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact base quantity before scale and noise.
Rational base_value(const Polygon& poly, ValueKind kind);

// value_i = max(1, round(global_scale * base_i * noise_i)); noise_i drawn from
// an independent stream per item. Throws ValueOverflow when the sum would
// reach 2^40 and std::invalid_argument on a malformed spec.
Instance assign_values(const Instance& instance, const ValueSpec& spec);

}  // namespace polypack
