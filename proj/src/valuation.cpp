#include "polypack/valuation.hpp"

#include "polypack/rng.hpp"

namespace polypack {

namespace {
constexpr std::uint32_t kNoiseTag = 0x4E4F;
}

std::string_view to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Area: return "area";
        case ValueKind::ConvexHullArea: return "convex-hull-area";
        case ValueKind::RotatedBoundingBox: return "rotated-bounding-box";
        case ValueKind::Uniform: return "uniform";
    }
    return "area";
}

ValueKind parse_value_kind(std::string_view text) {
    if (text == "area") return ValueKind::Area;
    if (text == "hull" || text == "convex-hull-area") return ValueKind::ConvexHullArea;
    if (text == "bbox" || text == "rotated-bounding-box") return ValueKind::RotatedBoundingBox;
    if (text == "uniform") return ValueKind::Uniform;
    throw std::invalid_argument("unknown value function: " + std::string(text));
}

std::string ValueSpec::describe() const {
    std::string out(to_string(kind));
    if (noise != 0) out += "*noise(" + to_exact_string(noise) + ")";
    if (global_scale != 1) out += "*" + to_exact_string(global_scale);
    return out;
}

Rational base_value(const Polygon& poly, ValueKind kind) {
    switch (kind) {
        case ValueKind::Area: return poly.area();
        case ValueKind::ConvexHullArea: return convex_hull(poly.vertices()).area();
        case ValueKind::RotatedBoundingBox: return min_area_bounding_rect(poly);
        case ValueKind::Uniform: return 1;
    }
    return 1;
}

Instance assign_values(const Instance& instance, const ValueSpec& spec) {
    if (spec.noise < 0 || spec.noise >= 1) throw std::invalid_argument("noise amplitude must lie in [0, 1)");
    if (spec.global_scale <= 0) throw std::invalid_argument("global scale must be positive");

    Instance out = instance;
    BigInt sum = 0;
    for (std::size_t i = 0; i < out.items.size(); ++i) {
        Rational value = spec.global_scale * base_value(out.items[i].polygon, spec.kind);
        if (spec.noise != 0) {
            Rng rng(spec.seed, stream_id(kNoiseTag, i));
            value *= rng.uniform_rational(1 - spec.noise, 1 + spec.noise);
        }
        BigInt rounded = round_half_up(value);
        if (rounded < 1) rounded = 1;
        sum += rounded;
        if (sum >= kValueSumLimit) {
            throw ValueOverflow("sum of item values would reach 2^40; lower the global scale");
        }
        out.items[i].value = rounded.convert_to<std::int64_t>();
    }
    if (!out.meta) out.meta = InstanceMeta{"external", spec.seed, {}};
    out.meta->value_function = spec.reveal ? spec.describe() : std::string();
    return out;
}

}  // namespace polypack
