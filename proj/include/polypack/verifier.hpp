#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/instance.hpp"
#include "polypack/quadtree.hpp"

namespace polypack {

class InstanceMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Violation {
    enum class Kind { DuplicateItem, IndexOutOfRange, NotContained, Overlap };

    Kind kind = Kind::Overlap;
    std::vector<std::size_t> item_indices;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind kind);

struct VerifyReport {
    bool valid = true;
    std::int64_t packed_value = 0;
    std::optional<Violation> violation;
    // Exact pair tests run in the narrow phase.
    std::size_t pair_tests = 0;
};

// Quad tree over the translated bounding boxes, keyed by item index.
// Placements must already be in range and unique.
QuadTree build_index(const Instance& instance, const Solution& solution);

// Checks run in a fixed order: index range, duplicates, containment (by
// item index), then overlap (lowest pair first), so the reported violation
// does not depend on placement order. Throws InstanceMismatch.
VerifyReport verify(const Instance& instance, const Solution& solution);

// Same checks without the spatial index; every pair is tested.
VerifyReport verify_brute_force(const Instance& instance, const Solution& solution);

std::string report_to_json(const VerifyReport& report);

}  // namespace polypack
