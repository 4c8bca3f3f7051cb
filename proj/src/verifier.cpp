#include "polypack/verifier.hpp"

#include <algorithm>

#include "json.hpp"

namespace polypack {

namespace {

VerifyReport fail(Violation::Kind kind, std::vector<std::size_t> items, std::size_t tests = 0) {
    VerifyReport r;
    r.valid = false;
    r.violation = Violation{kind, std::move(items)};
    r.pair_tests = tests;
    return r;
}

// Shared prefix of both verifiers: name, index range, duplicates and
// containment. Fills `by_item` with the offset of every placed item.
std::optional<VerifyReport> structural_checks(const Instance& instance, const Solution& solution,
                                              std::vector<std::optional<Point>>& by_item) {
    if (solution.instance_name != instance.name) {
        throw InstanceMismatch("solution is for instance '" + solution.instance_name + "', not '" + instance.name + "'");
    }
    const std::size_t n = instance.items.size();
    std::optional<std::size_t> out_of_range;
    for (const Placement& p : solution.placements) {
        if (p.item_index >= n && (!out_of_range || p.item_index < *out_of_range)) out_of_range = p.item_index;
    }
    if (out_of_range) return fail(Violation::Kind::IndexOutOfRange, {*out_of_range});

    by_item.assign(n, std::nullopt);
    std::optional<std::size_t> duplicate;
    for (const Placement& p : solution.placements) {
        if (by_item[p.item_index]) {
            if (!duplicate || p.item_index < *duplicate) duplicate = p.item_index;
        } else {
            by_item[p.item_index] = p.offset;
        }
    }
    if (duplicate) return fail(Violation::Kind::DuplicateItem, {*duplicate});

    for (std::size_t i = 0; i < n; ++i) {
        if (by_item[i] && !contained_in_convex(instance.container, instance.items[i].polygon, *by_item[i])) {
            return fail(Violation::Kind::NotContained, {i});
        }
    }
    return std::nullopt;
}

std::int64_t packed_value(const Instance& instance, const std::vector<std::optional<Point>>& by_item) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < by_item.size(); ++i)
        if (by_item[i]) total += instance.items[i].value;
    return total;
}

}  // namespace

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::DuplicateItem: return "duplicate_item";
        case Violation::Kind::IndexOutOfRange: return "index_out_of_range";
        case Violation::Kind::NotContained: return "not_contained";
        case Violation::Kind::Overlap: return "overlap";
    }
    return "overlap";
}

QuadTree build_index(const Instance& instance, const Solution& solution) {
    QuadTree tree(instance.container.bounds());
    for (const Placement& p : solution.placements) {
        tree.insert(p.item_index, instance.items[p.item_index].polygon.bounds().translated(p.offset));
    }
    return tree;
}

VerifyReport verify(const Instance& instance, const Solution& solution) {
    std::vector<std::optional<Point>> by_item;
    if (auto bad = structural_checks(instance, solution, by_item)) return *bad;

    QuadTree tree = build_index(instance, solution);
    std::size_t tests = 0;
    // Candidate pairs come back sorted, so the first overlap is the lowest pair.
    for (auto [a, b] : tree.candidate_pairs()) {
        ++tests;
        if (interiors_overlap(instance.items[a].polygon, *by_item[a], instance.items[b].polygon, *by_item[b])) {
            return fail(Violation::Kind::Overlap, {a, b}, tests);
        }
    }
    VerifyReport r;
    r.packed_value = packed_value(instance, by_item);
    r.pair_tests = tests;
    return r;
}

VerifyReport verify_brute_force(const Instance& instance, const Solution& solution) {
    std::vector<std::optional<Point>> by_item;
    if (auto bad = structural_checks(instance, solution, by_item)) return *bad;

    std::size_t tests = 0;
    const std::size_t n = by_item.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (!by_item[a]) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!by_item[b]) continue;
            ++tests;
            if (interiors_overlap(instance.items[a].polygon, *by_item[a], instance.items[b].polygon, *by_item[b])) {
                return fail(Violation::Kind::Overlap, {a, b}, tests);
            }
        }
    }
    VerifyReport r;
    r.packed_value = packed_value(instance, by_item);
    r.pair_tests = tests;
    return r;
}

std::string report_to_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["valid"] = report.valid;
    j["packed_value"] = report.packed_value;
    if (report.violation) {
        j["violation"] = {{"kind", std::string(to_string(report.violation->kind))},
                          {"item_indices", report.violation->item_indices}};
    } else {
        j["violation"] = nullptr;
    }
    j["pair_tests"] = report.pair_tests;
    return j.dump() + "\n";
}

}  // namespace polypack
