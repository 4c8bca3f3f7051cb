#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "polypack/geom.hpp"
#include "polypack/instance.hpp"

namespace testing_support {

using polypack::Coord;
using polypack::Point;
using polypack::Polygon;
using Ring = std::vector<Point>;

inline Polygon poly(std::vector<Point> pts) { return Polygon::from_vertices(std::move(pts)); }

inline Polygon rect(Coord x0, Coord y0, Coord x1, Coord y1) { return poly({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}); }

// Star-shaped ring around c with k vertices; usually simple, not always.
inline Ring random_star(std::mt19937_64& rng, int k, double radius, Point c = {0, 0}) {
    std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), rad(radius * 0.2, radius);
    std::vector<std::pair<double, double>> polar;
    for (int i = 0; i < k; ++i) polar.emplace_back(ang(rng), rad(rng));
    std::sort(polar.begin(), polar.end());
    Ring r;
    for (auto [a, d] : polar) {
        r.push_back({c.x + static_cast<Coord>(std::lround(d * std::cos(a))), c.y + static_cast<Coord>(std::lround(d * std::sin(a)))});
    }
    return r;
}

// Simple CCW polygon with k vertices, resampled until the oracle accepts it.
inline Polygon random_simple(std::mt19937_64& rng, int k, double radius, Point c = {0, 0}) {
    while (true) {
        Ring r = random_star(rng, k, radius, c);
        if (oracle::is_simple(r) && oracle::twice_area_decimal(r)[0] != '-' && oracle::twice_area_decimal(r) != "0") {
            return Polygon::from_vertices(r);
        }
    }
}

inline Polygon random_convex(std::mt19937_64& rng, int k, Coord span) {
    std::uniform_int_distribution<Coord> d(0, span);
    while (true) {
        std::vector<Point> pts;
        for (int i = 0; i < k; ++i) pts.push_back({d(rng), d(rng)});
        try {
            return polypack::convex_hull(pts);
        } catch (const polypack::GeometryError&) {
        }
    }
}

inline polypack::Instance make_instance(std::string name, Polygon container, std::vector<Polygon> items,
                                        std::vector<std::int64_t> values = {}) {
    std::vector<polypack::Item> out;
    for (std::size_t i = 0; i < items.size(); ++i) out.push_back({items[i], values.empty() ? 1 : values[i]});
    return polypack::Instance{std::move(name), std::move(container), std::move(out), std::nullopt};
}

// Placements biased towards contact: offsets snap to a coarse grid inside the
// container box, some items are dropped, and with small probability an index
// is repeated or points past the end.
inline polypack::Solution random_solution(const polypack::Instance& inst, std::mt19937_64& rng, bool adversarial) {
    polypack::Solution sol;
    sol.instance_name = inst.name;
    const polypack::Box cb = inst.container.bounds();
    std::uniform_real_distribution<double> u(0, 1);
    Coord cell = 1;
    for (const auto& it : inst.items) cell = std::max({cell, it.polygon.bounds().width(), it.polygon.bounds().height()});
    cell = std::max<Coord>(1, cell / (1 + static_cast<Coord>(rng() % 3)));
    const double keep = 0.2 + 0.8 * u(rng);
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (u(rng) > keep) continue;
        const polypack::Box b = inst.items[i].polygon.bounds();
        Coord span_x = std::max<Coord>(1, (cb.width() - b.width()) / cell + 1);
        Coord span_y = std::max<Coord>(1, (cb.height() - b.height()) / cell + 1);
        Point at{cb.min_x + static_cast<Coord>(rng() % static_cast<std::uint64_t>(span_x)) * cell,
                 cb.min_y + static_cast<Coord>(rng() % static_cast<std::uint64_t>(span_y)) * cell};
        if (u(rng) < 0.1) at = {cb.max_x - b.width(), cb.min_y + static_cast<Coord>(rng() % static_cast<std::uint64_t>(std::max<Coord>(1, cb.height())))};
        if (u(rng) < 0.05) at.x += 1;  // nudge across a boundary
        sol.placements.push_back({i, at - Point{b.min_x, b.min_y}});
    }
    std::shuffle(sol.placements.begin(), sol.placements.end(), rng);
    if (adversarial && !sol.placements.empty()) {
        const double r = u(rng);
        if (r < 0.4) {
            auto p = sol.placements[rng() % sol.placements.size()];
            if (u(rng) < 0.5) p.offset = p.offset + Point{1, 0};
            sol.placements.insert(sol.placements.begin() + static_cast<long>(rng() % sol.placements.size()), p);
        } else if (r < 0.6) {
            sol.placements.push_back({inst.items.size() + rng() % 3, {0, 0}});
        }
    }
    return sol;
}

// Drop placements until the solution verifies, keeping the lowest indices.
inline polypack::Solution repair_greedily(const polypack::Instance& inst, const polypack::Solution& sol) {
    polypack::Solution out;
    out.instance_name = sol.instance_name;
    for (const auto& p : sol.placements) {
        if (p.item_index >= inst.items.size()) continue;
        const auto& item = inst.items[p.item_index].polygon;
        if (!polypack::contained_in_convex(inst.container, item, p.offset)) continue;
        bool ok = true;
        for (const auto& q : out.placements) {
            if (q.item_index == p.item_index ||
                polypack::interiors_overlap(item, p.offset, inst.items[q.item_index].polygon, q.offset)) {
                ok = false;
                break;
            }
        }
        if (ok) out.placements.push_back(p);
    }
    return out;
}

// Squares with total area at most half the container, one of them possibly
// close to the largest side that still respects the bound.
inline polypack::Instance moon_moser_set(std::mt19937_64& rng, Coord side) {
    std::vector<Polygon> items;
    const std::int64_t budget = side * side / 2;
    std::int64_t used = 0;
    std::uniform_real_distribution<double> u(0, 1);
    const double max_frac = 0.05 + 0.65 * u(rng);
    for (int tries = 0; tries < 400; ++tries) {
        Coord s = 1 + static_cast<Coord>(u(rng) * u(rng) * max_frac * static_cast<double>(side));
        if (used + s * s > budget) continue;
        used += s * s;
        items.push_back(rect(0, 0, s, s));
    }
    return make_instance("mm", rect(0, 0, side, side), items);
}

}  // namespace testing_support
