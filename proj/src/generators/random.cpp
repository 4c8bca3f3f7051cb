#include <algorithm>
#include <optional>

#include "polypack/generators.hpp"

namespace polypack {

namespace {

constexpr std::uint32_t kRandomItemTag = 0x52;
constexpr std::uint32_t kRandomContainerTag = 0x43;
constexpr int kMaxAttempts = 1000;

Wide dist2(Point a, Point b) { return dot(a - b, a - b); }

bool closed_cross(Point a, Point b, Point c, Point d) {
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    auto on = [](Point p, Point q, Point r) {
        return orientation(p, q, r) == 0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

// Nearest-neighbour tour through the cloud, then 2-opt reversals until no
// two non-adjacent edges meet. Each reversal strictly shortens the tour, so
// the loop ends; leftover collinear degeneracies are caught by the caller.
std::vector<Point> concave_ring(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;

    std::vector<Point> tour;
    tour.reserve(n);
    std::vector<char> used(n, 0);
    std::size_t at = 0;
    used[0] = 1;
    tour.push_back(pts[0]);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (best == n || dist2(pts[at], pts[j]) < dist2(pts[at], pts[best])) best = j;
        }
        used[best] = 1;
        tour.push_back(pts[best]);
        at = best;
    }

    for (std::size_t guard = 0; guard < 50 * n * n; ++guard) {
        bool fixed = false;
        for (std::size_t i = 0; i < n && !fixed; ++i) {
            for (std::size_t j = i + 2; j < n && !fixed; ++j) {
                if (i == 0 && j == n - 1) continue;
                if (closed_cross(tour[i], tour[i + 1], tour[j], tour[(j + 1) % n])) {
                    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 tour.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    fixed = true;
                }
            }
        }
        if (!fixed) break;
    }
    return tour;
}

Polygon random_item(const GenConfig& cfg, std::size_t index) {
    Rng rng(cfg.seed, stream_id(kRandomItemTag, index));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto count = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(cfg.points_min), static_cast<std::int64_t>(cfg.points_max)));
        Coord w = rng.uniform_int(cfg.item_size_min, cfg.item_size_max);
        Coord h = rng.uniform_int(cfg.item_size_min, cfg.item_size_max);
        std::vector<Point> cloud;
        cloud.reserve(count);
        for (std::size_t k = 0; k < count; ++k) cloud.push_back({rng.uniform_int(0, w), rng.uniform_int(0, h)});
        bool convex = rng.bernoulli(cfg.convexity_ratio);
        try {
            Polygon poly = convex ? convex_hull(cloud) : Polygon::normalized(concave_ring(std::move(cloud)));
            std::vector<Point> ring(poly.vertices().begin(), poly.vertices().end());
            Box b = poly.bounds();
            for (Point& p : ring) p = p - Point{b.min_x, b.min_y};
            return Polygon::from_vertices(std::move(ring));
        } catch (const GeometryError&) {
        }
    }
    throw GenerationFailed("could not produce a simple random item after 1000 attempts");
}

Polygon random_container(const GenConfig& cfg, const Rational& target_area, Coord min_side) {
    Rng rng(cfg.seed, stream_id(kRandomContainerTag, 0));
    constexpr std::int64_t kUnit = 1 << 16;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto count = static_cast<std::size_t>(rng.uniform_int(6, 16));
        std::vector<Point> unit;
        for (std::size_t k = 0; k < count; ++k) unit.push_back({rng.uniform_int(0, kUnit), rng.uniform_int(0, kUnit)});
        std::optional<Polygon> hull;
        try {
            hull = convex_hull(unit);
        } catch (const GeometryError&) {
            continue;
        }
        const Polygon& shape = *hull;
        if (shape.size() < 4 || shape.area() * 4 < Rational(kUnit) * kUnit) continue;  // want a roomy shape

        // Scale so area(scale * shape / 2^16) ~ target.
        BigInt scale = boost::multiprecision::sqrt(floor_of(target_area * kUnit * kUnit / shape.area()));
        Coord side = std::max(scale.convert_to<Coord>(), min_side);
        std::vector<Point> scaled;
        for (Point p : shape.vertices()) {
            scaled.push_back({static_cast<Coord>((static_cast<Wide>(p.x) * side + kUnit / 2) / kUnit),
                              static_cast<Coord>((static_cast<Wide>(p.y) * side + kUnit / 2) / kUnit)});
        }
        try {
            return convex_hull(scaled);
        } catch (const GeometryError&) {
        }
    }
    throw GenerationFailed("could not produce a random container");
}

}  // namespace

Instance gen_random(const GenConfig& cfg) {
    cfg.validate(Family::Random);
    std::string name = cfg.name.empty() ? "random_s" + std::to_string(cfg.seed) + "_n" + std::to_string(cfg.n_target) : cfg.name;

    Rational total_area = 0;
    std::vector<Item> items;
    items.reserve(cfg.n_target);
    for (std::size_t i = 0; i < cfg.n_target; ++i) {
        Polygon poly = random_item(cfg, i);
        total_area += poly.area();
        items.push_back(Item{std::move(poly), 1});
    }
    Instance inst{std::move(name), random_container(cfg, total_area / cfg.area_multiple_t, 2 * cfg.item_size_max),
                  std::move(items), InstanceMeta{"random", cfg.seed, {}}};

    ValueSpec spec = cfg.values;
    if (spec.seed == 0) spec.seed = cfg.seed;
    return assign_values(inst, spec);
}

}  // namespace polypack
