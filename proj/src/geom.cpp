#include "polypack/geom.hpp"

#include <algorithm>
#include <numeric>

namespace polypack {

namespace {

Wide abs_wide(Wide v) { return v < 0 ? -v : v; }

BigInt to_big(Wide v) {
    // cpp_int has no __int128 constructor on every Boost version; split in halves.
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<std::uint64_t>(u >> 64);
    BigInt lo = static_cast<std::uint64_t>(u);
    BigInt out = (hi << 64) | lo;
    return negative ? BigInt(-out) : out;
}

// p lies on the closed segment [a, b].
bool on_segment(Point a, Point b, Point p) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
           (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

// Crossing at a single point interior to both segments.
bool properly_cross(Point a, Point b, Point c, Point d) {
    return orientation(a, b, c) * orientation(a, b, d) < 0 && orientation(c, d, a) * orientation(c, d, b) < 0;
}

Box segment_box(Point a, Point b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

// Does some portion of the boundary of `p` lie in the interior of `q`, or run
// along q's boundary with both interiors on the same side? Assumes no proper
// crossings between the two boundaries, so every break point is a vertex.
bool boundary_enters(std::span<const Point> p, std::span<const Point> q, const Box& q_box) {
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    std::vector<Point> breaks;
    for (std::size_t i = 0; i < n; ++i) {
        Point a = p[i];
        Point b = p[(i + 1) % n];
        if (!closed_intersect(segment_box(a, b), q_box)) continue;
        Point dir = b - a;
        breaks.clear();
        breaks.push_back(a);
        breaks.push_back(b);
        for (Point v : q) {
            if (v != a && v != b && on_segment(a, b, v)) breaks.push_back(v);
        }
        std::sort(breaks.begin(), breaks.end(), [&](Point u, Point w) { return dot(u - a, dir) < dot(w - a, dir); });
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            // Coordinates are pre-doubled, so midpoints stay integral.
            Point mid{(breaks[k].x + breaks[k + 1].x) / 2, (breaks[k].y + breaks[k + 1].y) / 2};
            Location loc = locate(mid, q);
            if (loc == Location::Inside) return true;
            if (loc == Location::Boundary) {
                for (std::size_t j = 0; j < m; ++j) {
                    Point c = q[j];
                    Point d = q[(j + 1) % m];
                    if (on_segment(c, d, mid)) {
                        // Both rings are CCW: interiors lie to the left of each edge.
                        if (dot(d - c, dir) > 0) return true;
                        break;
                    }
                }
            }
        }
    }
    return false;
}

std::vector<Point> doubled(std::span<const Point> ring, Point t) {
    std::vector<Point> out;
    out.reserve(ring.size());
    for (Point v : ring) out.push_back({2 * (v.x + t.x), 2 * (v.y + t.y)});
    return out;
}

}  // namespace

bool within_coord_limit(Point p) {
    return p.x >= -kCoordLimit && p.x <= kCoordLimit && p.y >= -kCoordLimit && p.y <= kCoordLimit;
}

Box bounding_box(std::span<const Point> points) {
    if (points.empty()) return {};
    Box box{points[0].x, points[0].y, points[0].x, points[0].y};
    for (Point p : points) {
        box.min_x = std::min(box.min_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_x = std::max(box.max_x, p.x);
        box.max_y = std::max(box.max_y, p.y);
    }
    return box;
}

Wide twice_signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0;
    Wide sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += cross(ring[i], ring[(i + 1) % n]);
    }
    return sum;
}

Rational signed_area(std::span<const Point> ring) {
    return Rational(to_big(twice_signed_area(ring)), BigInt(2));
}

bool is_simple(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;

    std::vector<Point> sorted(ring.begin(), ring.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

    // Sweep-and-prune: edges ordered by min x, compared only while x-ranges overlap.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto min_x = [&](std::size_t e) { return std::min(ring[e].x, ring[(e + 1) % n].x); };
    auto max_x = [&](std::size_t e) { return std::max(ring[e].x, ring[(e + 1) % n].x); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return min_x(a) < min_x(b); });

    for (std::size_t oi = 0; oi < n; ++oi) {
        const std::size_t e = order[oi];
        const Coord reach = max_x(e);
        for (std::size_t oj = oi + 1; oj < n && min_x(order[oj]) <= reach; ++oj) {
            const std::size_t f = order[oj];
            Point a = ring[e], b = ring[(e + 1) % n];
            Point c = ring[f], d = ring[(f + 1) % n];
            if ((e + 1) % n == f || (f + 1) % n == e) {
                // Adjacent edges share one vertex; they may only fold back onto each other.
                Point prev, shared, next;
                if ((e + 1) % n == f) {
                    prev = a, shared = b, next = d;
                } else {
                    prev = c, shared = d, next = b;
                }
                if (orientation(prev, shared, next) == 0 && dot(prev - shared, next - shared) > 0) return false;
                continue;
            }
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

bool is_convex(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    bool any_turn = false;
    for (std::size_t i = 0; i < n; ++i) {
        int o = orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
        if (o < 0) return false;
        any_turn = any_turn || o > 0;
    }
    return any_turn;
}

Polygon Polygon::from_vertices(std::vector<Point> vertices) {
    if (vertices.size() < 3) {
        throw GeometryError(GeometryError::Kind::TooFewVertices, "polygon needs at least 3 vertices");
    }
    for (Point p : vertices) {
        if (!within_coord_limit(p)) {
            throw GeometryError(GeometryError::Kind::CoordinateOverflow, "coordinate exceeds 2^50");
        }
    }
    if (!is_simple(vertices)) {
        throw GeometryError(GeometryError::Kind::NotSimple, "polygon is not simple");
    }
    Wide area2 = twice_signed_area(vertices);
    if (area2 <= 0) {
        throw GeometryError(GeometryError::Kind::NotCounterclockwise, "polygon is not counterclockwise");
    }
    Box box = bounding_box(vertices);
    return Polygon(std::move(vertices), box, area2);
}

Polygon Polygon::normalized(std::vector<Point> vertices) {
    if (vertices.size() >= 3 && twice_signed_area(vertices) < 0) {
        std::reverse(vertices.begin(), vertices.end());
    }
    return from_vertices(std::move(vertices));
}

Rational Polygon::area() const {
    return Rational(to_big(twice_area_), BigInt(2));
}

Polygon convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        throw GeometryError(GeometryError::Kind::AllCollinear, "hull input has no 2D extent");
    }
    // Monotone chain in (y, x) order; strict turns only.
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (Point p : pts) {
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        throw GeometryError(GeometryError::Kind::AllCollinear, "hull input has no 2D extent");
    }
    return Polygon::from_vertices(std::move(hull));
}

MinAreaRect min_area_rect(const Polygon& poly) {
    Polygon hull = convex_hull(poly.vertices());
    auto h = hull.vertices();
    const std::size_t m = h.size();
    auto at = [&](std::size_t i) { return h[i % m]; };

    std::size_t right = 1, top = 1, left = 1;
    bool have_best = false;
    BigInt best_num, best_den;
    Wide best_w = 0, best_h = 0;

    for (std::size_t i = 0; i < m; ++i) {
        Point base = h[i];
        Point e = at(i + 1) - base;
        // Indices only ever move forward around the hull.
        right = std::max(right, i + 1);
        while (dot(e, at(right + 1) - base) > dot(e, at(right) - base)) ++right;
        top = std::max(top, right);
        while (cross(e, at(top + 1) - base) > cross(e, at(top) - base)) ++top;
        left = std::max(left, top);
        while (dot(e, at(left + 1) - base) < dot(e, at(left) - base)) ++left;

        Wide width = dot(e, at(right) - base) - dot(e, at(left) - base);
        Wide height = cross(e, at(top) - base);
        BigInt num = to_big(width) * to_big(height);
        BigInt den = to_big(dot(e, e));
        if (!have_best || num * best_den < best_num * den) {
            have_best = true;
            best_num = num;
            best_den = den;
            best_w = width;
            best_h = height;
        }
    }
    Wide long_side = std::max(abs_wide(best_w), abs_wide(best_h));
    Wide short_side = std::min(abs_wide(best_w), abs_wide(best_h));
    return {Rational(best_num, best_den), Rational(to_big(long_side), to_big(short_side))};
}

Location locate(Point p, std::span<const Point> ring) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Point a = ring[j];
        Point b = ring[i];
        if (on_segment(a, b, p)) return Location::Boundary;
        // Half-open rule on y avoids double counting at vertices.
        if ((a.y > p.y) != (b.y > p.y)) {
            int o = orientation(a, b, p);
            if ((b.y > a.y) ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside ? Location::Inside : Location::Outside;
}

bool interiors_overlap(const Polygon& a, Point ta, const Polygon& b, Point tb) {
    Box box_a = a.bounds().translated(ta);
    Box box_b = b.bounds().translated(tb);
    if (!interiors_intersect(box_a, box_b)) return false;

    std::vector<Point> pa = doubled(a.vertices(), ta);
    std::vector<Point> pb = doubled(b.vertices(), tb);
    Box dbl_a{2 * box_a.min_x, 2 * box_a.min_y, 2 * box_a.max_x, 2 * box_a.max_y};
    Box dbl_b{2 * box_b.min_x, 2 * box_b.min_y, 2 * box_b.max_x, 2 * box_b.max_y};

    const std::size_t n = pa.size();
    const std::size_t m = pb.size();
    std::vector<std::size_t> near_b;
    for (std::size_t j = 0; j < m; ++j) {
        if (closed_intersect(segment_box(pb[j], pb[(j + 1) % m]), dbl_a)) near_b.push_back(j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        Point p0 = pa[i], p1 = pa[(i + 1) % n];
        Box eb = segment_box(p0, p1);
        if (!closed_intersect(eb, dbl_b)) continue;
        for (std::size_t j : near_b) {
            Point q0 = pb[j], q1 = pb[(j + 1) % m];
            if (!closed_intersect(eb, segment_box(q0, q1))) continue;
            if (properly_cross(p0, p1, q0, q1)) return true;
        }
    }
    return boundary_enters(pa, pb, dbl_b) || boundary_enters(pb, pa, dbl_a);
}

bool contained_in_convex(const Polygon& container, const Polygon& item, Point t) {
    if (!within_coord_limit(t)) return false;
    if (!box_contains(container.bounds(), item.bounds().translated(t))) return false;
    auto c = container.vertices();
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        Point a = c[i];
        Point e = c[(i + 1) % m] - a;
        for (Point v : item.vertices()) {
            if (cross(e, v + t - a) < 0) return false;
        }
    }
    return true;
}

}  // namespace polypack
