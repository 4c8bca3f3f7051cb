#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polypack/rational.hpp"

namespace polypack {

using Coord = std::int64_t;
// Wide enough for every predicate intermediate once |coordinate| <= kCoordLimit.
using Wide = __int128;

// Ingestion cap on coordinates and translations. Differences of translated
// coordinates stay below 2^53, so products of two differences fit in Wide.
inline constexpr Coord kCoordLimit = Coord{1} << 50;

struct Point {
    Coord x = 0;
    Coord y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

constexpr Wide cross(Point a, Point b) {
    return static_cast<Wide>(a.x) * b.y - static_cast<Wide>(a.y) * b.x;
}
constexpr Wide dot(Point a, Point b) {
    return static_cast<Wide>(a.x) * b.x + static_cast<Wide>(a.y) * b.y;
}

// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
constexpr int orientation(Point a, Point b, Point c) {
    Wide v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

struct Box {
    Coord min_x = 0;
    Coord min_y = 0;
    Coord max_x = 0;
    Coord max_y = 0;

    constexpr Coord width() const { return max_x - min_x; }
    constexpr Coord height() const { return max_y - min_y; }
    constexpr Box translated(Point t) const { return {min_x + t.x, min_y + t.y, max_x + t.x, max_y + t.y}; }

    friend constexpr bool operator==(const Box&, const Box&) = default;
};

// Open interiors intersect; boxes that only touch do not.
constexpr bool interiors_intersect(const Box& a, const Box& b) {
    return a.min_x < b.max_x && b.min_x < a.max_x && a.min_y < b.max_y && b.min_y < a.max_y;
}
constexpr bool closed_intersect(const Box& a, const Box& b) {
    return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
}
constexpr bool box_contains(const Box& outer, const Box& inner) {
    return outer.min_x <= inner.min_x && outer.min_y <= inner.min_y && inner.max_x <= outer.max_x &&
           inner.max_y <= outer.max_y;
}

Box bounding_box(std::span<const Point> points);

class GeometryError : public std::runtime_error {
public:
    enum class Kind { TooFewVertices, CoordinateOverflow, NotSimple, NotCounterclockwise, AllCollinear };

    GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Twice the shoelace area; positive iff counterclockwise.
Wide twice_signed_area(std::span<const Point> ring);
Rational signed_area(std::span<const Point> ring);

bool is_simple(std::span<const Point> ring);

// Every consecutive triple is a left turn or collinear (and not all collinear).
bool is_convex(std::span<const Point> ring);

// A simple, counterclockwise ring with positive area and coordinates within
// kCoordLimit. Immutable once built.
class Polygon {
public:
    // Throws GeometryError unless the ring already satisfies every invariant.
    static Polygon from_vertices(std::vector<Point> vertices);
    // Same, but clockwise input is reversed first.
    static Polygon normalized(std::vector<Point> vertices);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const Box& bounds() const { return bounds_; }
    Wide twice_area() const { return twice_area_; }
    Rational area() const;

    friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

private:
    Polygon(std::vector<Point> vertices, Box bounds, Wide twice_area)
        : vertices_(std::move(vertices)), bounds_(bounds), twice_area_(twice_area) {}

    std::vector<Point> vertices_;
    Box bounds_;
    Wide twice_area_ = 0;
};

inline Rational signed_area(const Polygon& poly) { return poly.area(); }

// Strict hull (collinear boundary points dropped), counterclockwise, starting
// at the lowest-then-leftmost point. Throws GeometryError{AllCollinear}.
Polygon convex_hull(std::span<const Point> points);

struct MinAreaRect {
    Rational area;
    // Long side over short side, >= 1.
    Rational aspect;
};

// Rotating calipers over the hull, one candidate orientation per hull edge.
MinAreaRect min_area_rect(const Polygon& poly);
inline Rational min_area_bounding_rect(const Polygon& poly) { return min_area_rect(poly).area; }

enum class Location { Outside, Boundary, Inside };

Location locate(Point p, std::span<const Point> ring);

// True iff the open interiors of a+ta and b+tb intersect. Shared edges or
// vertices are contact, not overlap.
bool interiors_overlap(const Polygon& a, Point ta, const Polygon& b, Point tb);

// Every vertex of item+t lies inside or on the boundary of the convex container.
bool contained_in_convex(const Polygon& container, const Polygon& item, Point t);

bool within_coord_limit(Point p);

}  // namespace polypack
