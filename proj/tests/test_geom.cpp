#include <optional>

#include "doctest.h"
#include "support.hpp"

using namespace polypack;
using namespace testing_support;

TEST_CASE("signed area of simple shapes") {
    CHECK(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}).area() == 1);
    CHECK(poly({{0, 0}, {4, 0}, {0, 3}}).area() == 6);
    std::vector<Point> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK(signed_area(cw) == -1);
    std::vector<Point> flat{{0, 0}, {1, 0}, {2, 0}};
    CHECK(signed_area(flat) == 0);
}

TEST_CASE("signed area matches the decimal shoelace") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        // Large coordinates so products leave 64 bits.
        Polygon p = random_simple(rng, 3 + i % 12, 1e14, {Coord{1} << 48, -(Coord{1} << 47)});
        Ring r(p.vertices().begin(), p.vertices().end());
        CHECK(to_exact_string(p.area() * 2) == oracle::twice_area_decimal(r));
    }
}

TEST_CASE("is_simple") {
    std::vector<Point> quad{{0, 0}, {4, 1}, {5, 5}, {1, 4}};
    CHECK(is_simple(quad));
    std::vector<Point> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(is_simple(bowtie));
    std::vector<Point> repeated{{0, 0}, {2, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(is_simple(repeated));
    std::vector<Point> spike{{0, 0}, {4, 0}, {2, 0}, {2, 3}};
    CHECK_FALSE(is_simple(spike));
    std::vector<Point> touching{{0, 0}, {4, 0}, {4, 4}, {2, 0}, {0, 4}};
    CHECK_FALSE(is_simple(touching));
}

TEST_CASE("is_simple agrees with the all-pairs oracle") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<Coord> d(0, 12);
    int simple = 0;
    for (int i = 0; i < 500; ++i) {
        Ring r;
        if (i % 2 == 0) {
            for (int k = 0; k < 10; ++k) r.push_back({d(rng), d(rng)});
        } else {
            r = random_star(rng, 10, 9);
        }
        bool expect = oracle::is_simple(r);
        simple += expect;
        CHECK_MESSAGE(is_simple(r) == expect, "case " << i);
    }
    CHECK(simple > 50);
}

TEST_CASE("is_convex") {
    std::vector<Point> hex{{2, 0}, {6, 0}, {8, 3}, {6, 6}, {2, 6}, {0, 3}};
    CHECK(is_convex(hex));
    std::vector<Point> l_shape{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 3}, {0, 3}};
    CHECK_FALSE(is_convex(l_shape));
    std::vector<Point> with_straight{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(is_convex(with_straight));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        Polygon p = random_simple(rng, 3 + i % 8, 30);
        Ring r(p.vertices().begin(), p.vertices().end());
        CHECK(is_convex(r) == oracle::is_convex(r));
    }
}

TEST_CASE("convex hull") {
    std::vector<Point> sq{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}};
    Polygon h = convex_hull(sq);
    CHECK(std::vector<Point>(h.vertices().begin(), h.vertices().end()) == std::vector<Point>{{0, 0}, {4, 0}, {4, 4}, {0, 4}});

    std::vector<Point> shuffled{{4, 4}, {0, 4}, {4, 0}, {0, 0}};
    CHECK(convex_hull(shuffled).vertices().size() == 4);
    CHECK(convex_hull(shuffled)[0] == Point{0, 0});

    std::vector<Point> collinear_edge{{0, 0}, {2, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(convex_hull(collinear_edge).size() == 4);

    std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(convex_hull(line), GeometryError);
}

TEST_CASE("convex hull agrees with the extreme-point oracle") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<Coord> d(-20, 20);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const int k = i < 600 ? 3 + i % 6 : 20 + i % 31;
        std::vector<Point> pts;
        for (int j = 0; j < k; ++j) pts.push_back({d(rng), d(rng)});
        std::optional<Polygon> hull;
        try {
            hull = convex_hull(pts);
        } catch (const GeometryError&) {
            Ring uniq = pts;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            bool flat = true;
            for (std::size_t j = 2; j < uniq.size(); ++j) flat = flat && orientation(uniq[0], uniq[1], uniq[j]) == 0;
            CHECK(flat);
            continue;
        }
        Ring got(hull->vertices().begin(), hull->vertices().end());
        if (k <= 8) {
            CHECK(got == oracle::hull_by_extremes(pts));
            ++compared;
        } else {
            for (Point p : pts)
                for (std::size_t e = 0; e < got.size(); ++e) CHECK(orientation(got[e], got[(e + 1) % got.size()], p) >= 0);
        }
        // Idempotent.
        CHECK(convex_hull(got) == *hull);
    }
    CHECK(compared > 500);
}

TEST_CASE("minimum area rectangle") {
    CHECK(min_area_bounding_rect(rect(0, 0, 3, 2)) == 6);
    CHECK(min_area_rect(rect(0, 0, 3, 2)).aspect == Rational(3, 2));
    Polygon rotated = poly({{0, 0}, {3, 3}, {1, 5}, {-2, 2}});
    CHECK(min_area_bounding_rect(rotated) == rotated.area());
    CHECK(min_area_bounding_rect(rotated) == 12);
    CHECK(min_area_rect(rotated).aspect == Rational(3, 2));
    // Right triangle: the best box is flush with a leg.
    CHECK(min_area_bounding_rect(poly({{0, 0}, {4, 0}, {0, 3}})) == 12);
}

TEST_CASE("minimum area rectangle against the angle sweep") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
        Polygon p = i % 2 ? random_convex(rng, 4 + i % 9, 1000) : random_simple(rng, 4 + i % 9, 500);
        double exact = to_double(min_area_bounding_rect(p));
        double sweep = oracle::min_rect_area_sweep(Ring(p.vertices().begin(), p.vertices().end()));
        CHECK(exact <= sweep * (1 + 1e-6));
        CHECK(exact >= sweep * (1 - 1e-2));
        CHECK(min_area_bounding_rect(p) >= convex_hull(p.vertices()).area());
    }
}

TEST_CASE("interiors_overlap basics") {
    Polygon sq = rect(0, 0, 1, 1);
    CHECK_FALSE(interiors_overlap(sq, {0, 0}, sq, {1, 0}));
    CHECK_FALSE(interiors_overlap(sq, {0, 0}, sq, {1, 1}));
    CHECK(interiors_overlap(sq, {0, 0}, sq, {0, 0}));
    Polygon big = rect(0, 0, 10, 10);
    CHECK(interiors_overlap(big, {0, 0}, sq, {4, 4}));  // nested
    CHECK(interiors_overlap(sq, {4, 4}, big, {0, 0}));
    // Same outline, shared boundary only from the inside: still overlap.
    CHECK(interiors_overlap(rect(0, 0, 2, 1), {0, 0}, rect(0, 0, 1, 1), {0, 0}));
    // Cross shape: no vertex of either lies inside the other.
    CHECK(interiors_overlap(rect(0, 2, 6, 4), {0, 0}, rect(2, 0, 4, 6), {0, 0}));
    // Triangles meeting along a diagonal.
    Polygon lower = poly({{0, 0}, {4, 0}, {4, 4}});
    Polygon upper = poly({{0, 0}, {4, 4}, {0, 4}});
    CHECK_FALSE(interiors_overlap(lower, {0, 0}, upper, {0, 0}));
    CHECK(interiors_overlap(lower, {0, 0}, upper, {1, 0}));
}

TEST_CASE("interiors_overlap agrees with the triangulation oracle") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<Coord> off(-12, 12);
    int overlaps = 0, contacts = 0;
    for (int i = 0; i < 1500; ++i) {
        Polygon a = random_simple(rng, 3 + i % 9, 10);
        Polygon b = i % 3 == 0 ? a : random_simple(rng, 3 + (i / 3) % 9, 10);
        Point ta{off(rng), off(rng)}, tb{off(rng), off(rng)};
        Ring ra(a.vertices().begin(), a.vertices().end()), rb(b.vertices().begin(), b.vertices().end());
        bool got = interiors_overlap(a, ta, b, tb);
        bool expect = oracle::overlap_sat(ra, ta, rb, tb);
        CHECK_MESSAGE(got == expect, "case " << i);
        if (oracle::overlap_raster_hit(ra, ta, rb, tb)) CHECK(got);
        CHECK(interiors_overlap(b, tb, a, ta) == got);
        Point shift{off(rng) * 1000, off(rng) * 1000};
        CHECK(interiors_overlap(a, ta + shift, b, tb + shift) == got);
        overlaps += got;
        contacts += !got && closed_intersect(a.bounds().translated(ta), b.bounds().translated(tb));
    }
    CHECK(overlaps > 200);
    CHECK(contacts > 50);
}

TEST_CASE("contained_in_convex") {
    Polygon box = rect(0, 0, 10, 10);
    Polygon sq = rect(0, 0, 1, 1);
    CHECK(contained_in_convex(box, sq, {0, 0}));
    CHECK(contained_in_convex(box, sq, {9, 9}));
    CHECK_FALSE(contained_in_convex(box, sq, {10, 0}));
    CHECK_FALSE(contained_in_convex(box, sq, {-1, 3}));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Coord> off(-10, 40);
    int inside = 0;
    for (int i = 0; i < 1000; ++i) {
        Polygon container = random_convex(rng, 5 + i % 10, 40);
        Polygon item = random_simple(rng, 3 + i % 7, 6);
        Point t{off(rng), off(rng)};
        bool expect = oracle::contained_by_clip(Ring(container.vertices().begin(), container.vertices().end()),
                                                Ring(item.vertices().begin(), item.vertices().end()), t);
        CHECK(contained_in_convex(container, item, t) == expect);
        inside += expect;
    }
    CHECK(inside > 50);
}

TEST_CASE("polygon construction enforces invariants") {
    CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {2, 2}, {2, 0}, {0, 2}}), GeometryError);
    CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
    CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {kCoordLimit + 1, 0}, {0, 1}}), GeometryError);
    Polygon p = Polygon::normalized({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(p.area() == 1);
    CHECK(p.bounds() == Box{0, 0, 1, 1});
}
