#include <set>

#include "doctest.h"
#include "polypack/generators.hpp"
#include "polypack/valuation.hpp"
#include "support.hpp"

using namespace polypack;
using namespace testing_support;

namespace {

ValueSpec spec(ValueKind kind, Rational noise, Rational scale, std::uint64_t seed = 1) {
    ValueSpec s;
    s.kind = kind;
    s.noise = noise;
    s.global_scale = scale;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("uniform and area values without noise") {
    Instance inst = make_instance("v", rect(0, 0, 100, 100), {rect(0, 0, 1, 1), rect(0, 0, 3, 2), poly({{0, 0}, {5, 0}, {0, 7}})});
    for (const Item& it : assign_values(inst, spec(ValueKind::Uniform, 0, 100)).items) CHECK(it.value == 100);
    Instance area = assign_values(inst, spec(ValueKind::Area, 0, 1));
    CHECK(area.items[0].value == 1);
    CHECK(area.items[1].value == 6);
    CHECK(area.items[2].value == 18);  // 17.5 rounds up
    CHECK(assign_values(inst, spec(ValueKind::Area, 0, Rational(1, 100))).items[0].value == 1);  // floor at 1
}

TEST_CASE("base values form a chain") {
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.n_target = 40;
        for (const Item& it : gen_random(cfg).items) {
            Rational a = base_value(it.polygon, ValueKind::Area);
            Rational h = base_value(it.polygon, ValueKind::ConvexHullArea);
            Rational b = base_value(it.polygon, ValueKind::RotatedBoundingBox);
            CHECK(a == it.polygon.area());
            CHECK(h >= a);
            CHECK(b >= h);
        }
    }
    Polygon l_shape = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
    CHECK(base_value(l_shape, ValueKind::Area) == 4);
    CHECK(base_value(l_shape, ValueKind::ConvexHullArea) == 5);
    CHECK(base_value(l_shape, ValueKind::RotatedBoundingBox) == 6);
    CHECK(base_value(l_shape, ValueKind::Uniform) == 1);
}

TEST_CASE("noise stays within its band and is per item") {
    std::vector<Polygon> items(50, rect(0, 0, 10, 10));
    Instance inst = make_instance("v", rect(0, 0, 100, 100), items);
    Instance a = assign_values(inst, spec(ValueKind::Area, Rational(1, 5), 1, 7));
    std::set<std::int64_t> seen;
    for (const Item& it : a.items) {
        CHECK(it.value >= 80);
        CHECK(it.value <= 120);
        seen.insert(it.value);
    }
    CHECK(seen.size() > 10);
    CHECK(assign_values(inst, spec(ValueKind::Area, Rational(1, 5), 1, 7)) == a);
    // Item i's draw does not depend on how many items come before it.
    Instance shorter = make_instance("v", rect(0, 0, 100, 100), std::vector<Polygon>(items.begin(), items.begin() + 20));
    Instance b = assign_values(shorter, spec(ValueKind::Area, Rational(1, 5), 1, 7));
    for (std::size_t i = 0; i < 20; ++i) CHECK(b.items[i].value == a.items[i].value);
}

TEST_CASE("value spec errors") {
    Instance inst = make_instance("v", rect(0, 0, 10, 10), {rect(0, 0, 2, 2)});
    CHECK_THROWS_AS(assign_values(inst, spec(ValueKind::Area, Rational(3, 2), 1)), std::invalid_argument);
    CHECK_THROWS_AS(assign_values(inst, spec(ValueKind::Area, 0, -1)), std::invalid_argument);
    Instance big = make_instance("v", rect(0, 0, 10, 10), {rect(0, 0, 1000000, 1000000), rect(0, 0, 1000000, 1000000)});
    CHECK_THROWS_AS(assign_values(big, spec(ValueKind::Area, 0, 1000)), ValueOverflow);
    CHECK(parse_value_kind("hull") == ValueKind::ConvexHullArea);
    CHECK(parse_value_kind("bbox") == ValueKind::RotatedBoundingBox);
    CHECK_THROWS(parse_value_kind("perimeter"));
}
