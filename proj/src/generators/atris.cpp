#include <algorithm>
#include <map>

#include "polypack/generators.hpp"

namespace polypack {

namespace {

constexpr std::uint32_t kAtrisItemTag = 0xA7;
constexpr std::uint32_t kShearTag = 0x5A;

// Mean cell count over the seven templates, times 7.
constexpr std::int64_t kCellsTimesSeven = 4 + 4 + 4 + 4 + 6 + 5 + 5;
constexpr std::int64_t kMaxCells = 6;

struct Grid {
    std::vector<Coord> xs;  // column boundaries
    std::vector<Coord> ys;  // row boundaries

    Box cell(std::size_t row, std::size_t col, Point shift = {}) const {
        return Box{xs[col], ys[row], xs[col + 1], ys[row + 1]}.translated(shift);
    }
    Coord w(std::size_t col) const { return xs[col + 1] - xs[col]; }
    Coord h(std::size_t row) const { return ys[row + 1] - ys[row]; }
};

Grid random_grid(Rng& rng, std::size_t rows, std::size_t cols, Coord lo, Coord hi) {
    Grid g;
    g.xs.push_back(0);
    for (std::size_t c = 0; c < cols; ++c) g.xs.push_back(g.xs.back() + rng.uniform_int(lo, hi));
    g.ys.push_back(0);
    for (std::size_t r = 0; r < rows; ++r) g.ys.push_back(g.ys.back() + rng.uniform_int(lo, hi));
    return g;
}

// Shift keeping a row of a squiggly overlapping the row below while still
// sticking out on both sides.
Coord squiggle_shift(Rng& rng, Coord below_left, Coord overlap, Coord above_right) {
    return rng.uniform_int(std::max(-below_left, -above_right) + 1, overlap - 1);
}

struct Compressed {
    std::vector<Coord> xs;
    std::vector<Coord> ys;
    std::vector<char> covered;  // (i, j) -> covered[j * nx + i]
    std::size_t nx = 0;
    std::size_t ny = 0;

    bool at(std::ptrdiff_t i, std::ptrdiff_t j) const {
        if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(nx) || j >= static_cast<std::ptrdiff_t>(ny)) return false;
        return covered[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)] != 0;
    }
};

Compressed compress(std::span<const Box> cells) {
    Compressed c;
    for (const Box& b : cells) {
        c.xs.push_back(b.min_x);
        c.xs.push_back(b.max_x);
        c.ys.push_back(b.min_y);
        c.ys.push_back(b.max_y);
    }
    std::sort(c.xs.begin(), c.xs.end());
    c.xs.erase(std::unique(c.xs.begin(), c.xs.end()), c.xs.end());
    std::sort(c.ys.begin(), c.ys.end());
    c.ys.erase(std::unique(c.ys.begin(), c.ys.end()), c.ys.end());
    c.nx = c.xs.empty() ? 0 : c.xs.size() - 1;
    c.ny = c.ys.empty() ? 0 : c.ys.size() - 1;
    c.covered.assign(c.nx * c.ny, 0);
    for (const Box& b : cells) {
        auto i0 = std::lower_bound(c.xs.begin(), c.xs.end(), b.min_x) - c.xs.begin();
        auto i1 = std::lower_bound(c.xs.begin(), c.xs.end(), b.max_x) - c.xs.begin();
        auto j0 = std::lower_bound(c.ys.begin(), c.ys.end(), b.min_y) - c.ys.begin();
        auto j1 = std::lower_bound(c.ys.begin(), c.ys.end(), b.max_y) - c.ys.begin();
        for (auto j = j0; j < j1; ++j)
            for (auto i = i0; i < i1; ++i) c.covered[static_cast<std::size_t>(j) * c.nx + static_cast<std::size_t>(i)] = 1;
    }
    return c;
}

std::vector<Point> drop_collinear(std::vector<Point> ring) {
    bool changed = true;
    while (changed && ring.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            std::size_t n = ring.size();
            if (orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == 0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

struct AtrisItem {
    Polygon polygon;
    TetrisShape shape;
    Rational base_area;
    bool sheared = false;
    Rational shear_m;
};

std::vector<Point> flip_rotate(std::vector<Point> ring, Rng& rng) {
    bool flip_h = rng.coin();
    bool flip_v = rng.coin();
    int quarter_turns = static_cast<int>(rng.uniform_int(0, 3));
    for (Point& p : ring) {
        if (flip_h) p.x = -p.x;
        if (flip_v) p.y = -p.y;
        for (int k = 0; k < quarter_turns; ++k) p = Point{-p.y, p.x};
    }
    if (flip_h != flip_v) std::reverse(ring.begin(), ring.end());
    Box b = bounding_box(ring);
    for (Point& p : ring) p = p - Point{b.min_x, b.min_y};
    return ring;
}

AtrisItem make_item(std::uint64_t seed, std::size_t index, const GenConfig& cfg, bool shear_enabled) {
    Rng rng(seed, stream_id(kAtrisItemTag, index));
    auto shape = static_cast<TetrisShape>(rng.uniform_int(0, kTetrisShapeCount - 1));
    PolyominoCells cells = make_polyomino(shape, rng, cfg.pixel_min, cfg.pixel_max);
    auto outline = trace_outline(cells.cells);
    if (!outline) throw GenerationFailed("polyomino template produced a non-simple outline");
    Polygon base = Polygon::from_vertices(std::move(*outline));

    AtrisItem item{base, shape, base.area(), false, 0};
    if (shear_enabled) {
        Rng shear_rng(seed, stream_id(kShearTag, index));
        if (shear_rng.bernoulli(cfg.shear_probability)) {
            bool done = false;
            for (int attempt = 0; attempt < 100 && !done; ++attempt) {
                Rational m = shear_rng.uniform_rational(kShearMin, kShearMax);
                try {
                    item.polygon = shear_polygon(base, m);
                    item.sheared = true;
                    item.shear_m = m;
                    done = true;
                } catch (const NonSimpleAfterRounding&) {
                }
            }
            if (!done) throw GenerationFailed("shear rounding kept producing non-simple items");
        }
    }
    std::vector<Point> ring(item.polygon.vertices().begin(), item.polygon.vertices().end());
    item.polygon = Polygon::from_vertices(flip_rotate(std::move(ring), rng));
    return item;
}

// Upper bound on the summed value; keeps the 2^40 guarantee checkable up front.
BigInt value_sum_bound(const GenConfig& cfg, const Rational& container_area, bool satris) {
    Rational max_item_area = Rational(kMaxCells * cfg.pixel_max * cfg.pixel_max);
    Rational min_item_area = Rational(4 * cfg.pixel_min * cfg.pixel_min);
    Rational total_area = cfg.area_multiple_t * container_area + max_item_area;
    Rational factor = kValueScaleMax * Rational(7, 5);
    if (satris) factor *= shear_value_factor(kShearMax);
    BigInt count = floor_of(total_area / min_item_area) + 1;
    return floor_of(total_area * factor) + 1 + count;
}

Instance atris_like(const GenConfig& cfg, bool satris) {
    cfg.validate(satris ? Family::Satris : Family::Atris);
    Coord width = cfg.container_width;
    Coord height = cfg.container_height;
    if (width == 0 || height == 0) {
        // Container area ~ n * E[item area] / t; square unless one side was given.
        Rational mean_px = Rational(cfg.pixel_min + cfg.pixel_max, 2);
        Rational area = Rational(static_cast<std::int64_t>(cfg.n_target)) * Rational(kCellsTimesSeven, 7) * mean_px *
                        mean_px / cfg.area_multiple_t;
        Coord min_side = 6 * cfg.pixel_max;
        if (width == 0 && height == 0) {
            BigInt side = boost::multiprecision::sqrt(floor_of(area));
            width = height = std::max(min_side, side.convert_to<Coord>());
        } else if (width == 0) {
            width = std::max(min_side, floor_of(area / height).convert_to<Coord>());
        } else {
            height = std::max(min_side, floor_of(area / width).convert_to<Coord>());
        }
    }
    Rational container_area = Rational(width) * height;
    if (value_sum_bound(cfg, container_area, satris) >= kValueSumLimit) {
        throw std::invalid_argument("configuration could exceed the 2^40 value budget; shrink the container or pixels");
    }

    std::string name = cfg.name.empty() ? std::string(satris ? "satris" : "atris") + "_s" + std::to_string(cfg.seed) +
                                              "_n" + std::to_string(cfg.n_target)
                                        : cfg.name;
    std::vector<Item> items;

    const Rational threshold = cfg.area_multiple_t * container_area;
    Rational total_area = 0;
    for (std::size_t i = 0; total_area <= threshold; ++i) {
        AtrisItem item = make_item(cfg.seed, i, cfg, satris);
        Rng value_rng(cfg.seed, stream_id(kAtrisItemTag ^ 0xFF00, i));
        // Sheared items keep their pre-shear area as value base (the shear is unimodular).
        Rational value = item.base_area * value_rng.uniform_rational(kValueScaleMin, kValueScaleMax) * category_constant(item.shape);
        if (item.sheared) value *= shear_value_factor(item.shear_m);
        BigInt rounded = std::max(BigInt(1), round_half_up(value));
        total_area += item.polygon.area();
        items.push_back(Item{std::move(item.polygon), rounded.convert_to<std::int64_t>()});
    }
    return Instance{std::move(name), Polygon::from_vertices({{0, 0}, {width, 0}, {width, height}, {0, height}}),
                    std::move(items), InstanceMeta{std::string(satris ? "satris" : "atris"), cfg.seed, "area"}};
}

}  // namespace

std::string_view to_string(TetrisShape shape) {
    switch (shape) {
        case TetrisShape::Line: return "line";
        case TetrisShape::Squiggly: return "squiggly";
        case TetrisShape::DoubleSquiggly: return "double-squiggly";
        case TetrisShape::Y: return "y";
        case TetrisShape::T: return "t";
        case TetrisShape::L: return "l";
        case TetrisShape::Plus: return "plus";
    }
    return "line";
}

Rational category_constant(TetrisShape shape) {
    switch (shape) {
        case TetrisShape::Line: return Rational(1);
        case TetrisShape::L:
        case TetrisShape::T: return Rational(11, 10);
        case TetrisShape::Squiggly: return Rational(6, 5);
        case TetrisShape::Plus:
        case TetrisShape::Y: return Rational(13, 10);
        case TetrisShape::DoubleSquiggly: return Rational(7, 5);
    }
    return Rational(1);
}

Rational shear_value_factor(const Rational& m) {
    return Rational(6, 5) * (1 + m / 4);
}

PolyominoCells make_polyomino(TetrisShape shape, Rng& rng, Coord lo, Coord hi) {
    PolyominoCells out;
    out.shape = shape;
    auto& cells = out.cells;
    switch (shape) {
        case TetrisShape::Line: {
            Grid g = random_grid(rng, 1, 4, lo, hi);
            for (std::size_t c = 0; c < 4; ++c) cells.push_back(g.cell(0, c));
            break;
        }
        case TetrisShape::L: {
            Grid g = random_grid(rng, 3, 2, lo, hi);
            for (std::size_t r = 0; r < 3; ++r) cells.push_back(g.cell(r, 0));
            cells.push_back(g.cell(0, 1));
            break;
        }
        case TetrisShape::T: {
            Grid g = random_grid(rng, 2, 3, lo, hi);
            for (std::size_t c = 0; c < 3; ++c) cells.push_back(g.cell(1, c));
            // Stem stays strictly inside the bar so it never becomes an L.
            Coord s = rng.uniform_int(-(g.w(0) - 1), g.w(2) - 1);
            cells.push_back(g.cell(0, 1, {s, 0}));
            break;
        }
        case TetrisShape::Squiggly: {
            Grid g = random_grid(rng, 2, 3, lo, hi);
            Coord s = squiggle_shift(rng, g.w(0), g.w(1), g.w(2));
            cells.push_back(g.cell(0, 0));
            cells.push_back(g.cell(0, 1));
            cells.push_back(g.cell(1, 1, {s, 0}));
            cells.push_back(g.cell(1, 2, {s, 0}));
            break;
        }
        case TetrisShape::DoubleSquiggly: {
            Grid g = random_grid(rng, 3, 4, lo, hi);
            Coord s1 = squiggle_shift(rng, g.w(0), g.w(1), g.w(2));
            Coord s2 = squiggle_shift(rng, g.w(1), g.w(2), g.w(3));
            cells.push_back(g.cell(0, 0));
            cells.push_back(g.cell(0, 1));
            cells.push_back(g.cell(1, 1, {s1, 0}));
            cells.push_back(g.cell(1, 2, {s1, 0}));
            cells.push_back(g.cell(2, 2, {s1 + s2, 0}));
            cells.push_back(g.cell(2, 3, {s1 + s2, 0}));
            break;
        }
        case TetrisShape::Y: {
            Grid g = random_grid(rng, 2, 4, lo, hi);
            for (std::size_t c = 0; c < 4; ++c) cells.push_back(g.cell(0, c));
            Coord s = rng.uniform_int(-(g.w(0) - 1), g.w(2) + g.w(3) - 1);
            cells.push_back(g.cell(1, 1, {s, 0}));
            break;
        }
        case TetrisShape::Plus: {
            Grid g = random_grid(rng, 3, 3, lo, hi);
            for (std::size_t r = 0; r < 3; ++r) cells.push_back(g.cell(r, 1));
            Coord left = rng.uniform_int(-(g.h(0) - 1), g.h(2) - 1);
            Coord right = rng.uniform_int(-(g.h(0) - 1), g.h(2) - 1);
            cells.push_back(g.cell(1, 0, {0, left}));
            cells.push_back(g.cell(1, 2, {0, right}));
            break;
        }
    }
    return out;
}

bool cells_connected(std::span<const Box> cells) {
    Compressed c = compress(cells);
    std::size_t total = static_cast<std::size_t>(std::count(c.covered.begin(), c.covered.end(), 1));
    if (total == 0) return false;
    std::vector<char> seen(c.covered.size(), 0);
    std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> stack;
    for (std::size_t k = 0; k < c.covered.size(); ++k) {
        if (c.covered[k]) {
            stack.emplace_back(static_cast<std::ptrdiff_t>(k % c.nx), static_cast<std::ptrdiff_t>(k / c.nx));
            seen[k] = 1;
            break;
        }
    }
    std::size_t reached = 0;
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        ++reached;
        const std::ptrdiff_t di[] = {1, -1, 0, 0};
        const std::ptrdiff_t dj[] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            std::ptrdiff_t ni = i + di[d], nj = j + dj[d];
            if (!c.at(ni, nj)) continue;
            std::size_t k = static_cast<std::size_t>(nj) * c.nx + static_cast<std::size_t>(ni);
            if (!seen[k]) {
                seen[k] = 1;
                stack.emplace_back(ni, nj);
            }
        }
    }
    return reached == total;
}

std::optional<std::vector<Point>> trace_outline(std::span<const Box> cells) {
    if (!cells_connected(cells)) return std::nullopt;
    Compressed c = compress(cells);
    // Directed boundary edges between grid nodes, interior on the left.
    using Node = std::pair<std::ptrdiff_t, std::ptrdiff_t>;
    std::map<Node, Node> next;
    std::size_t edges = 0;
    bool pinched = false;
    auto add = [&](Node a, Node b) {
        if (!next.emplace(a, b).second) pinched = true;
        ++edges;
    };
    for (std::size_t j = 0; j < c.ny; ++j) {
        for (std::size_t i = 0; i < c.nx; ++i) {
            auto si = static_cast<std::ptrdiff_t>(i), sj = static_cast<std::ptrdiff_t>(j);
            if (!c.at(si, sj)) continue;
            if (!c.at(si, sj - 1)) add({si, sj}, {si + 1, sj});
            if (!c.at(si + 1, sj)) add({si + 1, sj}, {si + 1, sj + 1});
            if (!c.at(si, sj + 1)) add({si + 1, sj + 1}, {si, sj + 1});
            if (!c.at(si - 1, sj)) add({si, sj + 1}, {si, sj});
        }
    }
    if (pinched || next.empty()) return std::nullopt;
    std::vector<Point> ring;
    Node start = next.begin()->first;
    Node at = start;
    do {
        ring.push_back({c.xs[static_cast<std::size_t>(at.first)], c.ys[static_cast<std::size_t>(at.second)]});
        auto it = next.find(at);
        if (it == next.end()) return std::nullopt;
        at = it->second;
        if (ring.size() > edges) return std::nullopt;
    } while (at != start);
    if (ring.size() != edges) return std::nullopt;  // a hole leaves a second loop
    return drop_collinear(std::move(ring));
}

Instance gen_atris(const GenConfig& cfg) { return atris_like(cfg, false); }
Instance gen_satris(const GenConfig& cfg) { return atris_like(cfg, true); }

}  // namespace polypack
