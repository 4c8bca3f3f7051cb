#include <algorithm>
#include <map>
#include <optional>

#include "polypack/generators.hpp"

namespace polypack {

namespace {

constexpr std::uint32_t kJigsawTag = 0x4A;
constexpr std::uint32_t kJigsawContainerTag = 0x4B;
constexpr std::uint32_t kPerturbTag = 0x50;

// Cut directions. Every pairwise cross product lies in {1..5} up to sign,
// so lines whose offsets are multiples of lcm(1..5) = 60 meet at integer
// points, and so do their intersections with the container edges.
constexpr Coord kGrid = 60;
constexpr Point kDirections[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}};
constexpr Coord kDefaultSide = 20 * kGrid;

// Minimum piece area as a fraction of the container, maximum min-rect aspect.
const Rational kMinPieceFraction{1, 500};
const Rational kMaxPieceFraction{1, 6};
const Rational kMaxAspect{25};
constexpr std::size_t kMaxPieceVertices = 40;

using Ring = std::vector<Point>;

// Points p with cross(d, p) == c.
struct Line {
    Point d;
    Wide c = 0;

    Wide side(Point p) const { return cross(d, p) - c; }
    friend bool operator==(const Line&, const Line&) = default;
};

int sgn(Wide v) { return (v > 0) - (v < 0); }

Point intersect(Point v, Point w, const Line& line) {
    Wide num = line.c - cross(line.d, v);
    Wide den = cross(line.d, w - v);
    Wide nx = static_cast<Wide>(w.x - v.x) * num;
    Wide ny = static_cast<Wide>(w.y - v.y) * num;
    if (nx % den != 0 || ny % den != 0) throw GenerationFailed("jigsaw arrangement produced a non-integral vertex");
    return {v.x + static_cast<Coord>(nx / den), v.y + static_cast<Coord>(ny / den)};
}

// Splits a convex face into its strictly-positive and strictly-negative
// sides; nullopt when the line misses the face interior.
std::optional<std::pair<Ring, Ring>> split(const Ring& face, const Line& line) {
    bool pos = false, neg = false;
    for (Point p : face) {
        int s = sgn(line.side(p));
        pos = pos || s > 0;
        neg = neg || s < 0;
    }
    if (!pos || !neg) return std::nullopt;
    Ring left, right;
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point v = face[i], w = face[(i + 1) % n];
        int sv = sgn(line.side(v)), sw = sgn(line.side(w));
        if (sv >= 0) left.push_back(v);
        if (sv <= 0) right.push_back(v);
        if (sv * sw < 0) {
            Point p = intersect(v, w, line);
            left.push_back(p);
            right.push_back(p);
        }
    }
    return std::make_pair(std::move(left), std::move(right));
}

Ring clip_keep(const Ring& face, const Line& line, bool keep_positive) {
    auto parts = split(face, line);
    if (!parts) return face;
    return keep_positive ? parts->first : parts->second;
}

Ring make_container(const GenConfig& cfg) {
    auto round_up = [](Coord v) { return ((v + kGrid - 1) / kGrid) * kGrid; };
    Coord w = cfg.container_width == 0 ? kDefaultSide : std::max(kGrid * 2, round_up(cfg.container_width));
    Coord h = cfg.container_height == 0 ? kDefaultSide : std::max(kGrid * 2, round_up(cfg.container_height));
    Ring ring{{0, 0}, {w, 0}, {w, h}, {0, h}};
    Rng rng(cfg.seed, stream_id(kJigsawContainerTag, 0));
    const Coord max_cut = std::max<Coord>(1, std::min(w, h) / (4 * kGrid));
    auto depth = [&] { return kGrid * rng.uniform_int(1, max_cut); };
    if (rng.coin()) ring = clip_keep(ring, {{1, -1}, depth()}, true);
    if (rng.coin()) ring = clip_keep(ring, {{1, 1}, depth() - w}, true);
    if (rng.coin()) ring = clip_keep(ring, {{1, -1}, w + h - depth()}, false);
    if (rng.coin()) ring = clip_keep(ring, {{1, 1}, h - depth()}, false);
    return ring;
}

Line random_line(Rng& rng, const Ring& container, const std::vector<Line>& used) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Point d = kDirections[rng.index(std::size(kDirections))];
        Wide lo = cross(d, container[0]), hi = lo;
        for (Point p : container) {
            lo = std::min(lo, cross(d, p));
            hi = std::max(hi, cross(d, p));
        }
        // Multiples of kGrid strictly inside (lo, hi).
        Wide k_lo = lo >= 0 ? lo / kGrid + 1 : -((-lo) / kGrid) + 1;
        Wide k_hi = hi > 0 ? (hi - 1) / kGrid : -((-hi) / kGrid + 1);
        if (hi <= 0 && (-hi) % kGrid != 0) k_hi = -((-hi) / kGrid) - 1;
        if (k_lo > k_hi) continue;
        Wide k = rng.uniform_int(static_cast<std::int64_t>(k_lo), static_cast<std::int64_t>(k_hi));
        Line line{d, k * kGrid};
        if (std::find(used.begin(), used.end(), line) == used.end()) return line;
    }
    throw GenerationFailed("no fresh cut line crosses the container");
}

Ring drop_collinear(Ring ring) {
    Ring out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) != 0) out.push_back(ring[i]);
    }
    return out;
}

class PieceSet {
public:
    explicit PieceSet(std::vector<Ring> faces) : pieces_(std::move(faces)), alive_(pieces_.size(), 1) {
        for (std::size_t i = 0; i < pieces_.size(); ++i) index_edges(i);
    }

    std::vector<std::size_t> neighbours(std::size_t id) const {
        std::vector<std::size_t> out;
        const Ring& r = pieces_[id];
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto it = owner_.find({r[(i + 1) % r.size()], r[i]});
            if (it != owner_.end() && std::find(out.begin(), out.end(), it->second) == out.end()) {
                out.push_back(it->second);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Union of two pieces sharing one contiguous boundary chain.
    std::optional<Ring> merged(std::size_t a_id, std::size_t b_id) const {
        const Ring& a = pieces_[a_id];
        const Ring& b = pieces_[b_id];
        const std::size_t n = a.size();
        std::vector<char> shared(n, 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = owner_.find({a[(i + 1) % n], a[i]});
            if (it != owner_.end() && it->second == b_id) {
                shared[i] = 1;
                ++count;
            }
        }
        if (count == 0 || count == n) return std::nullopt;
        std::size_t runs = 0, start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (shared[i] && !shared[(i + n - 1) % n]) {
                ++runs;
                start = i;
            }
        }
        if (runs != 1) return std::nullopt;
        const std::size_t end = (start + count) % n;  // chain runs a[start] .. a[end]
        Ring out;
        for (std::size_t k = end; k != start; k = (k + 1) % n) out.push_back(a[k]);
        auto bj = std::find(b.begin(), b.end(), a[start]);
        if (bj == b.end()) return std::nullopt;
        const std::size_t m = b.size();
        for (auto k = static_cast<std::size_t>(bj - b.begin()); b[k] != a[end]; k = (k + 1) % m) out.push_back(b[k]);
        if (!is_simple(out) || twice_signed_area(out) <= 0) return std::nullopt;
        return out;
    }

    void replace(std::size_t a_id, std::size_t b_id, Ring ring) {
        unindex_edges(a_id);
        unindex_edges(b_id);
        alive_[b_id] = 0;
        pieces_[b_id].clear();
        pieces_[a_id] = std::move(ring);
        index_edges(a_id);
    }

    bool alive(std::size_t id) const { return alive_[id] != 0; }
    const Ring& ring(std::size_t id) const { return pieces_[id]; }
    std::size_t slots() const { return pieces_.size(); }

    std::vector<std::size_t> live_ids() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (alive_[i]) out.push_back(i);
        return out;
    }

private:
    void index_edges(std::size_t id) {
        const Ring& r = pieces_[id];
        for (std::size_t i = 0; i < r.size(); ++i) owner_[{r[i], r[(i + 1) % r.size()]}] = id;
    }
    void unindex_edges(std::size_t id) {
        const Ring& r = pieces_[id];
        for (std::size_t i = 0; i < r.size(); ++i) owner_.erase({r[i], r[(i + 1) % r.size()]});
    }

    std::vector<Ring> pieces_;
    std::vector<char> alive_;
    std::map<std::pair<Point, Point>, std::size_t> owner_;
};

Rational ring_area(const Ring& r) { return signed_area(r); }

Rational ring_aspect(const Ring& r) { return min_area_rect(Polygon::from_vertices(r)).aspect; }

bool badly_shaped(const Ring& r, const Rational& min_area) {
    return ring_area(r) < min_area || ring_aspect(r) > kMaxAspect;
}

std::vector<Ring> cut_pieces(const GenConfig& cfg, const Ring& container, std::size_t copy) {
    Rng rng(cfg.seed, stream_id(kJigsawTag, copy));
    const Rational container_area = ring_area(container);
    const Rational min_area = container_area * kMinPieceFraction;
    const Rational max_area = container_area * kMaxPieceFraction;

    std::vector<Ring> faces{container};
    std::vector<Line> used;
    for (std::size_t l = 0; l < cfg.jigsaw_line_count; ++l) {
        Line line = random_line(rng, container, used);
        used.push_back(line);
        std::vector<Ring> next;
        next.reserve(faces.size() * 2);
        for (Ring& f : faces) {
            if (auto parts = split(f, line)) {
                next.push_back(std::move(parts->first));
                next.push_back(std::move(parts->second));
            } else {
                next.push_back(std::move(f));
            }
        }
        faces = std::move(next);
    }

    PieceSet set(std::move(faces));

    // Absorb tiny or sliver faces into a neighbour first.
    for (std::size_t id = 0; id < set.slots(); ++id) {
        if (!set.alive(id) || !badly_shaped(set.ring(id), min_area)) continue;
        auto nbrs = set.neighbours(id);
        std::sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) {
            Rational aa = ring_area(set.ring(a)), ab = ring_area(set.ring(b));
            return aa != ab ? aa > ab : a < b;
        });
        for (std::size_t nb : nbrs) {
            if (auto ring = set.merged(nb, id)) {
                set.replace(nb, id, std::move(*ring));
                break;
            }
        }
    }

    // Random merges of adjacent pieces into more complex shapes.
    std::size_t wanted = set.live_ids().size() / 2;
    for (std::size_t attempt = 0; wanted > 0 && attempt < 8 * set.slots(); ++attempt) {
        auto ids = set.live_ids();
        std::size_t a = ids[rng.index(ids.size())];
        auto nbrs = set.neighbours(a);
        if (nbrs.empty()) continue;
        std::size_t b = nbrs[rng.index(nbrs.size())];
        auto ring = set.merged(a, b);
        if (!ring || ring->size() > kMaxPieceVertices) continue;
        if (ring_area(*ring) > max_area || badly_shaped(drop_collinear(*ring), min_area)) continue;
        set.replace(a, b, std::move(*ring));
        --wanted;
    }

    std::vector<Ring> out;
    for (std::size_t id : set.live_ids()) out.push_back(drop_collinear(set.ring(id)));
    return out;
}

Ring perturb(const Ring& ring, Rng& rng) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        Ring moved = ring;
        for (Point& p : moved) p = p + Point{rng.uniform_int(-1, 1), rng.uniform_int(-1, 1)};
        if (is_simple(moved) && twice_signed_area(moved) > 0) return moved;
    }
    return ring;
}

}  // namespace

JigsawOutput gen_jigsaw_layout(const GenConfig& cfg) {
    cfg.validate(Family::Jigsaw);
    Ring container = make_container(cfg);

    std::vector<Item> items;
    std::vector<Placement> layout;
    for (std::size_t copy = 0; copy < cfg.jigsaw_copies; ++copy) {
        std::vector<Ring> pieces = cut_pieces(cfg, container, copy);
        for (Ring& piece : pieces) {
            const std::size_t index = items.size();
            if (cfg.jigsaw_perturb) {
                Rng rng(cfg.seed, stream_id(kPerturbTag, index));
                piece = perturb(piece, rng);
            }
            Box b = bounding_box(piece);
            for (Point& p : piece) p = p - Point{b.min_x, b.min_y};
            if (copy == 0) layout.push_back({index, {b.min_x, b.min_y}});
            items.push_back(Item{Polygon::from_vertices(std::move(piece)), 1});
        }
    }

    std::string name = cfg.name.empty() ? "jigsaw_s" + std::to_string(cfg.seed) + "_c" + std::to_string(cfg.jigsaw_copies)
                                        : cfg.name;
    Instance inst{name, Polygon::from_vertices(std::move(container)), std::move(items),
                  InstanceMeta{"jigsaw", cfg.seed, {}}};
    ValueSpec spec = cfg.values;
    if (spec.seed == 0) spec.seed = cfg.seed;
    inst = assign_values(inst, spec);
    return {std::move(inst), Solution{name, std::move(layout), std::nullopt}};
}

Instance gen_jigsaw(const GenConfig& cfg) { return gen_jigsaw_layout(cfg).instance; }

}  // namespace polypack
