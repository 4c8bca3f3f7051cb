#include "polypack/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "polypack/rng.hpp"

namespace polypack {

namespace {

constexpr std::uint32_t kLocalSearchTag = 0x4C53;
constexpr std::uint32_t kPermutationTag = 0x5045;
constexpr std::size_t kMemoryLimit = 1'000'000;
constexpr int kInsertSamples = 24;

class Deadline {
public:
    explicit Deadline(double seconds)
        : end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))) {}
    bool expired() const { return std::chrono::steady_clock::now() >= end_; }

private:
    std::chrono::steady_clock::time_point end_;
};

Coord ceil_div(Coord a, Coord b) { return (a + b - 1) / b; }

std::vector<Coord> samples(Coord lo, Coord hi, Coord step) {
    std::vector<Coord> out;
    for (Coord v = lo; v < hi; v += step) out.push_back(v);
    out.push_back(hi);
    return out;
}

// Slides the item down, then left, halving the stride when blocked.
Point compact(const PackState& st, std::size_t item, Point t, Coord stride) {
    for (int round = 0; round < 64; ++round) {
        bool moved = false;
        for (Point dir : {Point{0, -1}, Point{-1, 0}}) {
            for (Coord s = stride; s >= 1; s /= 2) {
                while (true) {
                    Point next{t.x + dir.x * s, t.y + dir.y * s};
                    if (!st.fits(item, next)) break;
                    t = next;
                    moved = true;
                }
            }
        }
        if (!moved) break;
    }
    return t;
}

std::uint64_t probe_key(std::size_t item, Point t) {
    std::uint64_t h = Rng::mix64(item * 0x9E3779B97F4A7C15ULL);
    h = Rng::mix64(h ^ static_cast<std::uint64_t>(t.x));
    return Rng::mix64(h ^ static_cast<std::uint64_t>(t.y) * 0xC2B2AE3D27D4EB4FULL);
}

// Failed (item, offset) probes. Placing items only removes free space, so a
// failure stays a failure until something is removed; the owner clears it then.
class ProbeMemory {
public:
    bool seen(std::uint64_t key) const { return keys_.count(key) != 0; }
    void add(std::uint64_t key) {
        if (!keys_.insert(key).second) return;
        order_.push_back(key);
        if (order_.size() > kMemoryLimit) {
            keys_.erase(order_.front());
            order_.pop_front();
        }
    }
    void clear() {
        keys_.clear();
        order_.clear();
    }

private:
    std::unordered_set<std::uint64_t> keys_;
    std::deque<std::uint64_t> order_;
};

void shelf_pack(PackState& st, const std::vector<std::size_t>& order, const Deadline& deadline) {
    const Instance& inst = st.instance();
    const Box c = inst.container.bounds();
    Coord shelf_y = c.min_y, shelf_h = 0, cursor = c.min_x;
    // First feasible x on the current shelf at or right of the cursor. In a
    // rectangle that is the cursor itself; other containers cut the corners.
    auto scan = [&](std::size_t i, const Box& b) -> std::optional<Point> {
        if (shelf_y + b.height() > c.max_y) return std::nullopt;
        const Coord stride = std::max<Coord>(1, b.width() / 8);
        for (Coord x = cursor; x + b.width() <= c.max_x; x += stride) {
            Point t{x - b.min_x, shelf_y - b.min_y};
            if (st.fits(i, t)) return t;
        }
        return std::nullopt;
    };
    for (std::size_t i : order) {
        if (deadline.expired()) break;
        const Box b = inst.items[i].polygon.bounds();
        if (b.width() > c.width() || b.height() > c.height()) continue;
        auto t = scan(i, b);
        if (!t && shelf_h > 0) {
            shelf_y += shelf_h;
            shelf_h = 0;
            cursor = c.min_x;
            t = scan(i, b);
        }
        if (!t && shelf_h == 0) {
            // Empty shelf in a tapering container: lift it until the item fits.
            const Coord keep = shelf_y;
            for (Coord lift = std::max<Coord>(1, b.height() / 4); !t && shelf_y + lift + b.height() <= c.max_y;) {
                shelf_y += lift;
                t = scan(i, b);
            }
            if (!t) shelf_y = keep;
        }
        if (!t) continue;
        st.place(i, *t);
        cursor = t->x + b.max_x;
        shelf_h = std::max(shelf_h, b.height());
    }
}

void greedy_fill(PackState& st, const std::vector<std::size_t>& order, const SolverConfig& cfg, const Deadline& deadline) {
    for (std::size_t i : order) {
        if (deadline.expired()) break;
        if (st.placed(i) || st.instance().items[i].polygon.area() > st.free_area()) continue;
        if (auto t = find_bottom_left(st, i, cfg)) st.place(i, *t);
    }
}

PackState state_from(const Instance& inst, const Solution& sol) {
    PackState st(inst);
    for (const Placement& p : sol.placements) {
        if (p.item_index >= inst.items.size() || st.placed(p.item_index) || !st.fits(p.item_index, p.offset)) {
            throw std::invalid_argument("start solution does not verify");
        }
        st.place(p.item_index, p.offset);
    }
    return st;
}

class LocalSearch {
public:
    LocalSearch(PackState& st, const SolverConfig& cfg, const Deadline& deadline, SolveStats& stats)
        : st_(st), cfg_(cfg), deadline_(deadline), stats_(stats), rng_(cfg.seed, stream_id(kLocalSearchTag, 0)),
          grid_version_(st.instance().items.size(), static_cast<std::uint64_t>(-1)) {
        if (cfg_.ls_moves & kInsert) moves_.push_back(kInsert);
        if (cfg_.ls_moves & kRelocate) moves_.push_back(kRelocate);
        if (cfg_.ls_moves & kSwapPair) moves_.push_back(kSwapPair);
        if (cfg_.ls_moves & kEjectChain) moves_.push_back(kEjectChain);
    }

    void run() {
        stats_.trace.push_back(st_.value());
        if (moves_.empty()) return;
        std::size_t idle = 0;
        while (idle < cfg_.ls_max_no_improve && !deadline_.expired()) {
            refresh_lists();
            if (unplaced_.empty()) break;
            ++stats_.iterations;
            const std::int64_t before = st_.value();
            bool ok = false;
            switch (moves_[rng_.index(moves_.size())]) {
                case kInsert: ok = try_insert(); break;
                case kRelocate: ok = try_relocate(); break;
                case kSwapPair: ok = try_swap(); break;
                case kEjectChain: ok = try_eject_chain(); break;
                default: break;
            }
            if (ok && st_.value() > before) {
                ++stats_.accepted;
                stats_.trace.push_back(st_.value());
                idle = 0;
                if (cfg_.progress && stats_.accepted % 25 == 0) {
                    cfg_.progress("ls iteration " + std::to_string(stats_.iterations) + " value " + std::to_string(st_.value()));
                }
            } else {
                ++idle;
            }
        }
    }

private:
    void refresh_lists() {
        unplaced_.clear();
        placed_.clear();
        for (std::size_t i = 0; i < st_.instance().items.size(); ++i) (st_.placed(i) ? placed_ : unplaced_).push_back(i);
    }

    // Something was removed for good: old failures may now succeed.
    void space_freed() {
        memory_.clear();
        ++version_;
    }

    bool fits_sampled(std::size_t item, Point& out) {
        auto range = st_.offset_range(item);
        if (!range) return false;
        for (int k = 0; k < kInsertSamples; ++k) {
            Point t{rng_.uniform_int(range->min_x, range->max_x), rng_.uniform_int(range->min_y, range->max_y)};
            std::uint64_t key = probe_key(item, t);
            if (memory_.seen(key)) continue;
            if (st_.fits(item, t)) {
                Coord stride = std::max<Coord>(1, std::max(range->width(), range->height()) / 64);
                out = compact(st_, item, t, stride);
                return true;
            }
            memory_.add(key);
        }
        return false;
    }

    bool try_insert() {
        std::size_t item = unplaced_[rng_.index(unplaced_.size())];
        if (st_.instance().items[item].polygon.area() > st_.free_area()) return false;
        Point t;
        if (fits_sampled(item, t)) {
            st_.place(item, t);
            return true;
        }
        // Full grid search only once per item between removals.
        if (grid_version_[item] == version_) return false;
        grid_version_[item] = version_;
        if (auto g = find_bottom_left(st_, item, cfg_)) {
            st_.place(item, *g);
            return true;
        }
        return false;
    }

    std::optional<Point> place_anywhere(std::size_t item) {
        if (st_.instance().items[item].polygon.area() > st_.free_area()) return std::nullopt;
        auto t = find_bottom_left(st_, item, cfg_);
        if (t) st_.place(item, *t);
        return t;
    }

    bool try_relocate() {
        if (placed_.empty()) return false;
        std::size_t p = placed_[rng_.index(placed_.size())];
        Point old = st_.offset(p);
        st_.remove(p);
        Point moved = compact(st_, p, old, 16);
        if (moved == old) {
            Point t;
            auto range = st_.offset_range(p);
            bool found = false;
            for (int k = 0; k < kInsertSamples && !found && range; ++k) {
                t = {rng_.uniform_int(range->min_x, range->max_x), rng_.uniform_int(range->min_y, range->max_y)};
                if (t != old && st_.fits(p, t)) found = true;
            }
            if (!found) {
                st_.place(p, old);
                return false;
            }
            moved = compact(st_, p, t, 16);
        }
        st_.place(p, moved);
        std::size_t u = unplaced_[rng_.index(unplaced_.size())];
        if (place_anywhere(u)) {
            space_freed();
            return true;
        }
        st_.remove(p);
        st_.place(p, old);
        return false;
    }

    bool try_swap() {
        if (placed_.empty()) return false;
        std::size_t p = placed_[rng_.index(placed_.size())];
        const auto& items = st_.instance().items;
        // Prefer a more valuable partner; otherwise two partners must beat p together.
        std::vector<std::size_t> richer;
        for (std::size_t u : unplaced_)
            if (items[u].value > items[p].value) richer.push_back(u);
        Point old = st_.offset(p);
        st_.remove(p);
        std::vector<std::size_t> added;
        std::int64_t gain = 0;
        std::size_t u1 = richer.empty() ? unplaced_[rng_.index(unplaced_.size())] : richer[rng_.index(richer.size())];
        if (place_anywhere(u1)) {
            added.push_back(u1);
            gain += items[u1].value;
        }
        if (gain <= items[p].value && unplaced_.size() > 1) {
            std::size_t u2 = unplaced_[rng_.index(unplaced_.size())];
            if (u2 != u1 && place_anywhere(u2)) {
                added.push_back(u2);
                gain += items[u2].value;
            }
        }
        if (gain > items[p].value) {
            space_freed();
            return true;
        }
        if (gain > 0 && st_.fits(p, old)) {
            // Partners went elsewhere; keep them and p.
            st_.place(p, old);
            return true;
        }
        for (std::size_t a : added) st_.remove(a);
        st_.place(p, old);
        return false;
    }

    bool try_eject_chain() {
        if (placed_.empty()) return false;
        const auto& items = st_.instance().items;
        std::size_t p1 = placed_[rng_.index(placed_.size())];
        Box b = items[p1].polygon.bounds().translated(st_.offset(p1));
        Coord pad = std::max<Coord>(1, std::max(b.width(), b.height()) / 2);
        std::vector<std::size_t> near;
        st_.tree().query({b.min_x - pad, b.min_y - pad, b.max_x + pad, b.max_y + pad}, near);
        near.erase(std::remove(near.begin(), near.end(), p1), near.end());
        std::sort(near.begin(), near.end());

        std::vector<std::pair<std::size_t, Point>> ejected{{p1, st_.offset(p1)}};
        if (!near.empty()) {
            std::size_t p2 = near[rng_.index(near.size())];
            ejected.emplace_back(p2, st_.offset(p2));
        }
        std::int64_t lost = 0;
        for (auto& [i, t] : ejected) {
            lost += items[i].value;
            st_.remove(i);
        }
        std::vector<std::size_t> added;
        std::int64_t gain = 0;
        std::size_t u = unplaced_[rng_.index(unplaced_.size())];
        if (place_anywhere(u)) {
            added.push_back(u);
            gain += items[u].value;
        }
        for (auto& [i, t] : ejected) {
            if (place_anywhere(i)) {
                added.push_back(i);
                gain += items[i].value;
            }
        }
        if (gain > lost) {
            space_freed();
            return true;
        }
        for (std::size_t a : added) st_.remove(a);
        for (auto& [i, t] : ejected) st_.place(i, t);
        return false;
    }

    PackState& st_;
    const SolverConfig& cfg_;
    const Deadline& deadline_;
    SolveStats& stats_;
    Rng rng_;
    ProbeMemory memory_;
    std::uint64_t version_ = 0;
    std::vector<std::uint64_t> grid_version_;
    std::vector<unsigned> moves_;
    std::vector<std::size_t> unplaced_, placed_;
};

}  // namespace

std::string_view to_string(Ordering ordering) {
    switch (ordering) {
        case Ordering::ValueDensity: return "value-density";
        case Ordering::ValueDesc: return "value";
        case Ordering::AreaDesc: return "area";
    }
    return "value-density";
}

Ordering parse_ordering(std::string_view text) {
    if (text == "value-density" || text == "density") return Ordering::ValueDensity;
    if (text == "value") return Ordering::ValueDesc;
    if (text == "area") return Ordering::AreaDesc;
    throw std::invalid_argument("unknown ordering '" + std::string(text) + "' (value-density, value, area)");
}

PackState::PackState(const Instance& instance)
    : instance_(instance), tree_(instance.container.bounds()), at_(instance.items.size()),
      free_area_(instance.container.area()) {}

bool PackState::fits(std::size_t item, Point offset) const {
    if (!within_coord_limit(offset)) return false;
    const Polygon& poly = instance_.items[item].polygon;
    if (!contained_in_convex(instance_.container, poly, offset)) return false;
    hits_.clear();
    tree_.query(poly.bounds().translated(offset), hits_);
    for (std::size_t j : hits_) {
        if (j == item) continue;
        if (interiors_overlap(poly, offset, instance_.items[j].polygon, *at_[j])) return false;
    }
    return true;
}

void PackState::place(std::size_t item, Point offset) {
    at_[item] = offset;
    tree_.insert(item, instance_.items[item].polygon.bounds().translated(offset));
    value_ += instance_.items[item].value;
    free_area_ -= instance_.items[item].polygon.area();
    ++placed_count_;
}

void PackState::remove(std::size_t item) {
    tree_.remove(item, instance_.items[item].polygon.bounds().translated(*at_[item]));
    at_[item].reset();
    value_ -= instance_.items[item].value;
    free_area_ += instance_.items[item].polygon.area();
    --placed_count_;
}

std::optional<Box> PackState::offset_range(std::size_t item) const {
    const Box c = instance_.container.bounds();
    const Box b = instance_.items[item].polygon.bounds();
    Box r{c.min_x - b.min_x, c.min_y - b.min_y, c.max_x - b.max_x, c.max_y - b.max_y};
    if (r.min_x > r.max_x || r.min_y > r.max_y) return std::nullopt;
    return r;
}

Solution PackState::to_solution() const {
    Solution sol{instance_.name, {}, std::nullopt};
    for (std::size_t i = 0; i < at_.size(); ++i)
        if (at_[i]) sol.placements.push_back({i, *at_[i]});
    return sol;
}

std::vector<std::size_t> item_order(const Instance& instance, Ordering ordering) {
    const auto& items = instance.items;
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Rational> key(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        switch (ordering) {
            case Ordering::ValueDensity: key[i] = Rational(items[i].value) / items[i].polygon.area(); break;
            case Ordering::ValueDesc: key[i] = items[i].value; break;
            case Ordering::AreaDesc: key[i] = items[i].polygon.area(); break;
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    return order;
}

std::optional<Point> find_bottom_left(const PackState& st, std::size_t item, const SolverConfig& cfg) {
    auto range = st.offset_range(item);
    if (!range) return std::nullopt;
    const Box r = *range;
    Coord step = std::max<Coord>(1, ceil_div(std::max(r.width(), r.height()), std::max<Coord>(1, cfg.coarse_cells)));

    std::optional<Point> best;
    for (Coord y : samples(r.min_y, r.max_y, step)) {
        for (Coord x : samples(r.min_x, r.max_x, step)) {
            if (st.fits(item, {x, y})) {
                best = Point{x, y};
                break;
            }
        }
        if (best) break;
    }
    if (!best) return std::nullopt;

    for (int level = 1; level < cfg.grid_levels && step > 1; ++level) {
        Coord fine = std::max<Coord>(1, step / 2);
        Box w{std::max(r.min_x, best->x - step), std::max(r.min_y, best->y - step), std::min(r.max_x, best->x + step), best->y};
        bool found = false;
        for (Coord y = w.min_y; y <= w.max_y && !found; y += fine) {
            for (Coord x = w.min_x; x <= w.max_x; x += fine) {
                if (Point p{x, y}; (p.y < best->y || (p.y == best->y && p.x < best->x)) && st.fits(item, p)) {
                    best = p;
                    found = true;
                    break;
                }
            }
        }
        step = fine;
    }
    return compact(st, item, *best, step);
}

Solution solve_greedy(const Instance& instance, const SolverConfig& cfg) {
    Deadline deadline(cfg.time_budget);
    PackState st(instance);
    auto order = item_order(instance, cfg.ordering);
    if (cfg.mode == PlacementMode::Shelf) {
        // Decreasing height; the ordering only breaks ties.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return instance.items[a].polygon.bounds().height() > instance.items[b].polygon.bounds().height();
        });
        shelf_pack(st, order, deadline);
    } else {
        greedy_fill(st, order, cfg, deadline);
    }
    if (cfg.progress) cfg.progress("greedy placed " + std::to_string(st.placed_count()) + " value " + std::to_string(st.value()));
    return st.to_solution();
}

Solution improve_local(const Instance& instance, const Solution& start, const SolverConfig& cfg, SolveStats* stats) {
    if (start.instance_name != instance.name) throw std::invalid_argument("start solution is for another instance");
    Deadline deadline(cfg.time_budget);
    PackState st = state_from(instance, start);
    SolveStats local;
    LocalSearch ls(st, cfg, deadline, stats ? *stats : local);
    ls.run();
    return st.to_solution();
}

Solution solve(const Instance& instance, const SolverConfig& cfg, SolveStats* stats) {
    const std::size_t n = instance.items.size();
    if (n == 0) return Solution{instance.name, {}, std::nullopt};
    auto started = std::chrono::steady_clock::now();
    auto remaining = [&] {
        double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return std::max(0.0, cfg.time_budget - used);
    };

    SolverConfig phase = cfg;
    Solution best{instance.name, {}, std::nullopt};
    std::int64_t best_value = -1;
    auto consider = [&](const Solution& s) {
        std::int64_t v = 0;
        for (const auto& p : s.placements) v += instance.items[p.item_index].value;
        if (v > best_value) {
            best_value = v;
            best = s;
        }
    };

    if (n <= 25) {
        // Every ordering plus a batch of seeded permutations.
        phase.time_budget = remaining() / 2;
        for (Ordering o : {Ordering::ValueDensity, Ordering::ValueDesc, Ordering::AreaDesc}) {
            phase.ordering = o;
            consider(solve_greedy(instance, phase));
        }
        Deadline perms(remaining() / 2);
        for (std::uint64_t k = 0; k < 40 && !perms.expired(); ++k) {
            Rng rng(cfg.seed, stream_id(kPermutationTag, k));
            auto order = item_order(instance, cfg.ordering);
            for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
            PackState st(instance);
            greedy_fill(st, order, cfg, perms);
            consider(st.to_solution());
        }
        phase = cfg;
    } else {
        phase.time_budget = remaining();
        best = solve_greedy(instance, phase);
    }

    phase.time_budget = remaining();
    if (n > 5000) phase.ls_moves = cfg.ls_moves & kInsert;
    return improve_local(instance, best, phase, stats);
}

}  // namespace polypack
