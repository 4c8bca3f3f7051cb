#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/instance.hpp"
#include "polypack/quadtree.hpp"

namespace polypack {

enum class Ordering { ValueDensity, ValueDesc, AreaDesc };
std::string_view to_string(Ordering ordering);
Ordering parse_ordering(std::string_view text);

// Grid: bottom-left search on a coarse-to-fine offset grid.
// Shelf: next-fit decreasing-height shelves on bounding boxes.
enum class PlacementMode { Grid, Shelf };

enum Move : unsigned {
    kInsert = 1,
    kRelocate = 2,
    kSwapPair = 4,
    kEjectChain = 8,
    kAllMoves = 15,
};

struct SolverConfig {
    Ordering ordering = Ordering::ValueDensity;
    PlacementMode mode = PlacementMode::Grid;
    int grid_levels = 4;
    // Samples per axis on the coarsest grid.
    Coord coarse_cells = 64;
    double time_budget = 10.0;  // seconds
    unsigned ls_moves = kAllMoves;
    std::uint64_t seed = 0;
    std::size_t ls_max_no_improve = 400;
    // Called with one progress line at a time; null for silence.
    std::function<void(const std::string&)> progress;
};

struct SolveStats {
    std::size_t iterations = 0;
    std::size_t accepted = 0;
    // Packed value at the start and after every accepted move.
    std::vector<std::int64_t> trace;
};

// Placed items plus the occupancy index; every state it holds is feasible.
class PackState {
public:
    explicit PackState(const Instance& instance);

    // Containment plus exact overlap against everything placed (except the
    // item itself if it is already placed).
    bool fits(std::size_t item, Point offset) const;
    void place(std::size_t item, Point offset);
    void remove(std::size_t item);

    bool placed(std::size_t item) const { return at_[item].has_value(); }
    Point offset(std::size_t item) const { return *at_[item]; }
    std::int64_t value() const { return value_; }
    const Rational& free_area() const { return free_area_; }
    std::size_t placed_count() const { return placed_count_; }
    const Instance& instance() const { return instance_; }
    const QuadTree& tree() const { return tree_; }

    // Offsets keeping the item's box inside the container's box.
    std::optional<Box> offset_range(std::size_t item) const;

    Solution to_solution() const;

private:
    const Instance& instance_;
    QuadTree tree_;
    std::vector<std::optional<Point>> at_;
    std::int64_t value_ = 0;
    Rational free_area_;
    std::size_t placed_count_ = 0;
    mutable std::vector<std::size_t> hits_;
};

std::vector<std::size_t> item_order(const Instance& instance, Ordering ordering);

// Lowest-then-leftmost feasible grid offset, refined and slid down/left.
std::optional<Point> find_bottom_left(const PackState& state, std::size_t item, const SolverConfig& cfg);

Solution solve_greedy(const Instance& instance, const SolverConfig& cfg);
// Start must verify (std::invalid_argument otherwise). Accepts only moves that
// raise the packed value.
Solution improve_local(const Instance& instance, const Solution& start, const SolverConfig& cfg,
                       SolveStats* stats = nullptr);
// Picks a strategy by instance size.
Solution solve(const Instance& instance, const SolverConfig& cfg, SolveStats* stats = nullptr);

}  // namespace polypack
