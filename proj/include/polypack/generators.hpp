#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/geom.hpp"
#include "polypack/instance.hpp"
#include "polypack/rational.hpp"
#include "polypack/rng.hpp"
#include "polypack/valuation.hpp"

namespace polypack {

enum class Family { Random, Jigsaw, Atris, Satris };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

class GenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonSimpleAfterRounding : public GenerationFailed {
public:
    using GenerationFailed::GenerationFailed;
};

// Ranges that are part of the instance families themselves, not tunables.
inline const Rational kShearMin{1, 10};
inline const Rational kShearMax{2};
inline const Rational kValueScaleMin{4, 5};
inline const Rational kValueScaleMax{6, 5};

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t n_target = 50;
    std::string name;  // empty: derived from family and seed

    // Container size; 0 derives it from n_target (atris/satris/random) or a
    // fixed default (jigsaw, rounded up to the jigsaw grid).
    Coord container_width = 0;
    Coord container_height = 0;

    // atris/satris: stop once total item area exceeds t * container area.
    // random: container is sized so total item area is about t * container area.
    Rational area_multiple_t{3, 2};

    // satris
    Rational shear_probability{1, 2};

    // random
    Rational convexity_ratio{1, 2};
    std::size_t points_min = 5;
    std::size_t points_max = 12;
    Coord item_size_min = 10;
    Coord item_size_max = 60;

    // jigsaw
    std::size_t jigsaw_line_count = 10;
    std::size_t jigsaw_copies = 2;
    bool jigsaw_perturb = true;

    // atris/satris: per-row and per-column pixel extents
    Coord pixel_min = 4;
    Coord pixel_max = 12;

    // Value assignment for random and jigsaw (atris/satris use their own rule).
    ValueSpec values;

    // Throws std::invalid_argument.
    void validate(Family family) const;
};

// key = value lines, '#' comments. Unknown keys throw std::invalid_argument.
GenConfig parse_gen_config(std::string_view text, GenConfig base = {});
// Applies one key/value pair; shared by the config file and CLI flags.
void apply_gen_option(GenConfig& cfg, std::string_view key, std::string_view value);

Instance gen_random(const GenConfig& cfg);
Instance gen_jigsaw(const GenConfig& cfg);
Instance gen_atris(const GenConfig& cfg);
Instance gen_satris(const GenConfig& cfg);
Instance generate(Family family, const GenConfig& cfg);

struct JigsawOutput {
    Instance instance;
    // Places the first copy's pieces where they were cut; a feasible tiling
    // of the container when perturbation is disabled.
    Solution layout;
};
JigsawOutput gen_jigsaw_layout(const GenConfig& cfg);

// (x, y) -> (round(x + m*y), y), ties rounded up; result re-oriented CCW.
// Throws NonSimpleAfterRounding.
Polygon shear_polygon(const Polygon& poly, const Rational& m);

// Exact image under the shear before rounding; used to check area invariance.
Rational sheared_area_unrounded(const Polygon& poly, const Rational& m);

enum class TetrisShape { Line, Squiggly, DoubleSquiggly, Y, T, L, Plus };
inline constexpr int kTetrisShapeCount = 7;

std::string_view to_string(TetrisShape shape);
Rational category_constant(TetrisShape shape);
// 6/5 * (1 + m/4): applied on top of the category constant for sheared items.
Rational shear_value_factor(const Rational& m);

// Rectangular pixels of one atris item before flipping and rotation.
struct PolyominoCells {
    TetrisShape shape = TetrisShape::Line;
    std::vector<Box> cells;
};

PolyominoCells make_polyomino(TetrisShape shape, Rng& rng, Coord pixel_min, Coord pixel_max);

// Union of the cells is one edge-connected region (checked on the
// coordinate-compressed grid).
bool cells_connected(std::span<const Box> cells);

// CCW outline of the union without collinear vertices; empty when the union
// is disconnected, has holes or pinches at a vertex.
std::optional<std::vector<Point>> trace_outline(std::span<const Box> cells);

}  // namespace polypack
