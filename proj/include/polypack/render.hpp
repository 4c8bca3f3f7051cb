#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "polypack/instance.hpp"

namespace polypack {

class RenderOfInvalidSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RenderSpec {
    // Pixels per grid unit; the viewBox stays in grid units.
    Rational scale = 1;
    int palette = 0;  // 0: pastel, 1: greys, 2: value heat
    // Draw unplaced items in a strip to the right of the container.
    bool tray = false;
    // Draw even if the solution does not verify.
    bool force = false;
};

// Deterministic SVG; y grows upwards in grid space and is flipped on output.
std::string render_svg(const Instance& instance, const Solution* solution, const RenderSpec& spec);

}  // namespace polypack
