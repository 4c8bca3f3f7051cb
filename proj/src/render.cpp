#include "polypack/render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "polypack/verifier.hpp"

namespace polypack {

namespace {

constexpr const char* kPastel[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
                                   "#fdb462", "#b3de69", "#fccde5", "#bc80bd", "#ccebc5"};
constexpr const char* kGreys[] = {"#d9d9d9", "#bdbdbd", "#969696", "#f0f0f0"};

std::string fill_for(const Instance& inst, std::size_t i, int palette) {
    if (palette == 1) return kGreys[i % std::size(kGreys)];
    if (palette == 2) {
        std::int64_t lo = inst.items[0].value, hi = lo;
        for (const auto& it : inst.items) {
            lo = std::min(lo, it.value);
            hi = std::max(hi, it.value);
        }
        // Pale yellow to red, integer channel arithmetic only.
        std::int64_t t = hi == lo ? 0 : (inst.items[i].value - lo) * 255 / (hi - lo);
        std::ostringstream c;
        c << "rgb(255," << 255 - t * 3 / 4 << ',' << 204 - t * 4 / 5 << ')';
        return c.str();
    }
    return kPastel[i % std::size(kPastel)];
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

void path(std::ostream& out, const Polygon& poly, Point t, Coord flip) {
    out << "M";
    for (std::size_t k = 0; k < poly.size(); ++k) {
        Point p = poly[k] + t;
        out << (k ? " " : "") << p.x << ',' << flip - p.y;
    }
    out << "Z";
}

}  // namespace

std::string render_svg(const Instance& instance, const Solution* solution, const RenderSpec& spec) {
    if (solution && !spec.force) {
        VerifyReport rep = verify(instance, *solution);
        if (!rep.valid) {
            throw RenderOfInvalidSolution("solution does not verify (" + std::string(to_string(rep.violation->kind)) +
                                          "); pass force to draw it anyway");
        }
    }
    if (spec.scale <= 0) throw std::invalid_argument("render scale must be positive");

    const Box c = instance.container.bounds();
    std::vector<char> placed(instance.items.size(), 0);
    std::vector<std::pair<std::size_t, Point>> drawn;
    if (solution) {
        for (const Placement& p : solution->placements) {
            if (p.item_index >= instance.items.size() || placed[p.item_index]) continue;
            placed[p.item_index] = 1;
            drawn.emplace_back(p.item_index, p.offset);
        }
    }

    // Tray: unplaced items in columns to the right, bottom-aligned shelves.
    std::vector<std::pair<std::size_t, Point>> tray;
    Coord right = c.max_x;
    if (spec.tray) {
        const Coord gap = std::max<Coord>(1, c.width() / 50);
        Coord x = c.max_x + 2 * gap, y = c.min_y, col_w = 0;
        for (std::size_t i = 0; i < instance.items.size(); ++i) {
            if (placed[i]) continue;
            const Box b = instance.items[i].polygon.bounds();
            if (y > c.min_y && y + b.height() > c.max_y) {
                x += col_w + gap;
                y = c.min_y;
                col_w = 0;
            }
            tray.emplace_back(i, Point{x - b.min_x, y - b.min_y});
            y += b.height() + gap;
            col_w = std::max(col_w, b.width());
        }
        if (!tray.empty()) right = x + col_w;
    }

    Coord min_y = c.min_y, max_y = c.max_y, left = c.min_x;
    for (const auto* group : {&drawn, &tray}) {
        for (auto& [i, t] : *group) {
            const Box b = instance.items[i].polygon.bounds().translated(t);
            min_y = std::min(min_y, b.min_y);
            max_y = std::max(max_y, b.max_y);
            left = std::min(left, b.min_x);
            right = std::max(right, b.max_x);
        }
    }

    const Coord margin = std::max<Coord>(1, std::max(right - left, max_y - min_y) / 100);
    const Coord vb_x = left - margin, vb_w = right - left + 2 * margin, vb_h = max_y - min_y + 2 * margin;
    // Output y is flip - y, so the top edge maps to margin.
    const Coord flip = max_y + min_y;
    const Coord vb_y = min_y - margin;
    const Coord stroke = std::max<Coord>(1, std::max(vb_w, vb_h) / 800);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << to_fixed_string(spec.scale * vb_w, 0) << "\" height=\""
        << to_fixed_string(spec.scale * vb_h, 0) << "\" viewBox=\"" << vb_x << ' ' << vb_y << ' ' << vb_w << ' ' << vb_h << "\">\n";
    out << "<title>" << xml_escape(instance.name) << "</title>\n";
    out << "<path id=\"container\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" << 2 * stroke << "\" d=\"";
    path(out, instance.container, {0, 0}, flip);
    out << "\"/>\n";
    out << "<g id=\"placed\" stroke=\"#333333\" stroke-width=\"" << stroke << "\">\n";
    std::sort(drawn.begin(), drawn.end());
    for (auto& [i, t] : drawn) {
        out << "<path data-item=\"" << i << "\" fill=\"" << fill_for(instance, i, spec.palette) << "\" d=\"";
        path(out, instance.items[i].polygon, t, flip);
        out << "\"/>\n";
    }
    out << "</g>\n";
    if (!tray.empty()) {
        out << "<g id=\"tray\" stroke=\"#999999\" stroke-width=\"" << stroke << "\" fill-opacity=\"0.5\">\n";
        for (auto& [i, t] : tray) {
            out << "<path data-item=\"" << i << "\" fill=\"" << fill_for(instance, i, spec.palette) << "\" d=\"";
            path(out, instance.items[i].polygon, t, flip);
            out << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace polypack
