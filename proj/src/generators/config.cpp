#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>

#include "polypack/generators.hpp"

namespace polypack {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
    std::string s(v);
    std::size_t used = 0;
    unsigned long long out = 0;
    try {
        if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
        out = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("option '" + std::string(key) + "' expects a non-negative integer, got '" + s + "'");
    }
    if (used != s.size()) {
        throw std::invalid_argument("option '" + std::string(key) + "' expects a non-negative integer, got '" + s + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("option '" + std::string(key) + "' expects a boolean");
}

Rational parse_rat(std::string_view key, std::string_view v) {
    try {
        return parse_rational(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("option '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Random: return "random";
        case Family::Jigsaw: return "jigsaw";
        case Family::Atris: return "atris";
        case Family::Satris: return "satris";
    }
    return "random";
}

Family parse_family(std::string_view text) {
    if (text == "random") return Family::Random;
    if (text == "jigsaw") return Family::Jigsaw;
    if (text == "atris") return Family::Atris;
    if (text == "satris") return Family::Satris;
    throw std::invalid_argument("unknown generator family: " + std::string(text));
}

void apply_gen_option(GenConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "n" || key == "n_target") cfg.n_target = parse_u64(key, value);
    else if (key == "name") cfg.name = std::string(value);
    else if (key == "container_width") cfg.container_width = static_cast<Coord>(parse_u64(key, value));
    else if (key == "container_height") cfg.container_height = static_cast<Coord>(parse_u64(key, value));
    else if (key == "t" || key == "area_multiple_t") cfg.area_multiple_t = parse_rat(key, value);
    else if (key == "shear_probability") cfg.shear_probability = parse_rat(key, value);
    else if (key == "convexity_ratio") cfg.convexity_ratio = parse_rat(key, value);
    else if (key == "points_min") cfg.points_min = parse_u64(key, value);
    else if (key == "points_max") cfg.points_max = parse_u64(key, value);
    else if (key == "item_size_min") cfg.item_size_min = static_cast<Coord>(parse_u64(key, value));
    else if (key == "item_size_max") cfg.item_size_max = static_cast<Coord>(parse_u64(key, value));
    else if (key == "jigsaw_line_count" || key == "jigsaw_lines") cfg.jigsaw_line_count = parse_u64(key, value);
    else if (key == "jigsaw_copies") cfg.jigsaw_copies = parse_u64(key, value);
    else if (key == "jigsaw_perturb") cfg.jigsaw_perturb = parse_bool(key, value);
    else if (key == "pixel_min") cfg.pixel_min = static_cast<Coord>(parse_u64(key, value));
    else if (key == "pixel_max") cfg.pixel_max = static_cast<Coord>(parse_u64(key, value));
    else if (key == "value_function") cfg.values.kind = parse_value_kind(value);
    else if (key == "noise") cfg.values.noise = parse_rat(key, value);
    else if (key == "value_scale") cfg.values.global_scale = parse_rat(key, value);
    else if (key == "value_seed") cfg.values.seed = parse_u64(key, value);
    else if (key == "reveal_value_function") cfg.values.reveal = parse_bool(key, value);
    else throw std::invalid_argument("unknown generator option '" + std::string(key) + "'");
}

GenConfig parse_gen_config(std::string_view text, GenConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_gen_option(base, trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
    }
    return base;
}

void GenConfig::validate(Family family) const {
    require(container_width >= 0 && container_height >= 0, "container dimensions must be non-negative");
    require(container_width <= (Coord{1} << 40) && container_height <= (Coord{1} << 40), "container too large");
    switch (family) {
        case Family::Random:
            require(n_target >= 1 && n_target <= 200000, "n must lie in [1, 200000]");
            require(area_multiple_t > 0 && area_multiple_t <= 16, "t must lie in (0, 16] for random instances");
            require(convexity_ratio >= 0 && convexity_ratio <= 1, "convexity_ratio must lie in [0, 1]");
            require(points_min >= 3 && points_min <= points_max && points_max <= 1000, "need 3 <= points_min <= points_max <= 1000");
            require(item_size_min >= 2 && item_size_min <= item_size_max && item_size_max <= (Coord{1} << 30),
                    "need 2 <= item_size_min <= item_size_max");
            break;
        case Family::Jigsaw:
            require(jigsaw_line_count >= 1 && jigsaw_line_count <= 200, "jigsaw_line_count must lie in [1, 200]");
            require(jigsaw_copies >= 1 && jigsaw_copies <= 100, "jigsaw_copies must lie in [1, 100]");
            break;
        case Family::Atris:
        case Family::Satris:
            require(n_target >= 1 && n_target <= 100000, "n must lie in [1, 100000]");
            require(area_multiple_t >= 1 && area_multiple_t <= 2, "t must lie in [1, 2]");
            require(pixel_min >= 1 && pixel_min <= pixel_max && pixel_max <= 1000000, "need 1 <= pixel_min <= pixel_max <= 10^6");
            require(shear_probability >= 0 && shear_probability <= 1, "shear_probability must lie in [0, 1]");
            break;
    }
}

Rational sheared_area_unrounded(const Polygon& poly, const Rational& m) {
    // Shoelace over exact rational images.
    auto v = poly.vertices();
    Rational sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point a = v[i];
        Point b = v[(i + 1) % v.size()];
        Rational ax = Rational(a.x) + m * a.y;
        Rational bx = Rational(b.x) + m * b.y;
        sum += ax * b.y - bx * a.y;
    }
    return sum / 2;
}

Polygon shear_polygon(const Polygon& poly, const Rational& m) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (Point p : poly.vertices()) {
        BigInt x = round_half_up(Rational(p.x) + m * p.y);
        out.push_back({x.convert_to<Coord>(), p.y});
    }
    try {
        return Polygon::normalized(std::move(out));
    } catch (const GeometryError& e) {
        throw NonSimpleAfterRounding(std::string("shear produced an invalid polygon: ") + e.what());
    }
}

Instance generate(Family family, const GenConfig& cfg) {
    switch (family) {
        case Family::Random: return gen_random(cfg);
        case Family::Jigsaw: return gen_jigsaw(cfg);
        case Family::Atris: return gen_atris(cfg);
        case Family::Satris: return gen_satris(cfg);
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace polypack
