#include "polypack/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace polypack {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kInstanceType = "cgshop2024_instance";
constexpr std::string_view kSolutionType = "cgshop2024_solution";

[[noreturn]] void schema_error(const std::string& what) {
    throw ValidationError(ValidationError::Reason::Schema, what);
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(std::string("missing key '") + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_string()) schema_error(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::int64_t require_integer(const json& v, const std::string& where) {
    // Floats are rejected even when integral ("3.0").
    if (!v.is_number_integer()) schema_error(where + " must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ValidationError(ValidationError::Reason::CoordinateOverflow, where + " exceeds 64-bit range");
    }
    return v.get<std::int64_t>();
}

std::vector<std::int64_t> require_int_array(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_array()) schema_error(std::string("'") + key + "' must be an array");
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(require_integer(e, std::string("element of '") + key + "'"));
    return out;
}

Polygon parse_polygon(const json& obj, const std::string& what, std::size_t index) {
    if (!obj.is_object()) schema_error(what + " must be an object");
    auto xs = require_int_array(obj, "x");
    auto ys = require_int_array(obj, "y");
    if (xs.size() != ys.size()) schema_error(what + ": x and y lengths differ");
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
    try {
        return Polygon::from_vertices(std::move(pts));
    } catch (const GeometryError& e) {
        std::vector<std::size_t> items;
        if (what != "container") items.push_back(index);
        switch (e.kind()) {
            case GeometryError::Kind::CoordinateOverflow:
                throw ValidationError(ValidationError::Reason::CoordinateOverflow, what + ": " + e.what(), items);
            case GeometryError::Kind::NotCounterclockwise:
                throw ValidationError(ValidationError::Reason::NotCounterclockwise, what + ": " + e.what(), items);
            case GeometryError::Kind::TooFewVertices:
                throw ValidationError(ValidationError::Reason::Schema, what + ": " + e.what(), items);
            default:
                throw ValidationError(ValidationError::Reason::NonSimple, what + ": " + e.what(), items);
        }
    }
}

json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

ordered_json polygon_json(const Polygon& poly) {
    ordered_json xs = ordered_json::array();
    ordered_json ys = ordered_json::array();
    for (Point p : poly.vertices()) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    ordered_json out = ordered_json::object();
    out["x"] = std::move(xs);
    out["y"] = std::move(ys);
    return out;
}

}  // namespace

std::string_view to_string(ValidationError::Reason reason) {
    switch (reason) {
        case ValidationError::Reason::Schema: return "schema";
        case ValidationError::Reason::NonSimple: return "non-simple";
        case ValidationError::Reason::NotCounterclockwise: return "not-counterclockwise";
        case ValidationError::Reason::NonConvexContainer: return "non-convex-container";
        case ValidationError::Reason::CoordinateOverflow: return "coordinate-overflow";
        case ValidationError::Reason::NonPositiveValue: return "non-positive-value";
        case ValidationError::Reason::ValueOverflow: return "value-overflow";
        case ValidationError::Reason::DuplicateItem: return "duplicate-item";
    }
    return "unknown";
}

std::int64_t Instance::total_value() const {
    std::int64_t sum = 0;
    for (const Item& item : items) sum += item.value;
    return sum;
}

void validate_instance(const Instance& instance) {
    // Polygon construction already guarantees simplicity, orientation and the coordinate cap.
    if (!is_convex(instance.container.vertices())) {
        throw ValidationError(ValidationError::Reason::NonConvexContainer, "container is not convex");
    }
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        std::int64_t v = instance.items[i].value;
        if (v < 1) {
            throw ValidationError(ValidationError::Reason::NonPositiveValue,
                                  "item " + std::to_string(i) + " has non-positive value", {i});
        }
        if (v >= kValueSumLimit || sum >= kValueSumLimit - v) {
            throw ValidationError(ValidationError::Reason::ValueOverflow, "sum of item values reaches 2^40", {i});
        }
        sum += v;
    }
}

Instance read_instance(std::string_view bytes) {
    json doc = parse_json(bytes);
    if (!doc.is_object()) schema_error("instance must be a JSON object");
    if (require_string(doc, "type") != kInstanceType) schema_error("type must be cgshop2024_instance");

    std::string name = require_string(doc, "name");
    Polygon container = parse_polygon(require(doc, "container"), "container", 0);

    const json& items_json = require(doc, "items");
    if (!items_json.is_array()) schema_error("'items' must be an array");
    std::vector<Item> items;
    items.reserve(items_json.size());
    for (std::size_t i = 0; i < items_json.size(); ++i) {
        const json& it = items_json[i];
        std::string what = "item " + std::to_string(i);
        Polygon poly = parse_polygon(it, what, i);
        std::int64_t value = require_integer(require(it, "value"), what + " value");
        items.push_back(Item{std::move(poly), value});
    }

    std::optional<InstanceMeta> meta;
    if (auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object()) schema_error("'meta' must be an object");
        InstanceMeta m;
        m.generator = require_string(*it, "generator");
        const json& seed = require(*it, "seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            schema_error("meta seed must be a non-negative integer");
        }
        m.seed = seed.get<std::uint64_t>();
        if (auto vf = it->find("value_function"); vf != it->end()) {
            if (!vf->is_string()) schema_error("meta value_function must be a string");
            m.value_function = vf->get<std::string>();
        }
        meta = std::move(m);
    }

    Instance instance{std::move(name), std::move(container), std::move(items), std::move(meta)};
    validate_instance(instance);
    return instance;
}

std::string write_instance(const Instance& instance) {
    ordered_json doc = ordered_json::object();
    doc["type"] = kInstanceType;
    doc["name"] = instance.name;
    doc["container"] = polygon_json(instance.container);
    ordered_json items = ordered_json::array();
    for (const Item& item : instance.items) {
        ordered_json it = polygon_json(item.polygon);
        it["value"] = item.value;
        items.push_back(std::move(it));
    }
    doc["items"] = std::move(items);
    if (instance.meta) {
        ordered_json m = ordered_json::object();
        m["generator"] = instance.meta->generator;
        m["seed"] = instance.meta->seed;
        if (!instance.meta->value_function.empty()) m["value_function"] = instance.meta->value_function;
        doc["meta"] = std::move(m);
    }
    return doc.dump() + "\n";
}

Solution read_solution(std::string_view bytes, bool allow_duplicates) {
    json doc = parse_json(bytes);
    if (!doc.is_object()) schema_error("solution must be a JSON object");
    if (require_string(doc, "type") != kSolutionType) schema_error("type must be cgshop2024_solution");

    Solution sol;
    sol.instance_name = require_string(doc, "instance_name");
    auto indices = require_int_array(doc, "item_indices");
    auto xs = require_int_array(doc, "x_translations");
    auto ys = require_int_array(doc, "y_translations");
    if (indices.size() != xs.size() || indices.size() != ys.size()) {
        schema_error("item_indices, x_translations and y_translations lengths differ");
    }
    sol.placements.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0) schema_error("negative item index");
        Point offset{xs[i], ys[i]};
        if (!within_coord_limit(offset)) {
            throw ValidationError(ValidationError::Reason::CoordinateOverflow, "translation exceeds 2^50",
                                  {static_cast<std::size_t>(indices[i])});
        }
        sol.placements.push_back({static_cast<std::size_t>(indices[i]), offset});
    }

    std::vector<std::size_t> sorted;
    sorted.reserve(indices.size());
    for (const Placement& p : sol.placements) sorted.push_back(p.item_index);
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); !allow_duplicates && dup != sorted.end()) {
        throw ValidationError(ValidationError::Reason::DuplicateItem,
                              "duplicate item index " + std::to_string(*dup), {*dup});
    }

    if (auto it = doc.find("submitted_at"); it != doc.end()) {
        if (!it->is_string()) schema_error("'submitted_at' must be a string");
        sol.submitted_at = it->get<std::string>();
    }
    return sol;
}

std::string write_solution(const Solution& solution) {
    ordered_json doc = ordered_json::object();
    doc["type"] = kSolutionType;
    doc["instance_name"] = solution.instance_name;
    ordered_json idx = ordered_json::array();
    ordered_json xs = ordered_json::array();
    ordered_json ys = ordered_json::array();
    for (const Placement& p : solution.placements) {
        idx.push_back(p.item_index);
        xs.push_back(p.offset.x);
        ys.push_back(p.offset.y);
    }
    doc["item_indices"] = std::move(idx);
    doc["x_translations"] = std::move(xs);
    doc["y_translations"] = std::move(ys);
    if (solution.submitted_at) doc["submitted_at"] = *solution.submitted_at;
    return doc.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Instance load_instance_file(const std::string& path) {
    return read_instance(read_text_file(path));
}

Solution load_solution_file(const std::string& path, bool allow_duplicates) {
    return read_solution(read_text_file(path), allow_duplicates);
}

}  // namespace polypack
