#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/geom.hpp"

namespace polypack {

// Item values and their sum stay below this bound so they survive a round
// trip through IEEE doubles.
inline constexpr std::int64_t kValueSumLimit = std::int64_t{1} << 40;

struct Item {
    Polygon polygon;
    std::int64_t value = 1;

    friend bool operator==(const Item&, const Item&) = default;
};

struct InstanceMeta {
    std::string generator;
    std::uint64_t seed = 0;
    // Empty when the value function is withheld from participants.
    std::string value_function;

    friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct Instance {
    std::string name;
    Polygon container;
    std::vector<Item> items;
    std::optional<InstanceMeta> meta;

    std::int64_t total_value() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct Placement {
    std::size_t item_index = 0;
    Point offset;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Solution {
    std::string instance_name;
    std::vector<Placement> placements;
    // ISO-8601 instant, carried through unchanged.
    std::optional<std::string> submitted_at;

    friend bool operator==(const Solution&, const Solution&) = default;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    enum class Reason {
        Schema,
        NonSimple,
        NotCounterclockwise,
        NonConvexContainer,
        CoordinateOverflow,
        NonPositiveValue,
        ValueOverflow,
        DuplicateItem,
    };

    ValidationError(Reason reason, const std::string& what, std::vector<std::size_t> items = {})
        : std::runtime_error(what), reason_(reason), items_(std::move(items)) {}

    Reason reason() const { return reason_; }
    const std::vector<std::size_t>& items() const { return items_; }

private:
    Reason reason_;
    std::vector<std::size_t> items_;
};

std::string_view to_string(ValidationError::Reason reason);

// Enforces every Instance invariant; throws ValidationError.
void validate_instance(const Instance& instance);

Instance read_instance(std::string_view bytes);
std::string write_instance(const Instance& instance);

// Duplicate indices throw ValidationError unless allow_duplicates, in which
// case they are left for the verifier to report.
Solution read_solution(std::string_view bytes, bool allow_duplicates = false);
std::string write_solution(const Solution& solution);

Instance load_instance_file(const std::string& path);
Solution load_solution_file(const std::string& path, bool allow_duplicates = false);
void save_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace polypack
