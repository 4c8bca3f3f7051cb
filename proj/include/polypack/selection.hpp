#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/instance.hpp"

namespace polypack {

inline constexpr std::size_t kMetricCount = 11;

// Column names used in the feature CSV. The last six are our own additions
// and keep distinct names so they can be swapped out later.
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "log_items",           "hull_slack",         "container_rect_ratio", "item_rect_ratio",
    "item_container_area", "axis_alignment",     "ext_mean_vertices",    "ext_area_dispersion",
    "ext_value_density_cv", "ext_container_vertices", "ext_mean_aspect",
};

struct FeatureVector {
    std::string name;
    std::string family;  // generator tag from meta, or empty
    std::vector<double> values;
};

// Geometry is evaluated exactly; conversion to double happens at the end.
FeatureVector compute_metrics(const Instance& instance);

class DegenerateFeatures : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SelectionConfig {
    std::size_t k = 1;
    // Unset: smallest count explaining at least 95% of the variance.
    std::optional<std::size_t> pca_components;
    std::uint64_t seed = 0;
    std::size_t kmeans_restarts = 10;
};

struct SelectionResult {
    std::vector<std::string> selected;  // sorted
    std::vector<std::string> dropped_columns;  // constant metrics left out of PCA
    std::size_t components = 0;
    double retained_variance = 1.0;
    double inertia = 0.0;
    // Names sorted, with their cluster labels.
    std::vector<std::string> names;
    std::vector<std::size_t> labels;
};

// Works on any feature dimension (all vectors must agree). Input order does
// not matter: rows are sorted by name first. Throws std::invalid_argument on
// k outside [1, n] or duplicate names, DegenerateFeatures when every column
// is constant.
SelectionResult select_diverse(std::vector<FeatureVector> features, const SelectionConfig& cfg,
                               std::vector<std::string>* warnings = nullptr);

std::vector<std::string> select_diverse(const std::vector<Instance>& instances, const SelectionConfig& cfg);

std::string features_to_csv(const std::vector<FeatureVector>& features);

}  // namespace polypack
