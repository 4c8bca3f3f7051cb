#include "polypack/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "polypack/rng.hpp"

namespace polypack {

namespace {

constexpr std::uint32_t kKmeansTag = 0x4B4D;
constexpr std::uint32_t kPickTag = 0x5049;

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double m = mean_of(v), s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

struct Clustering {
    std::vector<std::size_t> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

Clustering kmeans_once(const Eigen::MatrixXd& x, std::size_t k, Rng& rng) {
    const auto n = static_cast<std::size_t>(x.rows());
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), x.cols());

    // k-means++ seeding.
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);
    std::size_t first = rng.index(n);
    centers.row(0) = x.row(static_cast<Eigen::Index>(first));
    chosen[first] = 1;
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(c - 1))).squaredNorm();
            d2[i] = std::min(d2[i], d);
            if (!chosen[i]) total += d2[i];
        }
        std::size_t pick = n;
        if (total > 0) {
            double r = rng.uniform_double() * total;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i]) continue;
                pick = i;
                r -= d2[i];
                if (r < 0) break;
            }
        } else {
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) free.push_back(i);
            pick = free[rng.index(free.size())];
        }
        chosen[pick] = 1;
        centers.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(pick));
    }

    Clustering out;
    out.labels.assign(n, 0);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = iter == 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                double d = (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(c))).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (out.labels[i] != best) changed = true;
            out.labels[i] = best;
        }
        // Refill empty clusters with the point farthest from its centre,
        // taken from a cluster that can spare it.
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t l : out.labels) ++sizes[l];
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] != 0) continue;
            std::size_t far = n;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[out.labels[i]] < 2) continue;
                double d = (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(out.labels[i]))).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --sizes[out.labels[far]];
            out.labels[far] = c;
            sizes[c] = 1;
            centers.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(far));
            changed = true;
        }
        centers.setZero();
        for (std::size_t i = 0; i < n; ++i) centers.row(static_cast<Eigen::Index>(out.labels[i])) += x.row(static_cast<Eigen::Index>(i));
        for (std::size_t c = 0; c < k; ++c) centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(sizes[c]);
        if (!changed) break;
    }
    out.inertia = 0;
    for (std::size_t i = 0; i < n; ++i)
        out.inertia += (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(out.labels[i]))).squaredNorm();
    return out;
}

}  // namespace

FeatureVector compute_metrics(const Instance& instance) {
    FeatureVector f;
    f.name = instance.name;
    if (instance.meta) f.family = instance.meta->generator;
    const std::size_t n = instance.items.size();
    const Rational container_area = instance.container.area();

    std::vector<double> areas, slack, rect_ratio, aspects, density;
    std::size_t edges = 0, axis_edges = 0, vertices = 0;
    Rational total_area = 0;
    for (const Item& item : instance.items) {
        const Polygon& p = item.polygon;
        Rational area = p.area();
        Rational hull = convex_hull(p.vertices()).area();
        MinAreaRect rect = min_area_rect(p);
        total_area += area;
        areas.push_back(to_double(area));
        slack.push_back(to_double((hull - area) / hull));
        rect_ratio.push_back(to_double(area / rect.area));
        aspects.push_back(to_double(rect.aspect));
        density.push_back(to_double(Rational(item.value) / area));
        vertices += p.size();
        for (std::size_t i = 0; i < p.size(); ++i) {
            Point a = p[i], b = p[(i + 1) % p.size()];
            ++edges;
            if (a.x == b.x || a.y == b.y) ++axis_edges;
        }
    }

    const double mean_area = mean_of(areas);
    const double mean_density = mean_of(density);
    f.values = {
        n == 0 ? 0.0 : std::log(static_cast<double>(n)),
        mean_of(slack),
        to_double(container_area / min_area_rect(instance.container).area),
        mean_of(rect_ratio),
        to_double(total_area / container_area),
        edges == 0 ? 0.0 : static_cast<double>(axis_edges) / static_cast<double>(edges),
        n == 0 ? 0.0 : static_cast<double>(vertices) / static_cast<double>(n),
        mean_area > 0 ? variance_of(areas) / (mean_area * mean_area) : 0.0,
        mean_density > 0 ? std::sqrt(variance_of(density)) / mean_density : 0.0,
        static_cast<double>(instance.container.size()),
        mean_of(aspects),
    };
    return f;
}

SelectionResult select_diverse(std::vector<FeatureVector> features, const SelectionConfig& cfg,
                               std::vector<std::string>* warnings) {
    const std::size_t n = features.size();
    if (n == 0 || cfg.k < 1 || cfg.k > n) {
        throw std::invalid_argument("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(cfg.k));
    }
    std::sort(features.begin(), features.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < n; ++i) {
        if (features[i].name == features[i - 1].name) throw std::invalid_argument("duplicate instance name '" + features[i].name + "'");
    }
    const std::size_t dim = features[0].values.size();
    for (const auto& f : features) {
        if (f.values.size() != dim) throw std::invalid_argument("feature vectors differ in length");
        for (double v : f.values)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature in '" + f.name + "'");
    }

    SelectionResult result;
    for (const auto& f : features) result.names.push_back(f.name);
    if (cfg.k == n) {
        result.selected = result.names;
        result.labels.resize(n);
        std::iota(result.labels.begin(), result.labels.end(), std::size_t{0});
        return result;
    }

    // z-scores, leaving out constant columns.
    std::vector<std::size_t> kept;
    std::vector<double> means(dim), sds(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<double> col;
        for (const auto& f : features) col.push_back(f.values[c]);
        means[c] = mean_of(col);
        sds[c] = std::sqrt(variance_of(col));
        if (sds[c] > 1e-12 * std::max(1.0, std::abs(means[c]))) {
            kept.push_back(c);
        } else {
            std::string col_name = dim == kMetricCount ? std::string(kMetricNames[c]) : "feature_" + std::to_string(c);
            result.dropped_columns.push_back(col_name);
            if (warnings) warnings->push_back("metric '" + col_name + "' is constant across all candidates; dropped");
        }
    }
    if (kept.empty()) throw DegenerateFeatures("every metric is constant across the candidates");

    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < kept.size(); ++j)
            z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (features[i].values[kept[j]] - means[kept[j]]) / sds[kept[j]];

    Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd& evals = eig.eigenvalues();  // ascending
    const auto d = static_cast<std::size_t>(evals.size());
    double total = 0;
    for (std::size_t i = 0; i < d; ++i) total += std::max(0.0, evals(static_cast<Eigen::Index>(i)));
    std::size_t comps = 0;
    double acc = 0;
    if (cfg.pca_components) {
        comps = std::clamp<std::size_t>(*cfg.pca_components, 1, d);
        for (std::size_t i = 0; i < comps; ++i) acc += std::max(0.0, evals(static_cast<Eigen::Index>(d - 1 - i)));
    } else {
        while (comps < d && (comps == 0 || acc < 0.95 * total)) {
            acc += std::max(0.0, evals(static_cast<Eigen::Index>(d - 1 - comps)));
            ++comps;
        }
    }
    result.components = comps;
    result.retained_variance = total > 0 ? acc / total : 1.0;
    Eigen::MatrixXd basis = eig.eigenvectors().rightCols(static_cast<Eigen::Index>(comps));
    Eigen::MatrixXd projected = z * basis;

    Clustering best;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, cfg.kmeans_restarts); ++r) {
        Rng rng(cfg.seed, stream_id(kKmeansTag, r));
        Clustering c = kmeans_once(projected, cfg.k, rng);
        if (c.inertia < best.inertia - 1e-12) best = std::move(c);
    }
    result.labels = best.labels;
    result.inertia = best.inertia;

    // Clusters in order of their first member, one uniform pick from each.
    std::vector<std::vector<std::size_t>> members(cfg.k);
    for (std::size_t i = 0; i < n; ++i) members[best.labels[i]].push_back(i);
    std::sort(members.begin(), members.end());
    Rng pick(cfg.seed, stream_id(kPickTag, 0));
    for (const auto& m : members) result.selected.push_back(result.names[m[pick.index(m.size())]]);
    std::sort(result.selected.begin(), result.selected.end());
    return result;
}

std::vector<std::string> select_diverse(const std::vector<Instance>& instances, const SelectionConfig& cfg) {
    std::vector<FeatureVector> features;
    features.reserve(instances.size());
    for (const auto& inst : instances) features.push_back(compute_metrics(inst));
    return select_diverse(std::move(features), cfg).selected;
}

std::string features_to_csv(const std::vector<FeatureVector>& features) {
    std::ostringstream out;
    out << "name,family";
    for (auto m : kMetricNames) out << ',' << m;
    out << '\n';
    out.precision(17);
    for (const auto& f : features) {
        out << f.name << ',' << f.family;
        for (double v : f.values) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

}  // namespace polypack
