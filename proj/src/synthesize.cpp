#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "obsfeat/dataset.hpp"
#include "obsfeat/error.hpp"

namespace obsfeat {

void SynthesisSpec::validate() const {
    const std::size_t total = obsolete_count + non_obsolete_count;
    if (class_counts.empty()) fail_input("synthesis spec: class_counts must name at least one class");
    const std::size_t counted = std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
    if (counted != total)
        fail_input("synthesis spec: class_counts sum to " + std::to_string(counted) + " but o+u = " +
                   std::to_string(total));
    if (total == 0) fail_input("synthesis spec: o+u must be positive");
    if (feature_count() == 0) fail_input("synthesis spec: n_binary + n_continuous must be positive");
    if (redundant.size() > n_continuous)
        fail_input("synthesis spec: redundant_pairs needs one continuous slot per entry (" +
                   std::to_string(redundant.size()) + " > n_continuous " + std::to_string(n_continuous) + ")");
    if (!(informative_strength >= 0.0) || !std::isfinite(informative_strength))
        fail_input("synthesis spec: informative_strength must be finite and >= 0");
    const std::size_t first_redundant = feature_count() - redundant.size();
    for (const auto& r : redundant) {
        if (!(std::abs(r.correlation) <= 1.0))
            fail_input("synthesis spec: redundant_pairs correlation " + std::to_string(r.correlation) +
                       " is impossible (|r| > 1)");
        if (r.source >= first_redundant)
            fail_input("synthesis spec: redundant_pairs source " + std::to_string(r.source) +
                       " must index a non-redundant feature (< " + std::to_string(first_redundant) + ")");
    }
    if (!feature_names.empty()) {
        if (feature_names.size() != feature_count())
            fail_input("synthesis spec: feature_names has " + std::to_string(feature_names.size()) +
                       " entries, expected " + std::to_string(feature_count()));
        std::set<std::string> unique(feature_names.begin(), feature_names.end());
        if (unique.size() != feature_names.size()) fail_input("synthesis spec: feature_names must be unique");
    }
    if (!class_names.empty() && class_names.size() != class_counts.size())
        fail_input("synthesis spec: class_names has " + std::to_string(class_names.size()) + " entries, expected " +
                   std::to_string(class_counts.size()));
}

namespace {

// Orthonormal basis (as columns) of the complement of unit vector v in R^m,
// by Gram-Schmidt over the standard basis.
std::vector<std::vector<double>> complement_basis(const std::vector<double>& v) {
    const std::size_t m = v.size();
    std::vector<std::vector<double>> basis{v};
    for (std::size_t e = 0; e < m && basis.size() < m; ++e) {
        std::vector<double> w(m, 0.0);
        w[e] = 1.0;
        for (const auto& b : basis) {
            const double dot = std::inner_product(w.begin(), w.end(), b.begin(), 0.0);
            for (std::size_t i = 0; i < m; ++i) w[i] -= dot * b[i];
        }
        const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (norm < 1e-8) continue;
        for (double& x : w) x /= norm;
        basis.push_back(std::move(w));
    }
    basis.erase(basis.begin());
    return basis;
}

void standardize_in_place(std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double& v : x) {
        v -= mean;
        ss += v * v;
    }
    const double sd = std::sqrt(ss / n);
    if (sd > 0.0)
        for (double& v : x) v /= sd;
}

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

}  // namespace

Dataset synthesize(const SynthesisSpec& spec) {
    spec.validate();
    const std::size_t total = spec.obsolete_count + spec.non_obsolete_count;
    const std::size_t n_classes = spec.class_counts.size();
    const std::size_t n_features = spec.feature_count();
    const std::size_t first_redundant = first_redundant_index(spec);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Dataset ds;
    for (std::size_t c = 0; c < n_classes; ++c)
        ds.class_names.push_back(spec.class_names.empty() ? "class_" + std::to_string(c + 1) : spec.class_names[c]);
    for (std::size_t j = 0; j < n_features; ++j) {
        FeatureDescriptor f;
        f.kind = j < spec.n_binary ? FeatureKind::binary : FeatureKind::continuous;
        f.name = spec.feature_names.empty() ? padded("feature_", j + 1, 2) : spec.feature_names[j];
        ds.features.push_back(std::move(f));
    }

    // Labels first, so per-class counts are exact.
    for (std::size_t c = 0; c < n_classes; ++c) ds.labels.insert(ds.labels.end(), spec.class_counts[c], static_cast<int>(c));
    std::shuffle(ds.labels.begin(), ds.labels.end(), rng);

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    ds.obsolete.assign(total, true);
    for (std::size_t k = 0; k < spec.non_obsolete_count; ++k) ds.obsolete[order[k]] = false;

    const std::size_t id_width = std::to_string(total).size();
    for (std::size_t i = 0; i < total; ++i) ds.ids.push_back(padded("case_", i + 1, std::max<std::size_t>(id_width, 4)));

    // Class means M = s * diag(p)^(-1/2) * Q with Q orthonormal and orthogonal
    // to sqrt(p): the p-weighted means are zero and their covariance is s^2 I.
    std::vector<std::size_t> active;
    for (std::size_t c = 0; c < n_classes; ++c)
        if (spec.class_counts[c] > 0) active.push_back(c);
    std::vector<double> sqrt_p;
    for (std::size_t c : active) sqrt_p.push_back(std::sqrt(static_cast<double>(spec.class_counts[c]) / static_cast<double>(total)));
    const auto q = complement_basis(sqrt_p);
    const std::size_t n_informative = std::min(q.size(), spec.n_continuous - spec.redundant.size());
    std::vector<std::vector<double>> class_means(n_classes, std::vector<double>(n_informative, 0.0));
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t k = 0; k < n_informative; ++k)
            class_means[active[a]][k] = spec.informative_strength * q[k][a] / sqrt_p[a];

    std::vector<std::vector<double>> columns(n_features, std::vector<double>(total, 0.0));

    std::uniform_real_distribution<double> threshold_dist(-0.8, 0.8);
    for (std::size_t j = 0; j < spec.n_binary; ++j) {
        const double threshold = threshold_dist(rng);
        for (std::size_t i = 0; i < total; ++i) columns[j][i] = gauss(rng) > threshold ? 1.0 : 0.0;
    }
    for (std::size_t k = 0; k < first_redundant - spec.n_binary; ++k) {
        auto& col = columns[spec.n_binary + k];
        for (std::size_t i = 0; i < total; ++i) {
            const double mean = k < n_informative ? class_means[static_cast<std::size_t>(ds.labels[i])][k] : 0.0;
            col[i] = mean + gauss(rng);
        }
    }

    // Redundant copy: mean_s + sd_s * (r z + sqrt(1 - r^2) e) with z the
    // standardized source and e standardized noise orthogonal to z, so the
    // sample correlation with the source equals r.
    for (std::size_t k = 0; k < spec.redundant.size(); ++k) {
        const auto& red = spec.redundant[k];
        const auto& src = columns[red.source];
        const double n = static_cast<double>(total);
        const double mean = std::accumulate(src.begin(), src.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : src) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / n);
        if (!(sd > 0.0))
            fail_input("synthesis: redundant source feature '" + ds.features[red.source].name +
                       "' came out constant; cannot target a correlation");
        std::vector<double> z(src);
        standardize_in_place(z);
        std::vector<double> e(total);
        for (double& v : e) v = gauss(rng);
        standardize_in_place(e);
        const double proj = std::inner_product(e.begin(), e.end(), z.begin(), 0.0) / n;
        for (std::size_t i = 0; i < total; ++i) e[i] -= proj * z[i];
        standardize_in_place(e);
        const double noise_weight = std::sqrt(std::max(0.0, 1.0 - red.correlation * red.correlation));
        auto& out = columns[first_redundant + k];
        for (std::size_t i = 0; i < total; ++i) out[i] = mean + sd * (red.correlation * z[i] + noise_weight * e[i]);
    }

    ds.rows = Matrix::from_columns(columns);
    ds.validate();
    return ds;
}

}  // namespace obsfeat
