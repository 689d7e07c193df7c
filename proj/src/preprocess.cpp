#include "obsfeat/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "obsfeat/error.hpp"

namespace obsfeat::preprocess {

namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;  // population
};

Moments column_moments(const Matrix& m, std::size_t col) {
    const std::size_t n = m.rows();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += m(i, col);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (m(i, col) - mean) * (m(i, col) - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n))};
}

}  // namespace

NormalizationStats fit_binary_normalization(const Dataset& ds) {
    NormalizationStats stats;
    if (ds.size() == 0) fail_input("normalization: dataset has no rows");
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        if (ds.features[j].kind != FeatureKind::binary) continue;
        const Moments m = column_moments(ds.rows, j);
        if (!(m.sd > 0.0))
            fail_numerical("binary feature '" + ds.features[j].name +
                           "' is constant; normalization divides by its zero standard deviation");
        stats.columns.push_back(j);
        stats.means.push_back(m.mean);
        stats.sds.push_back(m.sd);
    }
    return stats;
}

Dataset apply_normalization(const Dataset& ds, const NormalizationStats& stats) {
    Dataset out = ds;
    for (std::size_t k = 0; k < stats.columns.size(); ++k) {
        const std::size_t j = stats.columns[k];
        if (j >= ds.feature_count()) fail_input("normalization statistics do not match the dataset's features");
        for (std::size_t i = 0; i < ds.size(); ++i)
            out.rows(i, j) = 1.0 + 4.0 * (ds.rows(i, j) - stats.means[k]) / stats.sds[k];
    }
    return out;
}

Dataset normalize_binary_columns(const Dataset& ds) {
    return apply_normalization(ds, fit_binary_normalization(ds));
}

NormalizationStats restrict_to(const NormalizationStats& stats, std::span<const std::size_t> kept_features) {
    NormalizationStats out;
    for (std::size_t k = 0; k < stats.columns.size(); ++k) {
        auto it = std::find(kept_features.begin(), kept_features.end(), stats.columns[k]);
        if (it == kept_features.end()) continue;
        out.columns.push_back(static_cast<std::size_t>(it - kept_features.begin()));
        out.means.push_back(stats.means[k]);
        out.sds.push_back(stats.sds[k]);
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) fail_input("pearson: need two equal-length samples of size >= 2");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) fail_numerical("pearson: zero-variance sample");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(const Matrix& columns, std::vector<std::string> names) {
    const std::size_t n = columns.rows();
    const std::size_t h = columns.cols();
    if (names.empty())
        for (std::size_t j = 0; j < h; ++j) names.push_back("column " + std::to_string(j + 1));
    if (names.size() != h) fail_input("pearson_matrix: name count does not match column count");
    if (n < 2) fail_input("pearson_matrix: need at least 2 rows");

    // Center once; r_ij = <c_i, c_j> / (|c_i| |c_j|).
    Matrix centered = columns;
    std::vector<double> norms(h);
    for (std::size_t j = 0; j < h; ++j) {
        const double mean = column_moments(columns, j).mean;
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            centered(i, j) -= mean;
            ss += centered(i, j) * centered(i, j);
        }
        if (!(ss > 0.0))
            fail_numerical("feature '" + names[j] + "' has zero variance; its correlation is undefined");
        norms[j] = std::sqrt(ss);
    }

    CorrelationMatrix out{Matrix(h, h), std::move(names)};
    for (std::size_t a = 0; a < h; ++a) {
        out.values(a, a) = 1.0;
        for (std::size_t b = a + 1; b < h; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += centered(i, a) * centered(i, b);
            const double r = std::clamp(dot / (norms[a] * norms[b]), -1.0, 1.0);
            out.values(a, b) = r;
            out.values(b, a) = r;
        }
    }
    return out;
}

CorrelationMatrix pearson_matrix(const Dataset& ds) {
    return pearson_matrix(ds.rows, ds.feature_names());
}

std::string_view to_string(CorrelationMode mode) {
    return mode == CorrelationMode::absolute ? "absolute" : "signed";
}

CorrelationMode parse_correlation_mode(std::string_view text) {
    if (text == "absolute") return CorrelationMode::absolute;
    if (text == "signed") return CorrelationMode::signed_value;
    fail_input("unknown correlation mode '" + std::string(text) + "' (expected absolute or signed)");
}

EliminationTrace eliminate(const CorrelationMatrix& corr, double alpha, CorrelationMode mode) {
    if (!(alpha >= -1.0 && alpha <= 1.0)) fail_input("alpha must lie in [-1, 1]");
    const std::size_t d = corr.values.rows();
    if (d == 0) fail_input("alpha too strict: no features to eliminate from");

    EliminationTrace trace;
    trace.alpha = alpha;
    trace.mode = mode;
    std::vector<std::size_t> alive(d);
    std::iota(alive.begin(), alive.end(), std::size_t{0});

    auto score = [&](std::size_t a, std::size_t b) {
        const double r = corr.values(a, b);
        return mode == CorrelationMode::absolute ? std::abs(r) : r;
    };

    while (alive.size() >= 2) {
        // Worst pair; strict comparison keeps the lexicographically first on ties.
        std::size_t wa = alive[0], wb = alive[1];
        double worst = score(wa, wb);
        for (std::size_t x = 0; x < alive.size(); ++x)
            for (std::size_t y = x + 1; y < alive.size(); ++y) {
                const double s = score(alive[x], alive[y]);
                if (s > worst) {
                    worst = s;
                    wa = alive[x];
                    wb = alive[y];
                }
            }
        if (!(worst > alpha)) break;

        auto mean_abs = [&](std::size_t f) {
            double sum = 0.0;
            for (std::size_t g : alive)
                if (g != f) sum += std::abs(corr.values(f, g));
            return sum / static_cast<double>(alive.size() - 1);
        };
        const double ma = mean_abs(wa);
        const double mb = mean_abs(wb);
        // wa < wb, so ties go to wb.
        const std::size_t victim = ma > mb ? wa : wb;
        const std::size_t partner = victim == wa ? wb : wa;

        trace.removed.push_back({corr.feature_names[victim], victim, corr.values(wa, wb), corr.feature_names[partner]});
        alive.erase(std::find(alive.begin(), alive.end(), victim));
    }
    if (alive.empty()) fail_input("alpha too strict: elimination would remove every feature");
    trace.surviving_indices = alive;
    return trace;
}

EliminationResult backward_eliminate(const Dataset& ds, double alpha, CorrelationMode mode) {
    EliminationTrace trace = eliminate(pearson_matrix(ds), alpha, mode);
    Dataset reduced = ds.select_features(trace.surviving_indices);
    return {std::move(reduced), std::move(trace)};
}

}  // namespace obsfeat::preprocess
