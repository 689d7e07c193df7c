#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obsfeat/dataset.hpp"
#include "obsfeat/matrix.hpp"

namespace obsfeat::preprocess {

// Per-column statistics for the binary rescaling x -> 1 + 4 (x - mean) / sd,
// sd being the population standard deviation. Columns are indices into the
// dataset the statistics were fitted on.
struct NormalizationStats {
    std::vector<std::size_t> columns;
    std::vector<double> means;
    std::vector<double> sds;

    bool operator==(const NormalizationStats&) const = default;
};

// Throws Error(numerical) naming the first constant binary column.
NormalizationStats fit_binary_normalization(const Dataset& ds);
Dataset apply_normalization(const Dataset& ds, const NormalizationStats& stats);
Dataset normalize_binary_columns(const Dataset& ds);

// Statistics restricted to a subset of features, reindexed to that subset.
NormalizationStats restrict_to(const NormalizationStats& stats, std::span<const std::size_t> kept_features);

struct CorrelationMatrix {
    Matrix values;
    std::vector<std::string> feature_names;

    bool operator==(const CorrelationMatrix&) const = default;
};

double pearson(std::span<const double> x, std::span<const double> y);
CorrelationMatrix pearson_matrix(const Dataset& ds);
CorrelationMatrix pearson_matrix(const Matrix& columns, std::vector<std::string> names);

enum class CorrelationMode { absolute, signed_value };

std::string_view to_string(CorrelationMode mode);
CorrelationMode parse_correlation_mode(std::string_view text);

struct Removal {
    std::string feature;
    std::size_t original_index = 0;
    double peak_correlation = 0.0;
    std::string partner;

    bool operator==(const Removal&) const = default;
};

struct EliminationTrace {
    double alpha = 1.0;
    CorrelationMode mode = CorrelationMode::absolute;
    std::vector<Removal> removed;
    std::vector<std::size_t> surviving_indices;

    bool operator==(const EliminationTrace&) const = default;
};

// Backward elimination on a precomputed correlation matrix. Repeatedly takes
// the surviving pair with the largest |r| (absolute) or r (signed); while it
// exceeds alpha, drops the member with the larger mean |r| to the other
// survivors, breaking ties toward the larger index.
EliminationTrace eliminate(const CorrelationMatrix& corr, double alpha, CorrelationMode mode);

struct EliminationResult {
    Dataset reduced;
    EliminationTrace trace;
};

EliminationResult backward_eliminate(const Dataset& ds, double alpha, CorrelationMode mode);

}  // namespace obsfeat::preprocess
