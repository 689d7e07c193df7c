#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obsfeat/matrix.hpp"

namespace obsfeat {

enum class FeatureKind { binary, continuous, ordinal };

std::string_view to_string(FeatureKind kind);
FeatureKind parse_feature_kind(std::string_view text);

struct FeatureDescriptor {
    std::string name;
    FeatureKind kind = FeatureKind::continuous;

    bool operator==(const FeatureDescriptor&) const = default;
};

// Labeled case matrix. Labels are 0-based indices into class_names; an
// obsolete flag of false marks the row as belonging to the non-obsolete
// monitoring set.
struct Dataset {
    std::vector<FeatureDescriptor> features;
    std::vector<std::string> class_names;
    std::vector<std::string> ids;
    Matrix rows;
    std::vector<int> labels;
    std::vector<bool> obsolete;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t feature_count() const noexcept { return features.size(); }
    std::size_t class_count() const noexcept { return class_names.size(); }
    std::vector<std::string> feature_names() const;

    // Throws Error(input) naming the first violated invariant.
    void validate() const;

    Dataset subset(std::span<const std::size_t> row_indices) const;
    Dataset select_features(std::span<const std::size_t> feature_indices) const;

    bool operator==(const Dataset&) const = default;
};

// Row subset over a Dataset that must outlive the view.
struct DatasetView {
    const Dataset* source = nullptr;
    std::vector<std::size_t> indices;

    std::size_t size() const noexcept { return indices.size(); }
    Dataset materialize() const { return source->subset(indices); }
};

struct Partition {
    DatasetView obsolete;
    DatasetView non_obsolete;
};

Partition partition(const Dataset& ds);

struct Split {
    DatasetView train;
    DatasetView test;
};

// Seeded permutation of the rows; the first test_count permuted rows form the
// test view. Both index lists are returned in ascending order.
Split shuffle_split(const Dataset& ds, std::size_t test_count, std::uint64_t seed);

// Column roles and feature kinds for a dataset CSV (the JSON sidecar).
struct Schema {
    std::string id_column = "id";
    std::string label_column = "label";
    std::string obsolete_column = "obsolete";
    std::vector<std::string> class_names;
    std::vector<FeatureDescriptor> features;

    bool operator==(const Schema&) const = default;
};

Schema load_schema(const std::filesystem::path& path);
void write_schema(const Schema& schema, const std::filesystem::path& path);
Schema schema_of(const Dataset& ds);

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema);
Dataset parse_dataset(std::string_view csv_text, const Schema& schema);
std::string format_dataset(const Dataset& ds);
void write_dataset(const Dataset& ds, const std::filesystem::path& path);

// Indices of columns whose values are all identical.
std::vector<std::size_t> constant_columns(const Dataset& ds);

struct RedundantFeature {
    std::size_t source = 0;
    double correlation = 0.0;

    bool operator==(const RedundantFeature&) const = default;
};

// Shape of a synthetic dataset. Columns are laid out as n_binary binary
// features followed by n_continuous continuous ones; the last
// redundant.size() continuous columns are noisy copies of their sources.
struct SynthesisSpec {
    std::size_t obsolete_count = 0;
    std::size_t non_obsolete_count = 0;
    std::vector<std::size_t> class_counts;
    std::size_t n_binary = 0;
    std::size_t n_continuous = 0;
    std::vector<RedundantFeature> redundant;
    double informative_strength = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::string> feature_names;  // optional, length D
    std::vector<std::string> class_names;    // optional, length N

    std::size_t feature_count() const noexcept { return n_binary + n_continuous; }
    void validate() const;

    bool operator==(const SynthesisSpec&) const = default;
};

// Deterministic in the spec (including seed). Informative continuous columns
// carry class-dependent means arranged so their between-class covariance is
// diagonal, which keeps them mutually uncorrelated in expectation.
Dataset synthesize(const SynthesisSpec& spec);

// Index of the first redundant column produced by synthesize.
inline std::size_t first_redundant_index(const SynthesisSpec& spec) {
    return spec.feature_count() - spec.redundant.size();
}

}  // namespace obsfeat
