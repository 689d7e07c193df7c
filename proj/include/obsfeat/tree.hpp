#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "obsfeat/matrix.hpp"

namespace obsfeat::tree {

struct Params {
    std::optional<std::size_t> max_depth;  // unlimited when empty
    std::size_t min_samples_leaf = 1;
    double min_impurity_decrease = 0.0;

    void validate() const;
    bool operator==(const Params&) const = default;
};

// Flat node storage; children are indices into Tree::nodes. Rows with
// feature <= threshold go left.
struct Node {
    bool is_leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t samples = 0;
    double impurity = 0.0;
    // (samples / total) * (impurity - weighted child impurity); 0 for leaves.
    double weighted_decrease = 0.0;
    int predicted_class = 0;
    std::vector<std::size_t> histogram;

    bool operator==(const Node&) const = default;
};

struct Tree {
    std::vector<Node> nodes;  // nodes[0] is the root
    std::size_t feature_count = 0;
    std::size_t class_count = 0;

    std::size_t depth() const;
    std::size_t leaf_count() const;

    bool operator==(const Tree&) const = default;
};

// 1 - sum_c p_c^2 over a multiset of class indices.
double gini(std::span<const int> labels);
double gini_from_counts(std::span<const std::size_t> counts);

// Greedy CART: each node takes the split with the largest Gini decrease over
// midpoints between consecutive distinct values; ties go to the lower feature,
// then the lower threshold. An impure node with candidates splits even when
// the best decrease is zero, unless min_impurity_decrease > 0.
Tree fit(const Matrix& x, std::span<const int> y, std::size_t class_count, const Params& params = {});

int predict(const Tree& tree, std::span<const double> x);
std::vector<int> predict_all(const Tree& tree, const Matrix& x);
std::size_t count_correct(const Tree& tree, const Matrix& x, std::span<const int> y);

// Mean decrease in impurity per feature, normalized to sum to 1; all zeros
// for a single-leaf tree.
std::vector<double> importances(const Tree& tree);

}  // namespace obsfeat::tree
