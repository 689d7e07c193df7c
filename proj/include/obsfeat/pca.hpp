#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obsfeat/matrix.hpp"

namespace obsfeat::pca {

struct EigenSystem {
    std::vector<double> values;  // non-increasing
    Matrix vectors;              // column k pairs with values[k]
};

// Cyclic Jacobi rotations on a symmetric matrix. Each eigenvector's
// largest-magnitude entry is made positive; pairs are sorted by eigenvalue,
// near-equal eigenvalues ordered by their vectors' first differing entry.
EigenSystem symmetric_eigen(const Matrix& symmetric);

// Column-centered covariance with divisor n - 1.
Matrix sample_covariance(const Matrix& x);

struct Model {
    std::vector<double> column_means;
    Matrix loadings;  // h x ell, orthonormal columns
    std::vector<double> eigenvalues;
    std::vector<std::string> feature_names;

    std::size_t input_dim() const noexcept { return loadings.rows(); }
    std::size_t components() const noexcept { return loadings.cols(); }

    bool operator==(const Model&) const = default;
};

Model fit(const Matrix& x, std::size_t ell, std::vector<std::string> feature_names = {});

// (x - column_means) * loadings
Matrix transform(const Model& model, const Matrix& x);

enum class ContributionWeighting { uniform, explained_variance };

// score_j = sum_k w_k |W[j][k]|; w_k = 1 (uniform) or lambda_k / sum(lambda).
std::vector<double> feature_contributions(const Model& model,
                                          ContributionWeighting weighting = ContributionWeighting::uniform);

}  // namespace obsfeat::pca
