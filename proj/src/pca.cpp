#include "obsfeat/pca.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>

#include "obsfeat/error.hpp"

namespace obsfeat::pca {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

void fix_sign(Matrix& v, std::size_t col) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double m = std::abs(v(i, col));
        // First index among (near-)maximal magnitudes.
        if (m > best * (1.0 + 1e-12) + 1e-300) {
            best = m;
            pivot = i;
        }
    }
    if (v(pivot, col) < 0.0)
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) = -v(i, col);
}

}  // namespace

EigenSystem symmetric_eigen(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n) fail_input("symmetric_eigen: matrix is not square");

    Matrix a = symmetric;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = avg;
            a(j, i) = avg;
        }
    Matrix v = Matrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                // Rotation angle zeroing a(p,q), in the numerically stable form.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm(a) > 1e-12 * scale)
        fail_numerical("Jacobi eigensolver did not converge");

    for (std::size_t k = 0; k < n; ++k) fix_sign(v, k);

    const double tie_tol = 1e-12 * std::max(1.0, scale);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double lx = a(x, x), ly = a(y, y);
        if (std::abs(lx - ly) > tie_tol) return lx > ly;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(v(i, x) - v(i, y)) > 1e-12) return v(i, x) > v(i, y);
        return x < y;
    });

    EigenSystem out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    // Within a run of tied eigenvalues the vectors keep their order but the
    // values are listed non-increasing.
    for (std::size_t begin = 0; begin < n;) {
        std::size_t end = begin + 1;
        while (end < n && std::abs(out.values[end] - out.values[begin]) <= tie_tol) ++end;
        std::sort(out.values.begin() + static_cast<std::ptrdiff_t>(begin),
                  out.values.begin() + static_cast<std::ptrdiff_t>(end), std::greater<>());
        begin = end;
    }
    return out;
}

Matrix sample_covariance(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t h = x.cols();
    if (n < 2) fail_input("covariance needs at least 2 rows");
    std::vector<double> means(h, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < h; ++j) means[j] += x(i, j);
    for (double& m : means) m /= static_cast<double>(n);

    Matrix cov(h, h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < h; ++a) {
            const double da = x(i, a) - means[a];
            for (std::size_t b = a; b < h; ++b) cov(a, b) += da * (x(i, b) - means[b]);
        }
    for (std::size_t a = 0; a < h; ++a)
        for (std::size_t b = a; b < h; ++b) {
            cov(a, b) /= static_cast<double>(n - 1);
            cov(b, a) = cov(a, b);
        }
    return cov;
}

Model fit(const Matrix& x, std::size_t ell, std::vector<std::string> feature_names) {
    const std::size_t h = x.cols();
    if (x.rows() < 2) fail_input("PCA needs at least 2 rows, got " + std::to_string(x.rows()));
    if (ell < 1 || ell > h)
        fail_input("PCA component count " + std::to_string(ell) + " out of range [1, " + std::to_string(h) + "]");
    if (feature_names.empty())
        for (std::size_t j = 0; j < h; ++j) feature_names.push_back("x" + std::to_string(j));
    if (feature_names.size() != h) fail_input("PCA: feature name count does not match column count");

    Model model;
    model.feature_names = std::move(feature_names);
    model.column_means.assign(h, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < h; ++j) model.column_means[j] += x(i, j);
    for (double& m : model.column_means) m /= static_cast<double>(x.rows());

    const EigenSystem eig = symmetric_eigen(sample_covariance(x));
    model.loadings = Matrix(h, ell);
    for (std::size_t k = 0; k < ell; ++k) {
        model.eigenvalues.push_back(eig.values[k]);
        for (std::size_t j = 0; j < h; ++j) model.loadings(j, k) = eig.vectors(j, k);
    }
    return model;
}

Matrix transform(const Model& model, const Matrix& x) {
    if (x.cols() != model.input_dim())
        fail_input("PCA transform: expected " + std::to_string(model.input_dim()) + " columns, got " +
                   std::to_string(x.cols()));
    Matrix centered = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) centered(i, j) -= model.column_means[j];
    return centered * model.loadings;
}

std::vector<double> feature_contributions(const Model& model, ContributionWeighting weighting) {
    const std::size_t ell = model.components();
    std::vector<double> weights(ell, 1.0);
    if (weighting == ContributionWeighting::explained_variance) {
        double total = 0.0;
        for (double l : model.eigenvalues) total += std::max(l, 0.0);
        for (std::size_t k = 0; k < ell; ++k)
            weights[k] = total > 0.0 ? std::max(model.eigenvalues[k], 0.0) / total : 0.0;
    }
    std::vector<double> scores(model.input_dim(), 0.0);
    for (std::size_t j = 0; j < model.input_dim(); ++j)
        for (std::size_t k = 0; k < ell; ++k) scores[j] += weights[k] * std::abs(model.loadings(j, k));
    return scores;
}

}  // namespace obsfeat::pca
