#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "obsfeat/error.hpp"
#include "obsfeat/pca.hpp"

using namespace obsfeat;

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

Matrix centered(const Matrix& x) {
    Matrix out = x;
    for (std::size_t c = 0; c < x.cols(); ++c) {
        double mean = 0;
        for (std::size_t r = 0; r < x.rows(); ++r) mean += x(r, c);
        mean /= static_cast<double>(x.rows());
        for (std::size_t r = 0; r < x.rows(); ++r) out(r, c) -= mean;
    }
    return out;
}

double reconstruction_error(const Matrix& x, const pca::Model& m) {
    const Matrix xc = centered(x);
    return frobenius_norm(xc - xc * m.loadings * m.loadings.transpose());
}

}  // namespace

TEST_SUITE("pca") {
    TEST_CASE("collinear points") {
        const Matrix x{{1, 1}, {2, 2}, {3, 3}};
        const auto m = pca::fit(x, 2);
        CHECK(m.eigenvalues[0] == doctest::Approx(2.0));
        CHECK(std::abs(m.eigenvalues[1]) <= 1e-12);
        CHECK(m.loadings(0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(m.loadings(1, 0) == doctest::Approx(1 / std::sqrt(2.0)));
        const auto scores = pca::transform(m, x);
        CHECK(scores(0, 0) == doctest::Approx(-std::sqrt(2.0)));
        CHECK(scores(1, 0) == doctest::Approx(0.0));
        CHECK(scores(2, 0) == doctest::Approx(std::sqrt(2.0)));
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(scores(i, 1)) <= 1e-12);
    }

    TEST_CASE("closed-form 2x2 spectra") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-5, 5);
        for (int t = 0; t < 200; ++t) {
            const double a = std::abs(u(rng)) + 1, c = std::abs(u(rng)) + 1, b = u(rng) / 5;
            const auto es = pca::symmetric_eigen(Matrix{{a, b}, {b, c}});
            const double mid = (a + c) / 2, rad = std::sqrt((a - c) * (a - c) / 4 + b * b);
            REQUIRE(std::abs(es.values[0] - (mid + rad)) <= 1e-9);
            REQUIRE(std::abs(es.values[1] - (mid - rad)) <= 1e-9);
        }
    }

    TEST_CASE("closed-form 3x3 spectra") {
        // Diagonal, and the circulant-like [[2,1,1],[1,2,1],[1,1,2]] with spectrum (4,1,1).
        const auto d = pca::symmetric_eigen(Matrix{{3, 0, 0}, {0, 7, 0}, {0, 0, 1}});
        CHECK(d.values == std::vector<double>{7, 3, 1});
        const auto j = pca::symmetric_eigen(Matrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
        CHECK(std::abs(j.values[0] - 4) <= 1e-9);
        CHECK(std::abs(j.values[1] - 1) <= 1e-9);
        CHECK(std::abs(j.values[2] - 1) <= 1e-9);
        // Tridiagonal [[2,-1,0],[-1,2,-1],[0,-1,2]]: 2 + sqrt2, 2, 2 - sqrt2.
        const auto t = pca::symmetric_eigen(Matrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
        CHECK(std::abs(t.values[0] - (2 + std::sqrt(2.0))) <= 1e-9);
        CHECK(std::abs(t.values[1] - 2) <= 1e-9);
        CHECK(std::abs(t.values[2] - (2 - std::sqrt(2.0))) <= 1e-9);
    }

    TEST_CASE("matches Eigen's self-adjoint solver") {
        std::mt19937_64 rng(2);
        for (int t = 0; t < 50; ++t) {
            const std::size_t h = 2 + t % 9;
            const auto x = testing::random_matrix(rng, 30, h);
            const auto cov = pca::sample_covariance(x);
            const Eigen::MatrixXd ref = to_eigen(x).rowwise() - to_eigen(x).colwise().mean();
            const Eigen::MatrixXd ref_cov = ref.transpose() * ref / 29.0;
            REQUIRE((to_eigen(cov) - ref_cov).cwiseAbs().maxCoeff() <= 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ref_cov);
            const auto es = pca::symmetric_eigen(cov);
            for (std::size_t k = 0; k < h; ++k) {
                REQUIRE(std::abs(es.values[k] - solver.eigenvalues()(static_cast<Eigen::Index>(h - 1 - k))) <= 1e-9);
                const Eigen::VectorXd ours = to_eigen(es.vectors).col(static_cast<Eigen::Index>(k));
                const Eigen::VectorXd theirs = solver.eigenvectors().col(static_cast<Eigen::Index>(h - 1 - k));
                REQUIRE(std::abs(std::abs(ours.dot(theirs)) - 1.0) <= 1e-8);
            }
        }
    }

    TEST_CASE("orthonormality, residuals and trace") {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 100; ++t) {
            const std::size_t h = 1 + t % 12;
            const auto x = testing::random_matrix(rng, 5 + t % 40, h);
            const auto m = pca::fit(x, h);
            const auto wtw = m.loadings.transpose() * m.loadings;
            REQUIRE(max_abs(wtw - Matrix::identity(h)) <= 1e-9);
            const auto cov = pca::sample_covariance(x);
            double trace = 0, sum = 0;
            for (std::size_t k = 0; k < h; ++k) {
                trace += cov(k, k);
                sum += m.eigenvalues[k];
                if (k > 0) REQUIRE(m.eigenvalues[k] <= m.eigenvalues[k - 1]);
                REQUIRE(m.eigenvalues[k] >= -1e-9);
                Matrix w(h, 1);
                for (std::size_t j = 0; j < h; ++j) w(j, 0) = m.loadings(j, k);
                Matrix residual = cov * w;
                for (std::size_t j = 0; j < h; ++j) residual(j, 0) -= m.eigenvalues[k] * w(j, 0);
                REQUIRE(frobenius_norm(residual) <= 1e-8 * std::max(1.0, m.eigenvalues[0]));
            }
            REQUIRE(std::abs(trace - sum) <= 1e-8);
        }
    }

    TEST_CASE("sign convention: largest-magnitude entry positive") {
        std::mt19937_64 rng(4);
        const auto m = pca::fit(testing::random_matrix(rng, 50, 6), 6);
        for (std::size_t k = 0; k < 6; ++k) {
            std::size_t arg = 0;
            for (std::size_t j = 1; j < 6; ++j)
                if (std::abs(m.loadings(j, k)) > std::abs(m.loadings(arg, k))) arg = j;
            CHECK(m.loadings(arg, k) > 0);
        }
    }

    TEST_CASE("reconstruction error is non-increasing in ell") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 30; ++t) {
            const auto x = testing::random_matrix(rng, 25, 7);
            double previous = INFINITY;
            for (std::size_t ell = 1; ell <= 7; ++ell) {
                const double err = reconstruction_error(x, pca::fit(x, ell));
                REQUIRE(err <= previous + 1e-9);
                previous = err;
            }
            REQUIRE(previous <= 1e-9);
        }
    }

    TEST_CASE("constant column gets zero weight in PC1") {
        Matrix x{{1, 5, 0.3}, {2, 5, -1}, {4, 5, 0.8}, {3, 5, 2}};
        const auto m = pca::fit(x, 1);
        CHECK(std::abs(m.loadings(1, 0)) <= 1e-9);
    }

    TEST_CASE("transform centers training data and maps the mean to zero") {
        std::mt19937_64 rng(6);
        const auto x = testing::random_matrix(rng, 20, 4);
        const auto m = pca::fit(x, 3);
        const auto scores = pca::transform(m, x);
        for (std::size_t k = 0; k < 3; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < 20; ++i) s += scores(i, k);
            CHECK(std::abs(s / 20) <= 1e-9);
        }
        Matrix mean_row(1, 4);
        for (std::size_t j = 0; j < 4; ++j) mean_row(0, j) = m.column_means[j];
        CHECK(max_abs(pca::transform(m, mean_row)) <= 1e-12);
        CHECK_THROWS_AS(pca::transform(m, Matrix(2, 3)), Error);
    }

    TEST_CASE("fit preconditions") {
        CHECK_THROWS_AS(pca::fit(Matrix{{1, 2}}, 1), Error);
        CHECK_THROWS_AS(pca::fit(Matrix{{1, 2}, {3, 4}}, 0), Error);
        CHECK_THROWS_AS(pca::fit(Matrix{{1, 2}, {3, 4}}, 3), Error);
    }

    TEST_CASE("feature contributions") {
        pca::Model m;
        m.loadings = Matrix{{0.6}, {0.8}};
        m.eigenvalues = {1};
        CHECK(pca::feature_contributions(m) == std::vector<double>{0.6, 0.8});
        m.loadings = Matrix::identity(2);
        m.eigenvalues = {3, 1};
        CHECK(pca::feature_contributions(m) == std::vector<double>{1, 1});
        const auto weighted = pca::feature_contributions(m, pca::ContributionWeighting::explained_variance);
        CHECK(weighted[0] == doctest::Approx(0.75));
        CHECK(weighted[1] == doctest::Approx(0.25));
        m.loadings = Matrix{{0.6, -0.8}, {0.8, 0.6}};
        const auto c = pca::feature_contributions(m);
        CHECK(c[0] == doctest::Approx(1.4));
        CHECK(c[1] == doctest::Approx(1.4));
        m.loadings = Matrix{{-0.6, 0.8}, {-0.8, -0.6}};
        CHECK(pca::feature_contributions(m) == c);
    }

    TEST_CASE("degenerate spectrum is deterministic") {
        const Matrix x{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        const auto a = pca::fit(x, 3);
        const auto b = pca::fit(x, 3);
        CHECK(a == b);
        CHECK(max_abs(a.loadings.transpose() * a.loadings - Matrix::identity(3)) <= 1e-9);
    }
}
