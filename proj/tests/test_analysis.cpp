#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "obsfeat/analysis.hpp"
#include "obsfeat/error.hpp"

using namespace obsfeat;
using namespace obsfeat::analysis;

namespace {

FeatureRanking ranking_of(const std::vector<std::pair<std::string, double>>& scores) {
    FeatureRanking r;
    for (const auto& [name, score] : scores) r.entries.push_back({name, score, false});
    sort_entries(r.entries);
    return r;
}

// Ordering f_1..f_n given as a list; score = n - position.
FeatureRanking ordered(const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, double>> s;
    for (std::size_t i = 0; i < names.size(); ++i) s.emplace_back(names[i], static_cast<double>(names.size() - i));
    return ranking_of(s);
}

pca::Model model_with(const Matrix& loadings) {
    pca::Model m;
    m.loadings = loadings;
    m.eigenvalues.assign(loadings.cols(), 1.0);
    m.column_means.assign(loadings.rows(), 0.0);
    return m;
}

preprocess::EliminationTrace keep_all(std::size_t n) {
    preprocess::EliminationTrace t;
    for (std::size_t i = 0; i < n; ++i) t.surviving_indices.push_back(i);
    return t;
}

// Spearman via 1 - 6 sum d^2 / (n (n^2 - 1)) on distinct scores, by direct rank assignment.
double oracle_spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    auto ranks = [n](const std::vector<double>& v) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] > v[y]; });
        std::vector<double> r(n);
        for (std::size_t k = 0; k < n; ++k) r[idx[k]] = static_cast<double>(k + 1);
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    const double nn = static_cast<double>(n);
    return 1 - 6 * d2 / (nn * (nn * nn - 1));
}

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("identity loadings pass importances through") {
        const std::vector<std::string> names{"a", "b"};
        const auto r = combined_ranking(model_with(Matrix::identity(2)), std::vector<double>{0.7, 0.3}, keep_all(2), names);
        CHECK(r.combined.find("a")->score == 0.7);
        CHECK(r.combined.find("b")->score == 0.3);
        CHECK(r.pca_only.find("a")->score == 1.0);
    }

    TEST_CASE("propagation through rotated loadings") {
        const std::vector<std::string> names{"a", "b"};
        const auto single = combined_ranking(model_with(Matrix{{0.6}, {0.8}}), std::vector<double>{1.0}, keep_all(2), names);
        CHECK(single.combined.find("a")->score == doctest::Approx(0.6));
        CHECK(single.combined.find("b")->score == doctest::Approx(0.8));
        const auto rot = combined_ranking(model_with(Matrix{{0.6, -0.8}, {0.8, 0.6}}), std::vector<double>{0.5, 0.5},
                                          keep_all(2), names);
        CHECK(rot.combined.find("a")->score == doctest::Approx(0.7));
        CHECK(rot.combined.find("b")->score == doctest::Approx(0.7));
        const auto flipped = combined_ranking(model_with(Matrix{{-0.6, 0.8}, {-0.8, -0.6}}),
                                              std::vector<double>{0.5, 0.5}, keep_all(2), names);
        CHECK(flipped.combined == rot.combined);
    }

    TEST_CASE("eliminated features score zero and sort last") {
        const std::vector<std::string> names{"a", "b", "c"};
        preprocess::EliminationTrace trace;
        trace.surviving_indices = {0, 2};
        trace.removed = {{"b", 1, 0.99, "a"}};
        const auto r = combined_ranking(model_with(Matrix::identity(2)), std::vector<double>{0.2, 0.8}, trace, names);
        REQUIRE(r.combined.entries.size() == 3);
        CHECK(r.combined.entries[0].feature == "c");
        CHECK(r.combined.entries[2].feature == "b");
        CHECK(r.combined.entries[2].eliminated);
        CHECK(r.combined.entries[2].score == 0.0);
        CHECK_THROWS_AS(combined_ranking(model_with(Matrix::identity(2)), std::vector<double>{1.0}, trace, names), Error);
    }

    TEST_CASE("mean ranking") {
        const auto one = ranking_of({{"a", 1.0}, {"b", 0.0}});
        const std::vector<FeatureRanking> single{one};
        CHECK(mean_ranking(single).entries == one.entries);
        const std::vector<FeatureRanking> pair{one, ranking_of({{"a", 0.0}, {"b", 1.0}})};
        const auto m = mean_ranking(pair);
        CHECK(m.find("a")->score == 0.5);
        CHECK(m.find("b")->score == 0.5);

        auto r3 = ranking_of({{"A", 0.0}, {"B", 0.1}});
        for (auto& e : r3.entries)
            if (e.feature == "A") e.eliminated = true;
        const std::vector<FeatureRanking> three{ranking_of({{"A", 0.9}, {"B", 0.1}}), ranking_of({{"A", 0.6}, {"B", 0.1}}), r3};
        CHECK(mean_ranking(three).find("A")->score == doctest::Approx(0.5));
        CHECK_FALSE(mean_ranking(three).find("A")->eliminated);

        CHECK_THROWS_AS(mean_ranking(std::vector<FeatureRanking>{}), Error);
        const std::vector<FeatureRanking> mismatch{one, ranking_of({{"a", 1.0}, {"z", 0.0}})};
        CHECK_THROWS_AS(mean_ranking(mismatch), Error);
    }

    TEST_CASE("mean of identical copies is the ranking") {
        const auto r = ranking_of({{"x", 0.3}, {"y", 0.9}, {"z", 0.1}});
        const std::vector<FeatureRanking> copies(5, r);
        const auto m = mean_ranking(copies);
        for (const auto& e : r.entries) CHECK(m.find(e.feature)->score == doctest::Approx(e.score));
    }

    TEST_CASE("spearman examples") {
        const auto a = ordered({"f1", "f2", "f3", "f4"});
        CHECK(rank_agreement(a, a) == 1.0);
        CHECK(rank_agreement(a, ordered({"f4", "f3", "f2", "f1"})) == -1.0);
        CHECK(rank_agreement(a, ordered({"f1", "f3", "f2", "f4"})) == 0.8);
    }

    TEST_CASE("spearman matches oracle and is symmetric") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0, 1);
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = 2 + t % 15;
            std::vector<std::pair<std::string, double>> sa, sb;
            std::vector<double> va, vb;
            for (std::size_t i = 0; i < n; ++i) {
                va.push_back(u(rng));
                vb.push_back(u(rng));
                sa.emplace_back("f" + std::to_string(i), va.back());
                sb.emplace_back("f" + std::to_string(i), vb.back());
            }
            const auto ra = ranking_of(sa), rb = ranking_of(sb);
            REQUIRE(rank_agreement(ra, rb) == doctest::Approx(oracle_spearman(va, vb)).epsilon(1e-12));
            REQUIRE(std::abs(rank_agreement(ra, rb) - rank_agreement(rb, ra)) <= 1e-12);
        }
    }

    TEST_CASE("ties share average ranks") {
        CHECK(average_ranks(std::vector<double>{3, 1, 3, 2}) == std::vector<double>{1.5, 4, 1.5, 3});
        const auto a = ranking_of({{"a", 1}, {"b", 1}, {"c", 0}});
        const auto b = ranking_of({{"a", 2}, {"b", 1}, {"c", 0}});
        const double rho = rank_agreement(a, b);
        CHECK(rho > 0.8);
        CHECK(rho < 1.0);
    }

    TEST_CASE("agreement needs two shared features") {
        CHECK_THROWS_AS(rank_agreement(ordered({"a", "b"}), ordered({"a", "c"})), Error);
    }

    TEST_CASE("expert ranking file") {
        const auto expert = parse_expert_ranking("feature,rank\nexisting stock quantity,1\n\"security block/product\",3\nunit cost,2\n");
        REQUIRE(expert.entries.size() == 3);
        const auto r = to_feature_ranking(expert);
        CHECK(r.provenance == Provenance::expert);
        CHECK(r.entries[0].feature == "existing stock quantity");
        CHECK(r.entries[0].score == 3.0);
        CHECK(r.entries[2].feature == "security block/product");
        CHECK_THROWS_AS(parse_expert_ranking("name,score\na,1\n"), Error);
        CHECK_THROWS_AS(parse_expert_ranking("feature,rank\na,x\n"), Error);
        CHECK_THROWS_AS(parse_expert_ranking("feature,rank\na,1\na,2\n"), Error);
        CHECK_THROWS_AS(load_expert_ranking("/nonexistent/expert.csv"), Error);
        const std::vector<std::string> known{"existing stock quantity", "unit cost"};
        CHECK_THROWS_AS(check_expert_features(expert, known), Error);
    }

    TEST_CASE("bundled expert file names the expert-top features") {
        const auto expert = load_expert_ranking(std::filesystem::path(OBSFEAT_DATA_DIR) / "expert_ranking.csv");
        const auto r = to_feature_ranking(expert);
        std::vector<std::string> top;
        for (std::size_t i = 0; i < 3; ++i) top.push_back(r.entries[i].feature);
        std::sort(top.begin(), top.end());
        CHECK(top == std::vector<std::string>{"existing stock quantity", "existing substitution product",
                                              "security block/product"});
    }

    TEST_CASE("csv formats") {
        CHECK(format_rankings_csv(std::vector<FeatureRanking>{}) ==
              "feature,mean_score,best_model_score,best_on_nonobsolete_score,expert_rank\n");
        auto mean = ranking_of({{"a", 0.5}, {"b", 0.0}});
        mean.provenance = Provenance::mean_over_trials;
        auto best = ranking_of({{"a", 1.0}, {"b", 0.0}});
        best.provenance = Provenance::best_model;
        auto held = ranking_of({{"a", 0.1}, {"b", 0.01}});
        held.provenance = Provenance::best_on_nonobsolete;
        const std::vector<FeatureRanking> all{mean, best, held};
        const auto plot = format_contributions_plot_csv(all);
        CHECK(plot ==
              "feature,mean,best_model,best_on_nonobsolete,log10_mean,log10_best_model,log10_best_on_nonobsolete\n"
              "a,0.5,1,0.1,-0.3010299956639812,0,-1\n"
              "b,0,0,0.01,-inf,-inf,-2\n");
    }
}
