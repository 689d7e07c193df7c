#include "obsfeat/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "obsfeat/error.hpp"
#include "obsfeat/parallel.hpp"

namespace obsfeat {

std::string_view to_string(NormalizationOrder order) {
    return order == NormalizationOrder::frozen_training ? "frozen_training" : "paper_literal";
}

NormalizationOrder parse_normalization_order(std::string_view text) {
    if (text == "frozen_training") return NormalizationOrder::frozen_training;
    if (text == "paper_literal") return NormalizationOrder::paper_literal;
    fail_input("unknown normalization order '" + std::string(text) + "' (expected frozen_training or paper_literal)");
}

void PipelineConfig::validate() const {
    if (!(alpha >= -1.0 && alpha <= 1.0)) fail_input("alpha must lie in [-1, 1]");
    if (ell < 1) fail_input("ell must be >= 1");
    if (test_count < 1) fail_input("test_count must be >= 1");
    tree.validate();
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

void require_obsolete_only(const Dataset& ds) {
    if (ds.size() == 0) fail_input("obsolete set is empty");
    if (std::find(ds.obsolete.begin(), ds.obsolete.end(), false) != ds.obsolete.end())
        fail_input("trial input must contain obsolete rows only; partition the dataset first");
}

Standardization fit_standardization(const Matrix& x, const std::vector<std::string>& names) {
    Standardization s;
    const double n = static_cast<double>(x.rows());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) sum += x(i, j);
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
        const double sd = std::sqrt(ss / n);
        if (!(sd > 0.0)) fail_numerical("cannot standardize constant feature '" + names[j] + "' before PCA");
        s.means.push_back(mean);
        s.sds.push_back(sd);
    }
    return s;
}

void apply_standardization(Matrix& x, const Standardization& s) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = (x(i, j) - s.means[j]) / s.sds[j];
}

Matrix prepare(const TrialResult& trial, const Dataset& reduced) {
    Dataset normalized = preprocess::apply_normalization(reduced, trial.normalization);
    Matrix x = std::move(normalized.rows);
    if (trial.standardization) apply_standardization(x, *trial.standardization);
    return pca::transform(trial.pca, x);
}

}  // namespace

TrialResult run_trial(const Dataset& obsolete, const PipelineConfig& config, std::uint64_t seed) {
    config.validate();
    require_obsolete_only(obsolete);
    const auto trace = preprocess::eliminate(preprocess::pearson_matrix(obsolete), config.alpha, config.correlation_mode);
    return run_trial(obsolete, config, seed, trace);
}

TrialResult run_trial(const Dataset& obsolete, const PipelineConfig& config, std::uint64_t seed,
                      const preprocess::EliminationTrace& elimination) {
    config.validate();
    require_obsolete_only(obsolete);
    const std::size_t h = elimination.surviving_indices.size();
    if (config.ell > h)
        fail_input("ell = " + std::to_string(config.ell) + " exceeds the " + std::to_string(h) +
                   " features left after elimination at alpha = " + std::to_string(config.alpha));

    TrialResult result;
    result.config = config;
    result.seed = seed;
    result.feature_names = obsolete.feature_names();
    result.class_names = obsolete.class_names;
    result.elimination = elimination;

    const Dataset reduced = obsolete.select_features(elimination.surviving_indices);
    const Split split = shuffle_split(reduced, config.test_count, seed);
    const Dataset train = split.train.materialize();
    const Dataset test = split.test.materialize();

    result.normalization = preprocess::fit_binary_normalization(
        config.normalization == NormalizationOrder::frozen_training ? train : reduced);

    Matrix train_x = preprocess::apply_normalization(train, result.normalization).rows;
    if (config.standardize_before_pca) {
        result.standardization = fit_standardization(train_x, reduced.feature_names());
        apply_standardization(train_x, *result.standardization);
    }
    result.pca = pca::fit(train_x, config.ell, reduced.feature_names());
    const Matrix train_scores = pca::transform(result.pca, train_x);
    result.tree = tree::fit(train_scores, train.labels, obsolete.class_count(), config.tree);

    const Matrix test_scores = prepare(result, test);
    result.test_ids = test.ids;
    result.test_count = test.size();
    result.correct = tree::count_correct(result.tree, test_scores, test.labels);
    result.test_accuracy = static_cast<double>(result.correct) / static_cast<double>(result.test_count);
    return result;
}

Matrix project(const TrialResult& trial, const Dataset& raw) {
    if (raw.feature_names() != trial.feature_names)
        fail_input("feature set does not match the schema the model was trained on");
    return prepare(trial, raw.select_features(trial.elimination.surviving_indices));
}

NonObsoleteScore score_nonobsolete(const TrialResult& trial, const Dataset& non_obsolete) {
    if (non_obsolete.size() == 0) fail_input("non-obsolete set is empty");
    if (non_obsolete.class_count() != trial.tree.class_count)
        fail_input("non-obsolete set uses a different class list than the training data");
    const Matrix scores = project(trial, non_obsolete);
    return {tree::count_correct(trial.tree, scores, non_obsolete.labels), non_obsolete.size()};
}

double evaluate_nonobsolete(const TrialResult& trial, const Dataset& non_obsolete) {
    return score_nonobsolete(trial, non_obsolete).accuracy();
}

RepeatedEvaluation repeated_evaluation(const Dataset& obsolete, const PipelineConfig& config, std::size_t n_trials,
                                       std::uint64_t master_seed, std::size_t jobs) {
    if (n_trials < 1) fail_input("repeated evaluation needs at least one trial");
    config.validate();
    require_obsolete_only(obsolete);
    const auto trace = preprocess::eliminate(preprocess::pearson_matrix(obsolete), config.alpha, config.correlation_mode);

    RepeatedEvaluation out;
    out.trials.resize(n_trials);
    parallel_for(n_trials, jobs, [&](std::size_t i) {
        out.trials[i] = run_trial(obsolete, config, derive_trial_seed(master_seed, i), trace);
    });
    std::vector<TrialAccuracy> acc;
    acc.reserve(n_trials);
    for (const auto& t : out.trials) acc.push_back(t.accuracy());
    out.stats = summarize(acc);
    return out;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    for (int i = -20; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 20.0);
    return grid;
}

bool ranks_before(const LeaderboardEntry& a, const LeaderboardEntry& b) {
    if (a.mean_accuracy != b.mean_accuracy) return a.mean_accuracy > b.mean_accuracy;
    if (a.h != b.h) return a.h < b.h;
    if (a.ell != b.ell) return a.ell < b.ell;
    return a.alpha < b.alpha;
}

SearchResult hyperparameter_search(const Dataset& obsolete, const PipelineConfig& base, const SearchOptions& options) {
    base.validate();
    require_obsolete_only(obsolete);
    if (options.alpha_grid.empty()) fail_input("search: alpha grid is empty");
    if (options.budget < 1) fail_input("search: budget must be >= 1");

    std::vector<double> alphas;
    for (double a : options.alpha_grid) {
        if (!(a >= -1.0 && a <= 1.0)) fail_input("search: alpha grid value outside [-1, 1]");
        if (std::find(alphas.begin(), alphas.end(), a) == alphas.end()) alphas.push_back(a);
    }
    std::vector<std::size_t> ells;
    for (std::size_t l : options.ell_grid) {
        if (l < 1) fail_input("search: ell grid values must be >= 1");
        if (std::find(ells.begin(), ells.end(), l) == ells.end()) ells.push_back(l);
    }

    const auto corr = preprocess::pearson_matrix(obsolete);
    struct GridPoint {
        double alpha;
        std::size_t ell;
        std::size_t trace_index;
    };
    std::vector<preprocess::EliminationTrace> traces;
    std::vector<GridPoint> grid;
    SearchResult result;
    for (double a : alphas) {
        traces.push_back(preprocess::eliminate(corr, a, base.correlation_mode));
        const std::size_t h = traces.back().surviving_indices.size();
        if (ells.empty()) {
            for (std::size_t l = 1; l <= h; ++l) grid.push_back({a, l, traces.size() - 1});
        } else {
            for (std::size_t l : ells) {
                if (l <= h)
                    grid.push_back({a, l, traces.size() - 1});
                else
                    ++result.infeasible_configs;
            }
        }
    }
    if (grid.empty()) fail_input("search: every (alpha, ell) configuration is infeasible (ell > h)");

    const std::size_t g = grid.size();
    std::size_t total = options.budget;
    if (options.trials_per_config > 0) {
        total = options.trials_per_config * g;
        if (total > options.budget)
            fail_input("search: " + std::to_string(options.trials_per_config) + " trials per config over " +
                       std::to_string(g) + " configs exceeds the budget of " + std::to_string(options.budget));
    }
    // A budget smaller than the grid samples configs at an even stride, one
    // trial each; otherwise trial t runs config t % g.
    const bool sparse = total < g;

    result.trials.resize(total);
    parallel_for(total, options.jobs, [&](std::size_t t) {
        const std::size_t ci = sparse ? t * g / total : t % g;
        const std::size_t rep = sparse ? 0 : t / g;
        PipelineConfig cfg = base;
        cfg.alpha = grid[ci].alpha;
        cfg.ell = grid[ci].ell;
        const std::uint64_t seed = derive_trial_seed(options.master_seed, rep);
        const TrialResult tr = run_trial(obsolete, cfg, seed, traces[grid[ci].trace_index]);
        result.trials[t] = {ci, cfg.alpha, cfg.ell, seed, tr.correct, tr.test_count};
    });

    std::vector<std::vector<TrialAccuracy>> per_config(g);
    for (const auto& t : result.trials) per_config[t.config_index].push_back({t.seed, t.correct, t.total});
    for (std::size_t ci = 0; ci < g; ++ci) {
        if (per_config[ci].empty()) continue;
        const AccuracyStats s = summarize(per_config[ci]);
        result.leaderboard.push_back({grid[ci].alpha, grid[ci].ell,
                                      traces[grid[ci].trace_index].surviving_indices.size(), s.n_trials,
                                      s.arithmetic_mean, s.max});
    }
    std::sort(result.leaderboard.begin(), result.leaderboard.end(), ranks_before);

    result.best = base;
    result.best.alpha = result.leaderboard.front().alpha;
    result.best.ell = result.leaderboard.front().ell;
    return result;
}

}  // namespace obsfeat
