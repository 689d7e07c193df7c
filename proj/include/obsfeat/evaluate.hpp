#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obsfeat/dataset.hpp"
#include "obsfeat/pca.hpp"
#include "obsfeat/preprocess.hpp"
#include "obsfeat/statistics.hpp"
#include "obsfeat/tree.hpp"

namespace obsfeat {

// Where the binary-normalization statistics come from.
enum class NormalizationOrder {
    frozen_training,  // fitted on the training split, reused for test and hold-out rows
    paper_literal,    // fitted on the whole obsolete set before splitting
};

std::string_view to_string(NormalizationOrder order);
NormalizationOrder parse_normalization_order(std::string_view text);

struct PipelineConfig {
    double alpha = 0.15;
    preprocess::CorrelationMode correlation_mode = preprocess::CorrelationMode::absolute;
    std::size_t ell = 7;
    bool standardize_before_pca = false;
    tree::Params tree;
    std::size_t test_count = 21;
    std::uint64_t seed = 0;
    NormalizationOrder normalization = NormalizationOrder::frozen_training;

    void validate() const;
    bool operator==(const PipelineConfig&) const = default;
};

// Per-column centering and scaling applied after normalization when
// standardize_before_pca is set.
struct Standardization {
    std::vector<double> means;
    std::vector<double> sds;

    bool operator==(const Standardization&) const = default;
};

struct TrialResult {
    PipelineConfig config;
    std::uint64_t seed = 0;
    std::vector<std::string> feature_names;  // full input feature set, in order
    std::vector<std::string> class_names;
    preprocess::EliminationTrace elimination;
    preprocess::NormalizationStats normalization;  // indices into surviving features
    std::optional<Standardization> standardization;
    pca::Model pca;
    tree::Tree tree;
    std::vector<std::string> test_ids;
    std::size_t correct = 0;
    std::size_t test_count = 0;
    double test_accuracy = 0.0;

    TrialAccuracy accuracy() const { return {seed, correct, test_count}; }
    bool operator==(const TrialResult&) const = default;
};

// splitmix64 of master + (index + 1) * golden gamma; injective in index.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t index);

// Elimination is label-free and invariant under the positive affine
// normalization, so it runs once on the raw obsolete set. Then: split,
// normalize, (standardize), PCA on train, tree on train, score on test.
TrialResult run_trial(const Dataset& obsolete, const PipelineConfig& config, std::uint64_t seed);
TrialResult run_trial(const Dataset& obsolete, const PipelineConfig& config, std::uint64_t seed,
                      const preprocess::EliminationTrace& elimination);

// Applies a trial's frozen feature mask, normalization, standardization and
// PCA to raw rows, yielding PC scores.
Matrix project(const TrialResult& trial, const Dataset& raw);

struct NonObsoleteScore {
    std::size_t correct = 0;
    std::size_t total = 0;

    double accuracy() const noexcept { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
    bool operator==(const NonObsoleteScore&) const = default;
};

NonObsoleteScore score_nonobsolete(const TrialResult& trial, const Dataset& non_obsolete);
double evaluate_nonobsolete(const TrialResult& trial, const Dataset& non_obsolete);

struct RepeatedEvaluation {
    AccuracyStats stats;
    std::vector<TrialResult> trials;  // in trial-index order
};

RepeatedEvaluation repeated_evaluation(const Dataset& obsolete, const PipelineConfig& config, std::size_t n_trials,
                                       std::uint64_t master_seed, std::size_t jobs = 0);

// 41 points: -1.00, -0.95, ..., 1.00
std::vector<double> default_alpha_grid();

struct SearchOptions {
    std::vector<double> alpha_grid = default_alpha_grid();
    std::vector<std::size_t> ell_grid;  // empty: 1..h for each alpha
    std::size_t trials_per_config = 0;  // 0: spread the budget round-robin
    std::size_t budget = 500;
    std::uint64_t master_seed = 0;
    std::size_t jobs = 0;

    bool operator==(const SearchOptions&) const = default;
};

struct LeaderboardEntry {
    double alpha = 0.0;
    std::size_t ell = 0;
    std::size_t h = 0;
    std::size_t trials = 0;
    double mean_accuracy = 0.0;
    double best_accuracy = 0.0;

    bool operator==(const LeaderboardEntry&) const = default;
};

struct SearchTrial {
    std::size_t config_index = 0;  // position in the evaluation grid
    double alpha = 0.0;
    std::size_t ell = 0;
    std::uint64_t seed = 0;
    std::size_t correct = 0;
    std::size_t total = 0;

    bool operator==(const SearchTrial&) const = default;
};

struct SearchResult {
    PipelineConfig best;
    std::vector<LeaderboardEntry> leaderboard;  // best first
    std::vector<SearchTrial> trials;
    std::size_t infeasible_configs = 0;

    bool operator==(const SearchResult&) const = default;
};

// Grid search over (alpha, ell). Trial r of every config uses
// derive_trial_seed(master_seed, r), so configs are compared on the same
// splits. Ranking: higher mean accuracy, then lower h, lower ell, lower alpha.
SearchResult hyperparameter_search(const Dataset& obsolete, const PipelineConfig& base, const SearchOptions& options);

// Leaderboard order as a strict weak ordering (a before b).
bool ranks_before(const LeaderboardEntry& a, const LeaderboardEntry& b);

}  // namespace obsfeat
