#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obsfeat/pca.hpp"
#include "obsfeat/preprocess.hpp"

namespace obsfeat {
struct EvaluationReport;
}

namespace obsfeat::analysis {

enum class Provenance { mean_over_trials, best_model, best_on_nonobsolete, expert };

// combined: tree importance propagated through absolute loadings;
// pca_contribution: unweighted sum of absolute loadings.
enum class Measure { combined, pca_contribution, expert };

std::string_view to_string(Provenance p);
std::string_view to_string(Measure m);
Provenance parse_provenance(std::string_view text);
Measure parse_measure(std::string_view text);

struct RankingEntry {
    std::string feature;
    double score = 0.0;
    bool eliminated = false;

    bool operator==(const RankingEntry&) const = default;
};

// Entries ordered by (eliminated last, score descending, name ascending).
struct FeatureRanking {
    Provenance provenance = Provenance::mean_over_trials;
    Measure measure = Measure::combined;
    std::vector<RankingEntry> entries;

    const RankingEntry* find(std::string_view feature) const;
    bool operator==(const FeatureRanking&) const = default;
};

void sort_entries(std::vector<RankingEntry>& entries);

struct TrialRankings {
    FeatureRanking combined;
    FeatureRanking pca_only;
};

// score_j = sum_k |W[j][k]| * importance_k over surviving features; features
// removed by elimination score 0. `all_features` is the full input feature set.
TrialRankings combined_ranking(const pca::Model& model, std::span<const double> importances,
                               const preprocess::EliminationTrace& trace, std::span<const std::string> all_features,
                               Provenance provenance = Provenance::best_model);

// Per-feature arithmetic mean; a feature is marked eliminated only if it was
// eliminated in every input ranking.
FeatureRanking mean_ranking(std::span<const FeatureRanking> rankings,
                            Provenance provenance = Provenance::mean_over_trials);

// 1-based ranks by descending score, ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> scores);

// Spearman correlation over the shared features.
double rank_agreement(const FeatureRanking& a, const FeatureRanking& b);

struct ExpertEntry {
    std::string feature;
    double rank = 0.0;  // 1 = most important

    bool operator==(const ExpertEntry&) const = default;
};

struct ExpertRanking {
    std::vector<ExpertEntry> entries;

    bool operator==(const ExpertRanking&) const = default;
};

// Two-column CSV with header `feature,rank`.
ExpertRanking load_expert_ranking(const std::filesystem::path& path);
ExpertRanking parse_expert_ranking(std::string_view csv_text);
void check_expert_features(const ExpertRanking& expert, std::span<const std::string> dataset_features);

// Scores are (max rank + 1 - rank), so higher means more important.
FeatureRanking to_feature_ranking(const ExpertRanking& expert);

std::string format_rankings_csv(std::span<const FeatureRanking> rankings);
std::string format_contributions_plot_csv(std::span<const FeatureRanking> rankings);

// Writes report.json, rankings.csv and contributions_plot.csv into out_dir.
void emit_report(const EvaluationReport& report, std::span<const FeatureRanking> rankings,
                 const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace obsfeat::analysis
