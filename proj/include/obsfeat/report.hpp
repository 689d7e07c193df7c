#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obsfeat/analysis.hpp"
#include "obsfeat/dataset.hpp"
#include "obsfeat/evaluate.hpp"
#include "obsfeat/statistics.hpp"

namespace obsfeat {

struct InputDigest {
    std::string role;
    std::string path;
    std::string sha256;

    bool operator==(const InputDigest&) const = default;
};

// Everything needed to reproduce an output directory. Timestamps are only
// recorded on request so that reruns stay byte-identical.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::uint64_t master_seed = 0;
    std::vector<InputDigest> inputs;
    std::optional<std::string> started_at;
    std::optional<std::string> finished_at;

    bool operator==(const RunManifest&) const = default;
};

struct RunSettings {
    PipelineConfig pipeline;
    std::size_t trials = 1000;
    SearchOptions search;  // master_seed and jobs are taken from the run, not serialized
    bool drop_constant = false;

    bool operator==(const RunSettings&) const = default;
};

struct TrialOutcome {
    std::uint64_t seed = 0;
    std::size_t correct = 0;
    std::size_t total = 0;
    std::optional<NonObsoleteScore> nonobsolete;

    bool operator==(const TrialOutcome&) const = default;
};

struct Agreement {
    std::string ranking;  // provenance of the model-side ranking
    std::string against;  // "expert"
    double spearman = 0.0;

    bool operator==(const Agreement&) const = default;
};

struct Timings {
    double load_seconds = 0.0;
    double evaluation_seconds = 0.0;
    double analysis_seconds = 0.0;

    bool operator==(const Timings&) const = default;
};

struct EvaluationReport {
    RunManifest manifest;
    RunSettings settings;
    std::optional<SearchResult> search;
    std::vector<std::string> dropped_constant_features;
    std::size_t obsolete_count = 0;
    std::size_t non_obsolete_count = 0;
    AccuracyStats statistics;
    std::vector<TrialOutcome> trials;
    std::size_t best_trial_index = 0;
    TrialResult best_trial;
    std::optional<std::size_t> best_nonobsolete_index;
    std::optional<TrialResult> best_nonobsolete_trial;
    std::vector<analysis::FeatureRanking> rankings;
    std::optional<analysis::ExpertRanking> expert;
    std::vector<Agreement> agreements;
    std::optional<Timings> timings;

    bool operator==(const EvaluationReport&) const = default;
};

struct SearchReport {
    RunManifest manifest;
    RunSettings settings;
    std::vector<std::string> dropped_constant_features;
    SearchResult result;

    bool operator==(const SearchReport&) const = default;
};

// The repeated-evaluation protocol on a full dataset: trials on the obsolete
// rows, hold-out scoring of every trial on the non-obsolete rows, rankings for
// the mean / best / best-on-hold-out models and expert agreement. The
// manifest is left for the caller to fill.
EvaluationReport run_experiment(const Dataset& dataset, const RunSettings& settings,
                                const std::optional<analysis::ExpertRanking>& expert, std::size_t jobs = 0);

// Removes constant columns, returning the names it dropped.
Dataset drop_constant_features(const Dataset& ds, std::vector<std::string>& dropped);

// Best-model selection rules: highest test accuracy (lowest index on ties);
// highest hold-out accuracy, then highest test accuracy, then lowest index.
std::size_t select_best_trial(const std::vector<TrialOutcome>& trials);
std::optional<std::size_t> select_best_nonobsolete(const std::vector<TrialOutcome>& trials);

}  // namespace obsfeat
