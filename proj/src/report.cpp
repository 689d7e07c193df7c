#include "obsfeat/report.hpp"

#include <algorithm>

#include "obsfeat/error.hpp"

namespace obsfeat {

Dataset drop_constant_features(const Dataset& ds, std::vector<std::string>& dropped) {
    const auto constant = constant_columns(ds);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        if (std::find(constant.begin(), constant.end(), j) == constant.end())
            keep.push_back(j);
        else
            dropped.push_back(ds.features[j].name);
    }
    if (keep.empty()) fail_input("every feature column is constant");
    return ds.select_features(keep);
}

std::size_t select_best_trial(const std::vector<TrialOutcome>& trials) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < trials.size(); ++i)
        if (trials[i].correct * trials[best].total > trials[best].correct * trials[i].total) best = i;
    return best;
}

std::optional<std::size_t> select_best_nonobsolete(const std::vector<TrialOutcome>& trials) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (!trials[i].nonobsolete) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& a = *trials[i].nonobsolete;
        const auto& b = *trials[*best].nonobsolete;
        const auto lhs = a.correct * b.total;
        const auto rhs = b.correct * a.total;
        if (lhs > rhs || (lhs == rhs && trials[i].correct * trials[*best].total >
                                            trials[*best].correct * trials[i].total))
            best = i;
    }
    return best;
}

EvaluationReport run_experiment(const Dataset& dataset, const RunSettings& settings,
                                const std::optional<analysis::ExpertRanking>& expert, std::size_t jobs) {
    using analysis::FeatureRanking;
    using analysis::Provenance;

    EvaluationReport report;
    report.settings = settings;
    report.manifest.master_seed = settings.pipeline.seed;

    const Dataset data =
        settings.drop_constant ? drop_constant_features(dataset, report.dropped_constant_features) : dataset;
    const Partition parts = partition(data);
    const Dataset obsolete = parts.obsolete.materialize();
    const Dataset non_obsolete = parts.non_obsolete.materialize();
    report.obsolete_count = obsolete.size();
    report.non_obsolete_count = non_obsolete.size();
    const std::vector<std::string> features = data.feature_names();
    if (expert) analysis::check_expert_features(*expert, features);

    const RepeatedEvaluation eval =
        repeated_evaluation(obsolete, settings.pipeline, settings.trials, settings.pipeline.seed, jobs);
    report.statistics = eval.stats;

    std::vector<FeatureRanking> combined, pca_only;
    combined.reserve(eval.trials.size());
    pca_only.reserve(eval.trials.size());
    for (const auto& t : eval.trials) {
        TrialOutcome outcome{t.seed, t.correct, t.test_count, std::nullopt};
        if (non_obsolete.size() > 0) outcome.nonobsolete = score_nonobsolete(t, non_obsolete);
        report.trials.push_back(outcome);
        auto r = analysis::combined_ranking(t.pca, tree::importances(t.tree), t.elimination, features);
        combined.push_back(std::move(r.combined));
        pca_only.push_back(std::move(r.pca_only));
    }

    report.best_trial_index = select_best_trial(report.trials);
    report.best_trial = eval.trials[report.best_trial_index];
    report.best_nonobsolete_index = select_best_nonobsolete(report.trials);
    if (report.best_nonobsolete_index) report.best_nonobsolete_trial = eval.trials[*report.best_nonobsolete_index];

    auto relabel = [](FeatureRanking r, Provenance p) {
        r.provenance = p;
        return r;
    };
    for (auto* family : {&combined, &pca_only}) {
        report.rankings.push_back(analysis::mean_ranking(*family, Provenance::mean_over_trials));
        report.rankings.push_back(relabel((*family)[report.best_trial_index], Provenance::best_model));
        if (report.best_nonobsolete_index)
            report.rankings.push_back(relabel((*family)[*report.best_nonobsolete_index], Provenance::best_on_nonobsolete));
    }

    if (expert) {
        report.expert = expert;
        const FeatureRanking expert_ranking = analysis::to_feature_ranking(*expert);
        for (const auto& r : report.rankings) {
            if (r.measure != analysis::Measure::combined) continue;
            report.agreements.push_back(
                {std::string(analysis::to_string(r.provenance)), "expert", analysis::rank_agreement(r, expert_ranking)});
        }
        report.rankings.push_back(expert_ranking);
    }
    return report;
}

}  // namespace obsfeat
