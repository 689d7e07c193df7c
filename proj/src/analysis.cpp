#include "obsfeat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "obsfeat/csv.hpp"
#include "obsfeat/error.hpp"
#include "obsfeat/report.hpp"
#include "obsfeat/serialize.hpp"

namespace obsfeat::analysis {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::mean_over_trials: return "mean_over_trials";
        case Provenance::best_model: return "best_model";
        case Provenance::best_on_nonobsolete: return "best_on_nonobsolete";
        case Provenance::expert: return "expert";
    }
    return "expert";
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::combined: return "combined";
        case Measure::pca_contribution: return "pca_contribution";
        case Measure::expert: return "expert";
    }
    return "expert";
}

Provenance parse_provenance(std::string_view text) {
    for (auto p : {Provenance::mean_over_trials, Provenance::best_model, Provenance::best_on_nonobsolete,
                   Provenance::expert})
        if (to_string(p) == text) return p;
    fail_input("unknown ranking provenance '" + std::string(text) + "'");
}

Measure parse_measure(std::string_view text) {
    for (auto m : {Measure::combined, Measure::pca_contribution, Measure::expert})
        if (to_string(m) == text) return m;
    fail_input("unknown ranking measure '" + std::string(text) + "'");
}

const RankingEntry* FeatureRanking::find(std::string_view feature) const {
    for (const auto& e : entries)
        if (e.feature == feature) return &e;
    return nullptr;
}

void sort_entries(std::vector<RankingEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.eliminated != b.eliminated) return !a.eliminated;
        if (a.score != b.score) return a.score > b.score;
        return a.feature < b.feature;
    });
}

TrialRankings combined_ranking(const pca::Model& model, std::span<const double> importances,
                               const preprocess::EliminationTrace& trace, std::span<const std::string> all_features,
                               Provenance provenance) {
    const std::size_t h = model.input_dim();
    const std::size_t ell = model.components();
    if (importances.size() != ell)
        fail_input("combined_ranking: " + std::to_string(importances.size()) + " importances for " +
                   std::to_string(ell) + " components");
    if (trace.surviving_indices.size() != h)
        fail_input("combined_ranking: elimination trace keeps " + std::to_string(trace.surviving_indices.size()) +
                   " features but the PCA model has " + std::to_string(h));

    TrialRankings out;
    out.combined.provenance = out.pca_only.provenance = provenance;
    out.combined.measure = Measure::combined;
    out.pca_only.measure = Measure::pca_contribution;

    const std::vector<double> contributions = pca::feature_contributions(model);
    std::vector<bool> survived(all_features.size(), false);
    for (std::size_t k = 0; k < h; ++k) {
        const std::size_t j = trace.surviving_indices[k];
        if (j >= all_features.size()) fail_input("combined_ranking: surviving index out of range");
        survived[j] = true;
        double score = 0.0;
        for (std::size_t c = 0; c < ell; ++c) score += std::abs(model.loadings(k, c)) * importances[c];
        out.combined.entries.push_back({all_features[j], score, false});
        out.pca_only.entries.push_back({all_features[j], contributions[k], false});
    }
    for (std::size_t j = 0; j < all_features.size(); ++j)
        if (!survived[j]) {
            out.combined.entries.push_back({all_features[j], 0.0, true});
            out.pca_only.entries.push_back({all_features[j], 0.0, true});
        }
    sort_entries(out.combined.entries);
    sort_entries(out.pca_only.entries);
    return out;
}

FeatureRanking mean_ranking(std::span<const FeatureRanking> rankings, Provenance provenance) {
    if (rankings.empty()) fail_input("mean_ranking: no rankings to average");
    std::set<std::string> universe;
    for (const auto& e : rankings.front().entries) universe.insert(e.feature);
    struct Acc {
        double sum = 0.0;
        std::size_t eliminated = 0;
    };
    std::map<std::string, Acc> acc;
    for (const auto& r : rankings) {
        std::set<std::string> names;
        for (const auto& e : r.entries) {
            names.insert(e.feature);
            acc[e.feature].sum += e.score;
            acc[e.feature].eliminated += e.eliminated ? 1 : 0;
        }
        if (names != universe || names.size() != r.entries.size())
            fail_input("mean_ranking: rankings cover different feature sets");
    }
    FeatureRanking out;
    out.provenance = provenance;
    out.measure = rankings.front().measure;
    const double n = static_cast<double>(rankings.size());
    for (const auto& [name, a] : acc) out.entries.push_back({name, a.sum / n, a.eliminated == rankings.size()});
    sort_entries(out.entries);
    return out;
}

std::vector<double> average_ranks(std::span<const double> scores) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = static_cast<double>(i + j + 2) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double rank_agreement(const FeatureRanking& a, const FeatureRanking& b) {
    std::vector<double> sa, sb;
    for (const auto& e : a.entries)
        if (const RankingEntry* other = b.find(e.feature)) {
            sa.push_back(e.score);
            sb.push_back(other->score);
        }
    const std::size_t n = sa.size();
    if (n < 2) fail_input("rank_agreement: rankings share fewer than 2 features");
    const std::vector<double> ra = average_ranks(sa);
    const std::vector<double> rb = average_ranks(sb);

    const bool tied = std::set<double>(ra.begin(), ra.end()).size() < n || std::set<double>(rb.begin(), rb.end()).size() < n;
    if (!tied) {
        // Integer ranks: rho = (n(n^2-1) - 6 sum d^2) / (n(n^2-1)), exact numerator.
        long long d2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long long d = std::llround(ra[i] - rb[i]);
            d2 += d * d;
        }
        const long long denom = static_cast<long long>(n) * (static_cast<long long>(n * n) - 1);
        return static_cast<double>(denom - 6 * d2) / static_cast<double>(denom);
    }
    // Pearson correlation of the average ranks.
    const double mean = static_cast<double>(n + 1) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (ra[i] - mean) * (rb[i] - mean);
        sxx += (ra[i] - mean) * (ra[i] - mean);
        syy += (rb[i] - mean) * (rb[i] - mean);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) fail_numerical("rank_agreement: a ranking assigns every feature the same score");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ExpertRanking parse_expert_ranking(std::string_view csv_text) {
    const csv::Table table = csv::parse(csv_text);
    if (table.header.size() != 2 || table.header[0] != "feature" || table.header[1] != "rank")
        fail_input("expert ranking: header must be 'feature,rank'");
    ExpertRanking out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::string where = "expert ranking line " + std::to_string(table.line_numbers[i]);
        const auto& row = table.rows[i];
        if (row[0].empty()) fail_input(where + ": empty feature name");
        if (!seen.insert(row[0]).second) fail_input(where + ": feature '" + row[0] + "' listed twice");
        const double rank = csv::parse_double(row[1], where);
        if (!(rank >= 1.0)) fail_input(where + ": rank must be >= 1");
        out.entries.push_back({row[0], rank});
    }
    if (out.entries.empty()) fail_input("expert ranking lists no features");
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const ExpertEntry& a, const ExpertEntry& b) { return a.rank < b.rank; });
    return out;
}

ExpertRanking load_expert_ranking(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open expert ranking '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_expert_ranking(text);
}

void check_expert_features(const ExpertRanking& expert, std::span<const std::string> dataset_features) {
    for (const auto& e : expert.entries)
        if (std::find(dataset_features.begin(), dataset_features.end(), e.feature) == dataset_features.end())
            fail_input("expert ranking names unknown feature '" + e.feature + "'");
}

FeatureRanking to_feature_ranking(const ExpertRanking& expert) {
    double max_rank = 0.0;
    for (const auto& e : expert.entries) max_rank = std::max(max_rank, e.rank);
    FeatureRanking out;
    out.provenance = Provenance::expert;
    out.measure = Measure::expert;
    for (const auto& e : expert.entries) out.entries.push_back({e.feature, max_rank + 1.0 - e.rank, false});
    sort_entries(out.entries);
    return out;
}

namespace {

// Headline (combined-measure) ranking for each provenance, plus the expert one.
struct Columns {
    const FeatureRanking* mean = nullptr;
    const FeatureRanking* best = nullptr;
    const FeatureRanking* best_u = nullptr;
    const FeatureRanking* expert = nullptr;
    std::vector<std::string> features;
};

Columns collect(std::span<const FeatureRanking> rankings) {
    Columns c;
    for (const auto& r : rankings) {
        if (r.measure == Measure::pca_contribution) continue;
        const FeatureRanking** slot = nullptr;
        switch (r.provenance) {
            case Provenance::mean_over_trials: slot = &c.mean; break;
            case Provenance::best_model: slot = &c.best; break;
            case Provenance::best_on_nonobsolete: slot = &c.best_u; break;
            case Provenance::expert: slot = &c.expert; break;
        }
        if (!*slot) *slot = &r;
    }
    std::set<std::string> seen;
    for (const FeatureRanking* r : {c.mean, c.best, c.best_u, c.expert}) {
        if (!r) continue;
        for (const auto& e : r->entries)
            if (seen.insert(e.feature).second) c.features.push_back(e.feature);
    }
    return c;
}

std::string score_cell(const FeatureRanking* r, const std::string& feature) {
    if (!r) return "";
    const RankingEntry* e = r->find(feature);
    return e ? csv::format_double(e->score) : "";
}

std::string log_cell(const FeatureRanking* r, const std::string& feature) {
    if (!r) return "";
    const RankingEntry* e = r->find(feature);
    if (!e) return "";
    return e->score > 0.0 ? csv::format_double(std::log10(e->score)) : "-inf";
}

}  // namespace

std::string format_rankings_csv(std::span<const FeatureRanking> rankings) {
    const Columns c = collect(rankings);
    std::string out = csv::join_row(
        {"feature", "mean_score", "best_model_score", "best_on_nonobsolete_score", "expert_rank"});
    std::map<std::string, double> expert_rank;
    if (c.expert) {
        std::vector<double> scores;
        for (const auto& e : c.expert->entries) scores.push_back(e.score);
        const auto ranks = average_ranks(scores);
        for (std::size_t i = 0; i < ranks.size(); ++i) expert_rank[c.expert->entries[i].feature] = ranks[i];
    }
    for (const auto& f : c.features) {
        auto it = expert_rank.find(f);
        out += csv::join_row({f, score_cell(c.mean, f), score_cell(c.best, f), score_cell(c.best_u, f),
                              it == expert_rank.end() ? "" : csv::format_double(it->second)});
    }
    return out;
}

std::string format_contributions_plot_csv(std::span<const FeatureRanking> rankings) {
    const Columns c = collect(rankings);
    std::string out = csv::join_row({"feature", "mean", "best_model", "best_on_nonobsolete", "log10_mean",
                                     "log10_best_model", "log10_best_on_nonobsolete"});
    for (const auto& f : c.features) {
        if (!(c.mean && c.mean->find(f)) && !(c.best && c.best->find(f)) && !(c.best_u && c.best_u->find(f)))
            continue;
        out += csv::join_row({f, score_cell(c.mean, f), score_cell(c.best, f), score_cell(c.best_u, f),
                              log_cell(c.mean, f), log_cell(c.best, f), log_cell(c.best_u, f)});
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_io("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail_io("write failed for '" + path.string() + "'");
}

void emit_report(const EvaluationReport& report, std::span<const FeatureRanking> rankings,
                 const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail_io("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    write_text_file(out_dir / "report.json", dump_json(to_json(report)));
    write_text_file(out_dir / "rankings.csv", format_rankings_csv(rankings));
    write_text_file(out_dir / "contributions_plot.csv", format_contributions_plot_csv(rankings));
}

}  // namespace obsfeat::analysis
