#include "obsfeat/serialize.hpp"

#include <set>

#include "obsfeat/error.hpp"
#include "obsfeat/report.hpp"

namespace obsfeat {

void throw_json_error(const std::string& context, const std::string& what) {
    fail_input(context + ": " + what);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text, const std::string& context) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_json_error(context, e.what());
    }
}

namespace {

template <class T>
Json optional_to_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t cols_if_empty) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) return Matrix(0, cols_if_empty);
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) fail_input("JSON matrix has ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) fail_input(what + " must be a JSON object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) fail_input(what + ": unknown key '" + item.key() + "'");
}

}  // namespace

Schema schema_from_json(const Json& j) { return from_json_as<Schema>(j, "schema"); }

void to_json(Json& j, const FeatureDescriptor& v) { j = Json{{"name", v.name}, {"kind", to_string(v.kind)}}; }

void from_json(const Json& j, FeatureDescriptor& v) {
    v.name = j.at("name").get<std::string>();
    v.kind = parse_feature_kind(j.value("kind", std::string("continuous")));
}

void to_json(Json& j, const Schema& v) {
    j = Json{{"id_column", v.id_column},
             {"label_column", v.label_column},
             {"obsolete_column", v.obsolete_column},
             {"class_names", v.class_names},
             {"features", v.features}};
}

void from_json(const Json& j, Schema& v) {
    reject_unknown_keys(j, {"id_column", "label_column", "obsolete_column", "class_names", "features"}, "schema");
    v = Schema{};
    v.id_column = j.value("id_column", v.id_column);
    v.label_column = j.value("label_column", v.label_column);
    v.obsolete_column = j.value("obsolete_column", v.obsolete_column);
    v.class_names = j.at("class_names").get<std::vector<std::string>>();
    v.features = j.at("features").get<std::vector<FeatureDescriptor>>();
}

void to_json(Json& j, const RedundantFeature& v) { j = Json{{"source", v.source}, {"correlation", v.correlation}}; }

void from_json(const Json& j, RedundantFeature& v) {
    v.source = j.at("source").get<std::size_t>();
    v.correlation = j.at("correlation").get<double>();
}

void to_json(Json& j, const SynthesisSpec& v) {
    j = Json{{"o", v.obsolete_count},
             {"u", v.non_obsolete_count},
             {"class_counts", v.class_counts},
             {"class_names", v.class_names},
             {"n_binary", v.n_binary},
             {"n_continuous", v.n_continuous},
             {"redundant_pairs", v.redundant},
             {"informative_strength", v.informative_strength},
             {"seed", v.seed},
             {"feature_names", v.feature_names}};
}

void from_json(const Json& j, SynthesisSpec& v) {
    reject_unknown_keys(j,
                        {"o", "u", "class_counts", "class_names", "n_binary", "n_continuous", "redundant_pairs",
                         "informative_strength", "seed", "feature_names"},
                        "synthesis spec");
    v = SynthesisSpec{};
    v.obsolete_count = j.at("o").get<std::size_t>();
    v.non_obsolete_count = j.at("u").get<std::size_t>();
    v.class_counts = j.at("class_counts").get<std::vector<std::size_t>>();
    v.class_names = j.value("class_names", std::vector<std::string>{});
    v.n_binary = j.at("n_binary").get<std::size_t>();
    v.n_continuous = j.at("n_continuous").get<std::size_t>();
    v.redundant = j.value("redundant_pairs", std::vector<RedundantFeature>{});
    v.informative_strength = j.value("informative_strength", 1.0);
    v.seed = j.value("seed", std::uint64_t{0});
    v.feature_names = j.value("feature_names", std::vector<std::string>{});
}

void to_json(Json& j, const TrialAccuracy& v) {
    j = Json{{"seed", v.seed}, {"correct", v.correct}, {"total", v.total}, {"accuracy", v.accuracy()}};
}

void from_json(const Json& j, TrialAccuracy& v) {
    v.seed = j.at("seed").get<std::uint64_t>();
    v.correct = j.at("correct").get<std::size_t>();
    v.total = j.at("total").get<std::size_t>();
}

void to_json(Json& j, const AccuracyStats& v) {
    j = Json{{"n_trials", v.n_trials},
             {"zero_accuracy_trials", v.zero_accuracy_trials},
             {"statistics",
              {{"min", v.min},
               {"max", v.max},
               {"std", v.std},
               {"arithmetic_mean", v.arithmetic_mean},
               {"geometric_mean", v.geometric_mean}}},
             {"per_trial", v.per_trial}};
}

void from_json(const Json& j, AccuracyStats& v) {
    v.n_trials = j.at("n_trials").get<std::size_t>();
    v.zero_accuracy_trials = j.at("zero_accuracy_trials").get<std::size_t>();
    const Json& s = j.at("statistics");
    v.min = s.at("min").get<double>();
    v.max = s.at("max").get<double>();
    v.std = s.at("std").get<double>();
    v.arithmetic_mean = s.at("arithmetic_mean").get<double>();
    v.geometric_mean = s.at("geometric_mean").get<double>();
    v.per_trial = j.at("per_trial").get<std::vector<TrialAccuracy>>();
}

void to_json(Json& j, const PipelineConfig& v) {
    j = Json{{"alpha", v.alpha},
             {"correlation_mode", preprocess::to_string(v.correlation_mode)},
             {"ell", v.ell},
             {"standardize_before_pca", v.standardize_before_pca},
             {"tree", v.tree},
             {"test_count", v.test_count},
             {"seed", v.seed},
             {"normalization", to_string(v.normalization)}};
}

namespace {

const std::set<std::string> kPipelineKeys = {"alpha", "correlation_mode", "ell", "standardize_before_pca", "tree",
                                             "test_count", "seed", "normalization"};

void read_pipeline_fields(const Json& j, PipelineConfig& v) {
    v.alpha = j.value("alpha", v.alpha);
    if (j.contains("correlation_mode"))
        v.correlation_mode = preprocess::parse_correlation_mode(j.at("correlation_mode").get<std::string>());
    v.ell = j.value("ell", v.ell);
    v.standardize_before_pca = j.value("standardize_before_pca", v.standardize_before_pca);
    if (j.contains("tree")) v.tree = j.at("tree").get<tree::Params>();
    v.test_count = j.value("test_count", v.test_count);
    v.seed = j.value("seed", v.seed);
    if (j.contains("normalization"))
        v.normalization = parse_normalization_order(j.at("normalization").get<std::string>());
}

}  // namespace

void from_json(const Json& j, PipelineConfig& v) {
    reject_unknown_keys(j, kPipelineKeys, "pipeline config");
    v = PipelineConfig{};
    read_pipeline_fields(j, v);
}

void to_json(Json& j, const Standardization& v) { j = Json{{"means", v.means}, {"sds", v.sds}}; }

void from_json(const Json& j, Standardization& v) {
    v.means = j.at("means").get<std::vector<double>>();
    v.sds = j.at("sds").get<std::vector<double>>();
}

void to_json(Json& j, const TrialResult& v) {
    std::vector<std::string> pcs;
    for (std::size_t k = 0; k < v.tree.feature_count; ++k) pcs.push_back("PC" + std::to_string(k + 1));
    j = Json{{"config", v.config},
             {"seed", v.seed},
             {"feature_names", v.feature_names},
             {"class_names", v.class_names},
             {"elimination", v.elimination},
             {"normalization", v.normalization},
             {"standardization", optional_to_json(v.standardization)},
             {"pca", v.pca},
             {"tree", tree::tree_to_json(v.tree, pcs, v.class_names)},
             {"test_ids", v.test_ids},
             {"correct", v.correct},
             {"test_count", v.test_count},
             {"test_accuracy", v.test_accuracy}};
}

void from_json(const Json& j, TrialResult& v) {
    v.config = j.at("config").get<PipelineConfig>();
    v.seed = j.at("seed").get<std::uint64_t>();
    v.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    v.class_names = j.at("class_names").get<std::vector<std::string>>();
    v.elimination = j.at("elimination").get<preprocess::EliminationTrace>();
    v.normalization = j.at("normalization").get<preprocess::NormalizationStats>();
    v.standardization = optional_from_json<Standardization>(j, "standardization");
    v.pca = j.at("pca").get<pca::Model>();
    v.tree = j.at("tree").get<tree::Tree>();
    v.test_ids = j.at("test_ids").get<std::vector<std::string>>();
    v.correct = j.at("correct").get<std::size_t>();
    v.test_count = j.at("test_count").get<std::size_t>();
    v.test_accuracy = j.at("test_accuracy").get<double>();
}

void to_json(Json& j, const NonObsoleteScore& v) {
    j = Json{{"correct", v.correct}, {"total", v.total}, {"accuracy", v.accuracy()}};
}

void from_json(const Json& j, NonObsoleteScore& v) {
    v.correct = j.at("correct").get<std::size_t>();
    v.total = j.at("total").get<std::size_t>();
}

void to_json(Json& j, const LeaderboardEntry& v) {
    j = Json{{"alpha", v.alpha},
             {"ell", v.ell},
             {"h", v.h},
             {"trials", v.trials},
             {"mean_accuracy", v.mean_accuracy},
             {"best_accuracy", v.best_accuracy}};
}

void from_json(const Json& j, LeaderboardEntry& v) {
    v.alpha = j.at("alpha").get<double>();
    v.ell = j.at("ell").get<std::size_t>();
    v.h = j.at("h").get<std::size_t>();
    v.trials = j.at("trials").get<std::size_t>();
    v.mean_accuracy = j.at("mean_accuracy").get<double>();
    v.best_accuracy = j.at("best_accuracy").get<double>();
}

void to_json(Json& j, const SearchTrial& v) {
    j = Json{{"config_index", v.config_index}, {"alpha", v.alpha}, {"ell", v.ell},
             {"seed", v.seed},                 {"correct", v.correct}, {"total", v.total}};
}

void from_json(const Json& j, SearchTrial& v) {
    v.config_index = j.at("config_index").get<std::size_t>();
    v.alpha = j.at("alpha").get<double>();
    v.ell = j.at("ell").get<std::size_t>();
    v.seed = j.at("seed").get<std::uint64_t>();
    v.correct = j.at("correct").get<std::size_t>();
    v.total = j.at("total").get<std::size_t>();
}

void to_json(Json& j, const SearchResult& v) {
    j = Json{{"best", v.best},
             {"leaderboard", v.leaderboard},
             {"trials", v.trials},
             {"infeasible_configs", v.infeasible_configs}};
}

void from_json(const Json& j, SearchResult& v) {
    v.best = j.at("best").get<PipelineConfig>();
    v.leaderboard = j.at("leaderboard").get<std::vector<LeaderboardEntry>>();
    v.trials = j.at("trials").get<std::vector<SearchTrial>>();
    v.infeasible_configs = j.at("infeasible_configs").get<std::size_t>();
}

void to_json(Json& j, const InputDigest& v) { j = Json{{"role", v.role}, {"path", v.path}, {"sha256", v.sha256}}; }

void from_json(const Json& j, InputDigest& v) {
    v.role = j.at("role").get<std::string>();
    v.path = j.at("path").get<std::string>();
    v.sha256 = j.at("sha256").get<std::string>();
}

void to_json(Json& j, const RunManifest& v) {
    j = Json{{"command", v.command},
             {"tool_version", v.tool_version},
             {"master_seed", v.master_seed},
             {"inputs", v.inputs},
             {"started_at", optional_to_json(v.started_at)},
             {"finished_at", optional_to_json(v.finished_at)}};
}

void from_json(const Json& j, RunManifest& v) {
    v.command = j.at("command").get<std::string>();
    v.tool_version = j.at("tool_version").get<std::string>();
    v.master_seed = j.at("master_seed").get<std::uint64_t>();
    v.inputs = j.at("inputs").get<std::vector<InputDigest>>();
    v.started_at = optional_from_json<std::string>(j, "started_at");
    v.finished_at = optional_from_json<std::string>(j, "finished_at");
}

void to_json(Json& j, const RunSettings& v) {
    j = Json(v.pipeline);
    j["trials"] = v.trials;
    j["budget"] = v.search.budget;
    j["alpha_grid"] = v.search.alpha_grid;
    j["ell_grid"] = v.search.ell_grid;
    j["trials_per_config"] = v.search.trials_per_config;
    j["drop_constant"] = v.drop_constant;
}

RunSettings settings_from_json(const Json& j, const RunSettings& defaults) {
    std::set<std::string> allowed = kPipelineKeys;
    allowed.insert({"trials", "budget", "alpha_grid", "ell_grid", "trials_per_config", "drop_constant"});
    reject_unknown_keys(j, allowed, "config");
    RunSettings v = defaults;
    try {
        read_pipeline_fields(j, v.pipeline);
        v.trials = j.value("trials", v.trials);
        v.search.budget = j.value("budget", v.search.budget);
        v.search.alpha_grid = j.value("alpha_grid", v.search.alpha_grid);
        v.search.ell_grid = j.value("ell_grid", v.search.ell_grid);
        v.search.trials_per_config = j.value("trials_per_config", v.search.trials_per_config);
        v.drop_constant = j.value("drop_constant", v.drop_constant);
    } catch (const nlohmann::json::exception& e) {
        throw_json_error("config", e.what());
    }
    return v;
}

void from_json(const Json& j, RunSettings& v) { v = settings_from_json(j); }

void to_json(Json& j, const TrialOutcome& v) {
    j = Json{{"seed", v.seed},
             {"correct", v.correct},
             {"total", v.total},
             {"accuracy", static_cast<double>(v.correct) / static_cast<double>(v.total)},
             {"nonobsolete", optional_to_json(v.nonobsolete)}};
}

void from_json(const Json& j, TrialOutcome& v) {
    v.seed = j.at("seed").get<std::uint64_t>();
    v.correct = j.at("correct").get<std::size_t>();
    v.total = j.at("total").get<std::size_t>();
    v.nonobsolete = optional_from_json<NonObsoleteScore>(j, "nonobsolete");
}

void to_json(Json& j, const Agreement& v) {
    j = Json{{"ranking", v.ranking}, {"against", v.against}, {"spearman", v.spearman}};
}

void from_json(const Json& j, Agreement& v) {
    v.ranking = j.at("ranking").get<std::string>();
    v.against = j.at("against").get<std::string>();
    v.spearman = j.at("spearman").get<double>();
}

void to_json(Json& j, const Timings& v) {
    j = Json{{"load_seconds", v.load_seconds},
             {"evaluation_seconds", v.evaluation_seconds},
             {"analysis_seconds", v.analysis_seconds}};
}

void from_json(const Json& j, Timings& v) {
    v.load_seconds = j.at("load_seconds").get<double>();
    v.evaluation_seconds = j.at("evaluation_seconds").get<double>();
    v.analysis_seconds = j.at("analysis_seconds").get<double>();
}

void to_json(Json& j, const EvaluationReport& v) {
    Json evaluation = Json(v.statistics);
    // Per-trial rows carry the hold-out score next to the test accuracy.
    evaluation["per_trial"] = v.trials;

    Json best_u = nullptr;
    if (v.best_nonobsolete_index && v.best_nonobsolete_trial)
        best_u = Json{{"index", *v.best_nonobsolete_index}, {"trial", *v.best_nonobsolete_trial}};

    j = Json{{"manifest", v.manifest},
             {"config", v.settings},
             {"search", optional_to_json(v.search)},
             {"dropped_constant_features", v.dropped_constant_features},
             {"dataset", {{"obsolete_count", v.obsolete_count}, {"non_obsolete_count", v.non_obsolete_count}}},
             {"evaluation", evaluation},
             {"best_trial", {{"index", v.best_trial_index}, {"trial", v.best_trial}}},
             {"best_nonobsolete_trial", best_u},
             {"rankings", v.rankings},
             {"expert", optional_to_json(v.expert)},
             {"rank_agreement", v.agreements},
             {"timings", optional_to_json(v.timings)}};
}

void from_json(const Json& j, EvaluationReport& v) {
    v.manifest = j.at("manifest").get<RunManifest>();
    v.settings = settings_from_json(j.at("config"));
    v.search = optional_from_json<SearchResult>(j, "search");
    v.dropped_constant_features = j.at("dropped_constant_features").get<std::vector<std::string>>();
    v.obsolete_count = j.at("dataset").at("obsolete_count").get<std::size_t>();
    v.non_obsolete_count = j.at("dataset").at("non_obsolete_count").get<std::size_t>();

    const Json& evaluation = j.at("evaluation");
    Json stats_json = evaluation;
    stats_json["per_trial"] = Json::array();
    v.statistics = stats_json.get<AccuracyStats>();
    v.trials = evaluation.at("per_trial").get<std::vector<TrialOutcome>>();
    v.statistics.per_trial.clear();
    for (const auto& t : v.trials) v.statistics.per_trial.push_back({t.seed, t.correct, t.total});

    v.best_trial_index = j.at("best_trial").at("index").get<std::size_t>();
    v.best_trial = j.at("best_trial").at("trial").get<TrialResult>();
    v.best_nonobsolete_index.reset();
    v.best_nonobsolete_trial.reset();
    if (!j.at("best_nonobsolete_trial").is_null()) {
        v.best_nonobsolete_index = j.at("best_nonobsolete_trial").at("index").get<std::size_t>();
        v.best_nonobsolete_trial = j.at("best_nonobsolete_trial").at("trial").get<TrialResult>();
    }
    v.rankings = j.at("rankings").get<std::vector<analysis::FeatureRanking>>();
    v.expert = optional_from_json<analysis::ExpertRanking>(j, "expert");
    v.agreements = j.at("rank_agreement").get<std::vector<Agreement>>();
    v.timings = optional_from_json<Timings>(j, "timings");
}

void to_json(Json& j, const SearchReport& v) {
    j = Json{{"manifest", v.manifest},
             {"config", v.settings},
             {"dropped_constant_features", v.dropped_constant_features},
             {"search", v.result}};
}

void from_json(const Json& j, SearchReport& v) {
    v.manifest = j.at("manifest").get<RunManifest>();
    v.settings = settings_from_json(j.at("config"));
    v.dropped_constant_features = j.at("dropped_constant_features").get<std::vector<std::string>>();
    v.result = j.at("search").get<SearchResult>();
}

}  // namespace obsfeat

namespace obsfeat::preprocess {

void to_json(nlohmann::json& j, const NormalizationStats& v) {
    j = nlohmann::json{{"columns", v.columns}, {"means", v.means}, {"sds", v.sds}};
}

void from_json(const nlohmann::json& j, NormalizationStats& v) {
    v.columns = j.at("columns").get<std::vector<std::size_t>>();
    v.means = j.at("means").get<std::vector<double>>();
    v.sds = j.at("sds").get<std::vector<double>>();
}

void to_json(nlohmann::json& j, const Removal& v) {
    j = nlohmann::json{{"feature", v.feature},
                       {"original_index", v.original_index},
                       {"peak_correlation", v.peak_correlation},
                       {"partner", v.partner}};
}

void from_json(const nlohmann::json& j, Removal& v) {
    v.feature = j.at("feature").get<std::string>();
    v.original_index = j.at("original_index").get<std::size_t>();
    v.peak_correlation = j.at("peak_correlation").get<double>();
    v.partner = j.at("partner").get<std::string>();
}

void to_json(nlohmann::json& j, const EliminationTrace& v) {
    j = nlohmann::json{{"alpha", v.alpha},
                       {"mode", to_string(v.mode)},
                       {"removed", v.removed},
                       {"surviving_indices", v.surviving_indices}};
}

void from_json(const nlohmann::json& j, EliminationTrace& v) {
    v.alpha = j.at("alpha").get<double>();
    v.mode = parse_correlation_mode(j.at("mode").get<std::string>());
    v.removed = j.at("removed").get<std::vector<Removal>>();
    v.surviving_indices = j.at("surviving_indices").get<std::vector<std::size_t>>();
}

void to_json(nlohmann::json& j, const CorrelationMatrix& v) {
    j = nlohmann::json{{"feature_names", v.feature_names}, {"values", matrix_to_json(v.values)}};
}

}  // namespace obsfeat::preprocess

namespace obsfeat::pca {

void to_json(nlohmann::json& j, const Model& v) {
    j = nlohmann::json{{"feature_names", v.feature_names},
                       {"column_means", v.column_means},
                       {"eigenvalues", v.eigenvalues},
                       {"loadings", matrix_to_json(v.loadings)}};
}

void from_json(const nlohmann::json& j, Model& v) {
    v.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    v.column_means = j.at("column_means").get<std::vector<double>>();
    v.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    v.loadings = matrix_from_json(j.at("loadings"), v.eigenvalues.size());
}

}  // namespace obsfeat::pca

namespace obsfeat::tree {

void to_json(nlohmann::json& j, const Params& v) {
    j = nlohmann::json{{"max_depth", v.max_depth ? nlohmann::json(*v.max_depth) : nlohmann::json(nullptr)},
                       {"min_samples_leaf", v.min_samples_leaf},
                       {"min_impurity_decrease", v.min_impurity_decrease}};
}

void from_json(const nlohmann::json& j, Params& v) {
    v = Params{};
    if (j.contains("max_depth") && !j.at("max_depth").is_null()) v.max_depth = j.at("max_depth").get<std::size_t>();
    v.min_samples_leaf = j.value("min_samples_leaf", v.min_samples_leaf);
    v.min_impurity_decrease = j.value("min_impurity_decrease", v.min_impurity_decrease);
}

namespace {

nlohmann::json node_to_json(const Tree& t, std::size_t id, const std::vector<std::string>& features,
                            const std::vector<std::string>& classes) {
    const Node& n = t.nodes[id];
    nlohmann::json j{{"samples", n.samples},
                     {"impurity", n.impurity},
                     {"histogram", n.histogram},
                     {"predicted_class", n.predicted_class},
                     {"leaf", n.is_leaf}};
    if (static_cast<std::size_t>(n.predicted_class) < classes.size())
        j["predicted_label"] = classes[static_cast<std::size_t>(n.predicted_class)];
    if (!n.is_leaf) {
        j["feature"] = n.feature;
        if (n.feature < features.size()) j["feature_name"] = features[n.feature];
        j["threshold"] = n.threshold;
        j["weighted_decrease"] = n.weighted_decrease;
        j["left"] = node_to_json(t, n.left, features, classes);
        j["right"] = node_to_json(t, n.right, features, classes);
    }
    return j;
}

std::size_t node_from_json(const nlohmann::json& j, Tree& t) {
    const std::size_t id = t.nodes.size();
    t.nodes.emplace_back();
    Node n;
    n.samples = j.at("samples").get<std::size_t>();
    n.impurity = j.at("impurity").get<double>();
    n.histogram = j.at("histogram").get<std::vector<std::size_t>>();
    n.predicted_class = j.at("predicted_class").get<int>();
    n.is_leaf = j.at("leaf").get<bool>();
    if (!n.is_leaf) {
        n.feature = j.at("feature").get<std::size_t>();
        n.threshold = j.at("threshold").get<double>();
        n.weighted_decrease = j.at("weighted_decrease").get<double>();
        n.left = node_from_json(j.at("left"), t);
        n.right = node_from_json(j.at("right"), t);
    }
    t.nodes[id] = std::move(n);
    return id;
}

}  // namespace

nlohmann::json tree_to_json(const Tree& tree, const std::vector<std::string>& feature_names,
                            const std::vector<std::string>& class_names) {
    nlohmann::json j{{"feature_count", tree.feature_count}, {"class_count", tree.class_count}};
    j["root"] = tree.nodes.empty() ? nlohmann::json(nullptr) : node_to_json(tree, 0, feature_names, class_names);
    return j;
}

void to_json(nlohmann::json& j, const Tree& v) {
    std::vector<std::string> pcs;
    for (std::size_t k = 0; k < v.feature_count; ++k) pcs.push_back("PC" + std::to_string(k + 1));
    j = tree_to_json(v, pcs, {});
}

void from_json(const nlohmann::json& j, Tree& v) {
    v = Tree{};
    v.feature_count = j.at("feature_count").get<std::size_t>();
    v.class_count = j.at("class_count").get<std::size_t>();
    if (!j.at("root").is_null()) node_from_json(j.at("root"), v);
}

}  // namespace obsfeat::tree

namespace obsfeat::analysis {

void to_json(nlohmann::json& j, const RankingEntry& v) {
    j = nlohmann::json{{"feature", v.feature}, {"score", v.score}, {"eliminated", v.eliminated}};
}

void from_json(const nlohmann::json& j, RankingEntry& v) {
    v.feature = j.at("feature").get<std::string>();
    v.score = j.at("score").get<double>();
    v.eliminated = j.value("eliminated", false);
}

void to_json(nlohmann::json& j, const FeatureRanking& v) {
    j = nlohmann::json{{"provenance", to_string(v.provenance)}, {"measure", to_string(v.measure)}, {"entries", v.entries}};
}

void from_json(const nlohmann::json& j, FeatureRanking& v) {
    v.provenance = parse_provenance(j.at("provenance").get<std::string>());
    v.measure = parse_measure(j.at("measure").get<std::string>());
    v.entries = j.at("entries").get<std::vector<RankingEntry>>();
}

void to_json(nlohmann::json& j, const ExpertEntry& v) { j = nlohmann::json{{"feature", v.feature}, {"rank", v.rank}}; }

void from_json(const nlohmann::json& j, ExpertEntry& v) {
    v.feature = j.at("feature").get<std::string>();
    v.rank = j.at("rank").get<double>();
}

void to_json(nlohmann::json& j, const ExpertRanking& v) { j = nlohmann::json(v.entries); }

void from_json(const nlohmann::json& j, ExpertRanking& v) { v.entries = j.get<std::vector<ExpertEntry>>(); }

}  // namespace obsfeat::analysis
