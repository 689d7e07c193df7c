#pragma once

#include <string>

#include <json.hpp>

#include "obsfeat/analysis.hpp"
#include "obsfeat/dataset.hpp"
#include "obsfeat/evaluate.hpp"
#include "obsfeat/pca.hpp"
#include "obsfeat/preprocess.hpp"
#include "obsfeat/report.hpp"
#include "obsfeat/statistics.hpp"
#include "obsfeat/tree.hpp"

// JSON mappings for every persisted type. Objects are emitted with sorted keys
// (nlohmann's default std::map storage), so dumps are deterministic.

namespace obsfeat {

using Json = nlohmann::json;

[[noreturn]] void throw_json_error(const std::string& context, const std::string& what);

template <class T>
Json to_json(const T& value) {
    return Json(value);
}

// Converts nlohmann type/key errors into Error(input) prefixed by context.
template <class T>
T from_json_as(const Json& j, const std::string& context) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw_json_error(context, e.what());
    }
}

// Two-space indented dump with trailing newline.
std::string dump_json(const Json& j);
Json parse_json_text(const std::string& text, const std::string& context);

Schema schema_from_json(const Json& j);

void to_json(Json& j, const FeatureDescriptor& v);
void from_json(const Json& j, FeatureDescriptor& v);
void to_json(Json& j, const Schema& v);
void from_json(const Json& j, Schema& v);
void to_json(Json& j, const RedundantFeature& v);
void from_json(const Json& j, RedundantFeature& v);
void to_json(Json& j, const SynthesisSpec& v);
void from_json(const Json& j, SynthesisSpec& v);
void to_json(Json& j, const TrialAccuracy& v);
void from_json(const Json& j, TrialAccuracy& v);
void to_json(Json& j, const AccuracyStats& v);
void from_json(const Json& j, AccuracyStats& v);
void to_json(Json& j, const PipelineConfig& v);
void from_json(const Json& j, PipelineConfig& v);
void to_json(Json& j, const Standardization& v);
void from_json(const Json& j, Standardization& v);
void to_json(Json& j, const TrialResult& v);
void from_json(const Json& j, TrialResult& v);
void to_json(Json& j, const NonObsoleteScore& v);
void from_json(const Json& j, NonObsoleteScore& v);
void to_json(Json& j, const LeaderboardEntry& v);
void from_json(const Json& j, LeaderboardEntry& v);
void to_json(Json& j, const SearchTrial& v);
void from_json(const Json& j, SearchTrial& v);
void to_json(Json& j, const SearchResult& v);
void from_json(const Json& j, SearchResult& v);
void to_json(Json& j, const InputDigest& v);
void from_json(const Json& j, InputDigest& v);
void to_json(Json& j, const RunManifest& v);
void from_json(const Json& j, RunManifest& v);
void to_json(Json& j, const RunSettings& v);
void from_json(const Json& j, RunSettings& v);
void to_json(Json& j, const TrialOutcome& v);
void from_json(const Json& j, TrialOutcome& v);
void to_json(Json& j, const Agreement& v);
void from_json(const Json& j, Agreement& v);
void to_json(Json& j, const Timings& v);
void from_json(const Json& j, Timings& v);
void to_json(Json& j, const EvaluationReport& v);
void from_json(const Json& j, EvaluationReport& v);
void to_json(Json& j, const SearchReport& v);
void from_json(const Json& j, SearchReport& v);

// Flat settings object with defaults for absent keys; unknown keys are an error.
RunSettings settings_from_json(const Json& j, const RunSettings& defaults = {});

}  // namespace obsfeat

namespace obsfeat::preprocess {
void to_json(nlohmann::json& j, const NormalizationStats& v);
void from_json(const nlohmann::json& j, NormalizationStats& v);
void to_json(nlohmann::json& j, const Removal& v);
void from_json(const nlohmann::json& j, Removal& v);
void to_json(nlohmann::json& j, const EliminationTrace& v);
void from_json(const nlohmann::json& j, EliminationTrace& v);
void to_json(nlohmann::json& j, const CorrelationMatrix& v);
}  // namespace obsfeat::preprocess

namespace obsfeat::pca {
void to_json(nlohmann::json& j, const Model& v);
void from_json(const nlohmann::json& j, Model& v);
}  // namespace obsfeat::pca

namespace obsfeat::tree {
void to_json(nlohmann::json& j, const Params& v);
void from_json(const nlohmann::json& j, Params& v);
// Nested node objects; split features are named PC1, PC2, ...
void to_json(nlohmann::json& j, const Tree& v);
void from_json(const nlohmann::json& j, Tree& v);
nlohmann::json tree_to_json(const Tree& tree, const std::vector<std::string>& feature_names,
                            const std::vector<std::string>& class_names);
}  // namespace obsfeat::tree

namespace obsfeat::analysis {
void to_json(nlohmann::json& j, const RankingEntry& v);
void from_json(const nlohmann::json& j, RankingEntry& v);
void to_json(nlohmann::json& j, const FeatureRanking& v);
void from_json(const nlohmann::json& j, FeatureRanking& v);
void to_json(nlohmann::json& j, const ExpertEntry& v);
void from_json(const nlohmann::json& j, ExpertEntry& v);
void to_json(nlohmann::json& j, const ExpertRanking& v);
void from_json(const nlohmann::json& j, ExpertRanking& v);
}  // namespace obsfeat::analysis
