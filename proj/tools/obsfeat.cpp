// obsfeat: command-line driver for the obsolescence feature-identification
// pipeline. Subcommands: generate, search, run, report.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>

#include "obsfeat/analysis.hpp"
#include "obsfeat/csv.hpp"
#include "obsfeat/dataset.hpp"
#include "obsfeat/error.hpp"
#include "obsfeat/evaluate.hpp"
#include "obsfeat/report.hpp"
#include "obsfeat/serialize.hpp"

namespace fs = std::filesystem;
using namespace obsfeat;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        fail_io("SHA-256 digest failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Manifest {
    RunManifest value;

    Manifest(std::string command, std::uint64_t seed) {
        value.command = std::move(command);
        value.tool_version = OBSFEAT_VERSION;
        value.master_seed = seed;
    }

    // Inputs are recorded by file name and content digest, so the manifest
    // does not depend on where the files live.
    void add(const std::string& role, const fs::path& path) {
        value.inputs.push_back({role, path.filename().generic_string(), sha256_hex(read_file(path))});
    }
};

// Flags shared by search and run. Unset optionals leave the config value alone.
struct PipelineFlags {
    std::string data;
    std::string schema;
    std::string config;
    std::string out;
    std::optional<double> alpha;
    std::optional<std::size_t> ell;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> budget;
    std::optional<std::size_t> test_count;
    std::optional<std::string> mode;
    bool paper_literal = false;
    bool drop_constant = false;
    bool standardize = false;
    bool timings = false;
    std::size_t jobs = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", data, "Dataset CSV")->required()->check(CLI::ExistingFile);
        cmd->add_option("--schema", schema, "Schema JSON sidecar (default: <data stem>.schema.json)");
        cmd->add_option("--config", config, "Config JSON (flat keys; see README)")->check(CLI::ExistingFile);
        cmd->add_option("--out", out, "Output directory")->required();
        cmd->add_option("--alpha", alpha, "Correlation threshold in [-1, 1]");
        cmd->add_option("--ell", ell, "Number of principal components");
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--trials", trials, "Repeated-evaluation trial count");
        cmd->add_option("--budget", budget, "Total hyperparameter-search trials");
        cmd->add_option("--test-count", test_count, "Rows held out per trial");
        cmd->add_option("--mode", mode, "Correlation comparison: absolute or signed")
            ->check(CLI::IsMember({"absolute", "signed"}));
        cmd->add_flag("--paper-literal-normalization", paper_literal,
                      "Fit binary normalization on the whole obsolete set before splitting");
        cmd->add_flag("--drop-constant", drop_constant, "Drop constant feature columns before processing");
        cmd->add_flag("--standardize", standardize, "Standardize features before PCA");
        cmd->add_flag("--timings", timings, "Record timestamps and wall-clock timings (breaks byte-identical reruns)");
        cmd->add_option("--jobs", jobs, "Worker threads (0 = available parallelism)");
    }

    fs::path schema_path() const {
        if (!schema.empty()) return schema;
        fs::path p(data);
        return p.parent_path() / (p.stem().string() + ".schema.json");
    }

    RunSettings resolve(Manifest& manifest, const std::optional<PipelineConfig>& searched = std::nullopt) const {
        RunSettings s;
        if (!config.empty()) {
            s = settings_from_json(parse_json_text(read_file(config), "config '" + config + "'"), s);
            manifest.add("config", config);
        }
        if (searched) {
            s.pipeline.alpha = searched->alpha;
            s.pipeline.ell = searched->ell;
        }
        if (alpha) s.pipeline.alpha = *alpha;
        if (ell) s.pipeline.ell = *ell;
        if (seed) s.pipeline.seed = *seed;
        if (trials) s.trials = *trials;
        if (budget) s.search.budget = *budget;
        if (test_count) s.pipeline.test_count = *test_count;
        if (mode) s.pipeline.correlation_mode = preprocess::parse_correlation_mode(*mode);
        if (paper_literal) s.pipeline.normalization = NormalizationOrder::paper_literal;
        if (drop_constant) s.drop_constant = true;
        if (standardize) s.pipeline.standardize_before_pca = true;
        s.pipeline.validate();
        manifest.value.master_seed = s.pipeline.seed;
        return s;
    }

    Dataset load(Manifest& manifest) const {
        const fs::path schema_file = schema_path();
        Dataset ds = load_dataset(data, load_schema(schema_file));
        manifest.add("dataset", data);
        manifest.add("schema", schema_file);
        return ds;
    }
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail_io("cannot create output directory '" + dir.string() + "': " + ec.message());
}

int cmd_generate(const std::string& spec_path, const std::string& out_path, std::string schema_out) {
    const SynthesisSpec spec =
        from_json_as<SynthesisSpec>(parse_json_text(read_file(spec_path), "spec '" + spec_path + "'"),
                                    "spec '" + spec_path + "'");
    const Dataset ds = synthesize(spec);
    const fs::path out(out_path);
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    if (schema_out.empty()) schema_out = (out.parent_path() / (out.stem().string() + ".schema.json")).string();
    write_dataset(ds, out);
    write_schema(schema_of(ds), schema_out);
    std::cerr << "generate: wrote " << ds.size() << " rows x " << ds.feature_count() << " features to " << out_path
              << "\n";
    return 0;
}

std::string leaderboard_csv(const SearchResult& result) {
    std::string out = csv::join_row({"rank", "alpha", "ell", "h", "trials", "mean_accuracy", "best_accuracy"});
    for (std::size_t i = 0; i < result.leaderboard.size(); ++i) {
        const auto& e = result.leaderboard[i];
        out += csv::join_row({std::to_string(i + 1), csv::format_double(e.alpha), std::to_string(e.ell),
                              std::to_string(e.h), std::to_string(e.trials), csv::format_double(e.mean_accuracy),
                              csv::format_double(e.best_accuracy)});
    }
    return out;
}

int cmd_search(const PipelineFlags& flags) {
    Manifest manifest("search", 0);
    if (flags.timings) manifest.value.started_at = utc_now();
    const RunSettings settings = flags.resolve(manifest);
    Dataset ds = flags.load(manifest);

    SearchReport report;
    report.settings = settings;
    if (settings.drop_constant) ds = drop_constant_features(ds, report.dropped_constant_features);
    const Dataset obsolete = partition(ds).obsolete.materialize();

    SearchOptions options = settings.search;
    options.master_seed = settings.pipeline.seed;
    options.jobs = flags.jobs;
    report.result = hyperparameter_search(obsolete, settings.pipeline, options);
    if (flags.timings) manifest.value.finished_at = utc_now();
    report.manifest = manifest.value;

    const fs::path out(flags.out);
    ensure_dir(out);
    analysis::write_text_file(out / "search.json", dump_json(to_json(report)));
    analysis::write_text_file(out / "leaderboard.csv", leaderboard_csv(report.result));

    const auto& top = report.result.leaderboard.front();
    std::cerr << "search: " << report.result.trials.size() << " trials over " << report.result.leaderboard.size()
              << " configurations; best alpha=" << top.alpha << " ell=" << top.ell << " h=" << top.h
              << " mean accuracy=" << top.mean_accuracy << "\n";
    return 0;
}

int cmd_run(const PipelineFlags& flags, const std::string& best_from, const std::string& expert_path) {
    const auto t0 = std::chrono::steady_clock::now();
    Manifest manifest("run", 0);
    if (flags.timings) manifest.value.started_at = utc_now();

    std::optional<SearchResult> search;
    std::optional<PipelineConfig> searched;
    if (!best_from.empty()) {
        const auto sr = from_json_as<SearchReport>(parse_json_text(read_file(best_from), best_from), best_from);
        manifest.add("search", best_from);
        search = sr.result;
        searched = sr.result.best;
    }
    const RunSettings settings = flags.resolve(manifest, searched);
    const Dataset ds = flags.load(manifest);
    std::optional<analysis::ExpertRanking> expert;
    if (!expert_path.empty()) {
        expert = analysis::load_expert_ranking(expert_path);
        manifest.add("expert", expert_path);
    }
    const double load_seconds = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    EvaluationReport report = run_experiment(ds, settings, expert, flags.jobs);
    const double eval_seconds = seconds_since(t1);
    report.search = search;

    const auto t2 = std::chrono::steady_clock::now();
    if (flags.timings) {
        manifest.value.finished_at = utc_now();
        report.timings = Timings{load_seconds, eval_seconds, 0.0};
    }
    report.manifest = manifest.value;
    if (report.timings) report.timings->analysis_seconds = seconds_since(t2);
    analysis::emit_report(report, report.rankings, flags.out);

    const auto& s = report.statistics;
    std::cerr << std::fixed << std::setprecision(2) << "run: " << s.n_trials << " trials; max "
              << 100 * s.max << "%, min " << 100 * s.min << "%, std " << 100 * s.std << "%, mean "
              << 100 * s.arithmetic_mean << "%, geometric mean " << 100 * s.geometric_mean << "%\n";
    if (report.best_trial_index < report.trials.size() && report.trials[report.best_trial_index].nonobsolete)
        std::cerr << "run: best model scores " << 100 * report.trials[report.best_trial_index].nonobsolete->accuracy()
                  << "% on the non-obsolete set\n";
    return 0;
}

int cmd_report(const std::string& report_path, const std::string& out_dir) {
    const auto report =
        from_json_as<EvaluationReport>(parse_json_text(read_file(report_path), report_path), report_path);
    analysis::emit_report(report, report.rankings, out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identify the features driving obsolescence-management decisions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(OBSFEAT_VERSION));

    std::string spec_path, gen_out, gen_schema;
    auto* generate = app.add_subcommand("generate", "Synthesize a dataset CSV and schema from a spec JSON");
    generate->add_option("--spec", spec_path, "Synthesis spec JSON")->required()->check(CLI::ExistingFile);
    generate->add_option("--out", gen_out, "Output CSV path")->required();
    generate->add_option("--schema-out", gen_schema, "Schema path (default: <out stem>.schema.json)");

    PipelineFlags search_flags;
    auto* search = app.add_subcommand("search", "Hyperparameter search over (alpha, ell)");
    search_flags.attach(search);

    PipelineFlags run_flags;
    std::string best_from, expert_path;
    auto* run = app.add_subcommand("run", "Repeated shuffled evaluation, hold-out scoring and feature analysis");
    run_flags.attach(run);
    run->add_option("--best-from", best_from, "Take alpha and ell from a search.json")->check(CLI::ExistingFile);
    run->add_option("--expert", expert_path, "Expert ranking CSV (feature,rank)");

    std::string report_path, report_out;
    auto* report = app.add_subcommand("report", "Re-emit report files from an existing report.json");
    report->add_option("--report", report_path, "report.json to read")->required()->check(CLI::ExistingFile);
    report->add_option("--out", report_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::input);
    }

    try {
        if (generate->parsed()) return cmd_generate(spec_path, gen_out, gen_schema);
        if (search->parsed()) return cmd_search(search_flags);
        if (run->parsed()) return cmd_run(run_flags, best_from, expert_path);
        if (report->parsed()) return cmd_report(report_path, report_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::numerical);
    }
    return 0;
}
