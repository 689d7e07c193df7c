#include "obsfeat/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "obsfeat/csv.hpp"
#include "obsfeat/error.hpp"
#include "obsfeat/serialize.hpp"

namespace obsfeat {

std::string_view to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::binary: return "binary";
        case FeatureKind::continuous: return "continuous";
        case FeatureKind::ordinal: return "ordinal";
    }
    return "continuous";
}

FeatureKind parse_feature_kind(std::string_view text) {
    if (text == "binary") return FeatureKind::binary;
    if (text == "continuous") return FeatureKind::continuous;
    if (text == "ordinal") return FeatureKind::ordinal;
    fail_input("unknown feature kind '" + std::string(text) + "' (expected binary, continuous or ordinal)");
}

std::vector<std::string> Dataset::feature_names() const {
    std::vector<std::string> names;
    names.reserve(features.size());
    for (const auto& f : features) names.push_back(f.name);
    return names;
}

void Dataset::validate() const {
    const std::size_t n = labels.size();
    if (rows.rows() != n || obsolete.size() != n || ids.size() != n)
        fail_input("dataset: row count mismatch between matrix, labels, flags and ids");
    if (rows.cols() != features.size() && n > 0)
        fail_input("dataset: matrix has " + std::to_string(rows.cols()) + " columns but " +
                   std::to_string(features.size()) + " features are declared");
    std::set<std::string> seen;
    for (const auto& f : features)
        if (!seen.insert(f.name).second) fail_input("dataset: duplicate feature name '" + f.name + "'");
    for (std::size_t i = 0; i < n; ++i)
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= class_names.size())
            fail_input("dataset: row " + std::to_string(i + 1) + " has label index out of range");
    for (std::size_t j = 0; j < features.size(); ++j) {
        if (features[j].kind != FeatureKind::binary) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rows(i, j);
            if (v != 0.0 && v != 1.0)
                fail_input("binary feature '" + features[j].name + "' holds " + csv::format_double(v) +
                           " at row " + std::to_string(i + 1) + " (id " + ids[i] + ")");
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
    Dataset out;
    out.features = features;
    out.class_names = class_names;
    out.rows = rows.select_rows(row_indices);
    out.rows = out.rows.rows() == 0 ? Matrix(0, features.size()) : out.rows;
    out.labels.reserve(row_indices.size());
    out.obsolete.reserve(row_indices.size());
    out.ids.reserve(row_indices.size());
    for (std::size_t i : row_indices) {
        out.labels.push_back(labels[i]);
        out.obsolete.push_back(obsolete[i]);
        out.ids.push_back(ids[i]);
    }
    return out;
}

Dataset Dataset::select_features(std::span<const std::size_t> feature_indices) const {
    Dataset out;
    out.class_names = class_names;
    out.ids = ids;
    out.labels = labels;
    out.obsolete = obsolete;
    for (std::size_t j : feature_indices) out.features.push_back(features.at(j));
    out.rows = rows.select_columns(feature_indices);
    return out;
}

Partition partition(const Dataset& ds) {
    Partition p{{&ds, {}}, {&ds, {}}};
    for (std::size_t i = 0; i < ds.size(); ++i)
        (ds.obsolete[i] ? p.obsolete : p.non_obsolete).indices.push_back(i);
    return p;
}

Split shuffle_split(const Dataset& ds, std::size_t test_count, std::uint64_t seed) {
    const std::size_t n = ds.size();
    if (test_count == 0 || test_count >= n)
        fail_input("test_count " + std::to_string(test_count) + " out of range for " + std::to_string(n) +
                   " rows (need 0 < test_count < n)");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    Split split{{&ds, {order.begin() + static_cast<std::ptrdiff_t>(test_count), order.end()}},
                {&ds, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_count)}}};
    std::sort(split.train.indices.begin(), split.train.indices.end());
    std::sort(split.test.indices.begin(), split.test.indices.end());
    return split;
}

Schema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open schema '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail_input("schema '" + path.string() + "': " + e.what());
    }
    return schema_from_json(j);
}

void write_schema(const Schema& schema, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_io("cannot write schema '" + path.string() + "'");
    out << to_json(schema).dump(2) << '\n';
    if (!out) fail_io("write failed for '" + path.string() + "'");
}

Schema schema_of(const Dataset& ds) {
    Schema s;
    s.class_names = ds.class_names;
    s.features = ds.features;
    return s;
}

Dataset parse_dataset(std::string_view csv_text, const Schema& schema) {
    if (schema.features.empty()) fail_input("schema declares no feature columns");
    if (schema.class_names.empty()) fail_input("schema declares no class names");

    const csv::Table table = csv::parse(csv_text);
    if (table.header.empty()) fail_input("empty dataset: no header row");
    if (table.rows.empty()) fail_input("empty dataset: header present but no data rows");

    std::map<std::string, std::size_t> column_of;
    for (std::size_t c = 0; c < table.header.size(); ++c)
        if (!column_of.emplace(table.header[c], c).second)
            fail_input("duplicate CSV column '" + table.header[c] + "'");
    auto require = [&](const std::string& name, const char* role) {
        auto it = column_of.find(name);
        if (it == column_of.end()) fail_input(std::string("CSV is missing the ") + role + " column '" + name + "'");
        return it->second;
    };
    const std::size_t id_col = require(schema.id_column, "id");
    const std::size_t label_col = require(schema.label_column, "label");
    const std::size_t flag_col = require(schema.obsolete_column, "obsolete-flag");
    std::vector<std::size_t> feature_cols;
    for (const auto& f : schema.features) feature_cols.push_back(require(f.name, "feature"));

    std::map<std::string, int> class_index;
    for (std::size_t c = 0; c < schema.class_names.size(); ++c)
        if (!class_index.emplace(schema.class_names[c], static_cast<int>(c)).second)
            fail_input("schema lists class '" + schema.class_names[c] + "' twice");

    Dataset ds;
    ds.features = schema.features;
    ds.class_names = schema.class_names;
    ds.rows = Matrix(table.rows.size(), schema.features.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& record = table.rows[i];
        const std::string where = "line " + std::to_string(table.line_numbers[i]);
        ds.ids.push_back(record[id_col]);

        auto cls = class_index.find(record[label_col]);
        if (cls == class_index.end())
            fail_input(where + ": unknown class name '" + record[label_col] + "'");
        ds.labels.push_back(cls->second);

        const std::string& flag = record[flag_col];
        if (flag != "0" && flag != "1")
            fail_input(where + ": obsolete flag must be 0 or 1, found '" + flag + "'");
        ds.obsolete.push_back(flag == "1");

        for (std::size_t j = 0; j < feature_cols.size(); ++j) {
            const auto& f = schema.features[j];
            const double v = csv::parse_double(record[feature_cols[j]], where + ", column '" + f.name + "'");
            if (f.kind == FeatureKind::binary && v != 0.0 && v != 1.0)
                fail_input("binary column '" + f.name + "' holds " + record[feature_cols[j]] + " at " + where +
                           " (row " + std::to_string(i + 1) + ")");
            ds.rows(i, j) = v;
        }
    }
    ds.validate();
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open dataset '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_dataset(text, schema);
}

std::string format_dataset(const Dataset& ds) {
    std::vector<std::string> fields{"id"};
    for (const auto& f : ds.features) fields.push_back(f.name);
    fields.push_back("obsolete");
    fields.push_back("label");
    std::string out = csv::join_row(fields);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        fields.clear();
        fields.push_back(ds.ids[i]);
        for (double v : ds.rows.row(i)) fields.push_back(csv::format_double(v));
        fields.push_back(ds.obsolete[i] ? "1" : "0");
        fields.push_back(ds.class_names[static_cast<std::size_t>(ds.labels[i])]);
        out += csv::join_row(fields);
    }
    return out;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_io("cannot write dataset '" + path.string() + "'");
    out << format_dataset(ds);
    if (!out) fail_io("write failed for '" + path.string() + "'");
}

std::vector<std::size_t> constant_columns(const Dataset& ds) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        bool constant = true;
        for (std::size_t i = 1; i < ds.size() && constant; ++i) constant = ds.rows(i, j) == ds.rows(0, j);
        if (constant) out.push_back(j);
    }
    return out;
}

}  // namespace obsfeat
