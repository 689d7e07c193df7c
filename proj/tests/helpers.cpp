#include "helpers.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "obsfeat/serialize.hpp"

namespace testing {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = g(rng);
    return m;
}

obsfeat::Dataset toy_dataset(std::uint64_t seed, std::size_t n, std::size_t d, std::size_t classes,
                             std::size_t non_obsolete) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    obsfeat::Dataset ds;
    for (std::size_t j = 0; j < d; ++j) ds.features.push_back({"f" + std::to_string(j), obsfeat::FeatureKind::continuous});
    for (std::size_t c = 0; c < classes; ++c) ds.class_names.push_back("c" + std::to_string(c));
    ds.rows = Matrix(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % classes);
        ds.labels.push_back(label);
        ds.ids.push_back("r" + std::to_string(i));
        ds.obsolete.push_back(i >= non_obsolete);
        for (std::size_t j = 0; j < d; ++j) ds.rows(i, j) = g(rng) + (j == 0 ? 3.0 * label : 0.0);
    }
    return ds;
}

obsfeat::SynthesisSpec case_study_spec(std::uint64_t seed) {
    const auto text = read_text(std::filesystem::path(OBSFEAT_DATA_DIR) / "case_study_spec.json");
    auto spec = obsfeat::from_json_as<obsfeat::SynthesisSpec>(obsfeat::parse_json_text(text, "spec"), "spec");
    spec.seed = seed;
    return spec;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("obsfeat_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

std::size_t majority_count(const std::vector<std::size_t>& rows, const std::vector<int>& y, std::size_t classes) {
    std::vector<std::size_t> counts(classes, 0);
    for (auto r : rows) ++counts[static_cast<std::size_t>(y[r])];
    return rows.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::vector<std::vector<double>> midpoints(const Matrix& x) {
    std::vector<std::vector<double>> out(x.cols());
    for (std::size_t f = 0; f < x.cols(); ++f) {
        auto v = x.column(f);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        for (std::size_t i = 1; i < v.size(); ++i) out[f].push_back((v[i - 1] + v[i]) / 2);
    }
    return out;
}

void split_rows(const Matrix& x, const std::vector<std::size_t>& rows, std::size_t f, double t,
                std::vector<std::size_t>& left, std::vector<std::size_t>& right) {
    left.clear();
    right.clear();
    for (auto r : rows) (x(r, f) <= t ? left : right).push_back(r);
}

std::size_t best_depth1(const Matrix& x, const std::vector<std::size_t>& rows, const std::vector<int>& y,
                        std::size_t classes, const std::vector<std::vector<double>>& cuts) {
    std::size_t best = majority_count(rows, y, classes);
    std::vector<std::size_t> left, right;
    for (std::size_t f = 0; f < cuts.size(); ++f)
        for (double t : cuts[f]) {
            split_rows(x, rows, f, t, left, right);
            best = std::max(best, majority_count(left, y, classes) + majority_count(right, y, classes));
        }
    return best;
}

}  // namespace

std::size_t best_depth2_correct(const Matrix& x, const std::vector<int>& y, std::size_t class_count) {
    std::vector<std::size_t> all(x.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto cuts = midpoints(x);
    std::size_t best = best_depth1(x, all, y, class_count, cuts);
    std::vector<std::size_t> left, right;
    for (std::size_t f = 0; f < cuts.size(); ++f)
        for (double t : cuts[f]) {
            split_rows(x, all, f, t, left, right);
            best = std::max(best, best_depth1(x, left, y, class_count, cuts) + best_depth1(x, right, y, class_count, cuts));
        }
    return best;
}

int run_cli(const std::string& args) {
    const std::string command = std::string("\"") + OBSFEAT_CLI_PATH + "\" " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace testing
