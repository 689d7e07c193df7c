#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "obsfeat/dataset.hpp"
#include "obsfeat/matrix.hpp"

using obsfeat::Matrix;

namespace testing {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

// Small labeled dataset: continuous features, labels driven by feature 0.
obsfeat::Dataset toy_dataset(std::uint64_t seed, std::size_t n, std::size_t d, std::size_t classes = 3,
                             std::size_t non_obsolete = 0);

obsfeat::SynthesisSpec case_study_spec(std::uint64_t seed);

std::filesystem::path temp_dir(const std::string& name);
std::string read_text(const std::filesystem::path& path);

// Best training-set correct count over all threshold trees of depth <= 2,
// by exhaustive enumeration of split features and midpoint thresholds.
std::size_t best_depth2_correct(const Matrix& x, const std::vector<int>& y, std::size_t class_count);

// Runs the CLI with arguments; returns the exit code.
int run_cli(const std::string& args);

}  // namespace testing
