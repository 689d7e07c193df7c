#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace obsfeat {

// One trial's test accuracy, kept as the exact fraction correct / total.
struct TrialAccuracy {
    std::uint64_t seed = 0;
    std::size_t correct = 0;
    std::size_t total = 1;

    double accuracy() const noexcept { return static_cast<double>(correct) / static_cast<double>(total); }
    bool operator==(const TrialAccuracy&) const = default;
};

struct AccuracyStats {
    std::size_t n_trials = 0;
    double min = 0.0;
    double max = 0.0;
    double std = 0.0;  // population
    double arithmetic_mean = 0.0;
    double geometric_mean = 0.0;
    std::size_t zero_accuracy_trials = 0;
    std::vector<TrialAccuracy> per_trial;

    bool operator==(const AccuracyStats&) const = default;
};

// Each statistic is evaluated from the exact fractions in extended precision
// and rounded once to double, so min <= geometric_mean <= arithmetic_mean <= max
// holds exactly. A zero accuracy makes the geometric mean 0.
AccuracyStats summarize(std::span<const TrialAccuracy> trials);

}  // namespace obsfeat
