#include "obsfeat/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "obsfeat/error.hpp"

namespace obsfeat::tree {

void Params::validate() const {
    if (max_depth && *max_depth < 1) fail_input("tree max_depth must be >= 1");
    if (min_samples_leaf < 1) fail_input("tree min_samples_leaf must be >= 1");
    if (!(min_impurity_decrease >= 0.0)) fail_input("tree min_impurity_decrease must be >= 0");
}

double gini_from_counts(std::span<const std::size_t> counts) {
    std::size_t total = 0;
    std::size_t sum_sq = 0;
    for (std::size_t c : counts) {
        total += c;
        sum_sq += c * c;
    }
    if (total == 0) fail_input("gini of an empty set is undefined");
    // (n^2 - sum c^2) / n^2 in integers, one rounding.
    const double n2 = static_cast<double>(total) * static_cast<double>(total);
    return static_cast<double>(total * total - sum_sq) / n2;
}

double gini(std::span<const int> labels) {
    if (labels.empty()) fail_input("gini of an empty set is undefined");
    const int max_label = *std::max_element(labels.begin(), labels.end());
    if (*std::min_element(labels.begin(), labels.end()) < 0) fail_input("gini: negative class index");
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_label) + 1, 0);
    for (int c : labels) ++counts[static_cast<std::size_t>(c)];
    return gini_from_counts(counts);
}

namespace {

struct Candidate {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = 0.0;
};

class Builder {
public:
    Builder(const Matrix& x, std::span<const int> y, std::size_t class_count, const Params& params)
        : x_(x), y_(y), params_(params) {
        tree_.feature_count = x.cols();
        tree_.class_count = class_count;
    }

    Tree build() {
        std::vector<std::size_t> rows(x_.rows());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        grow(rows, 0);
        return std::move(tree_);
    }

private:
    std::vector<std::size_t> histogram(std::span<const std::size_t> rows) const {
        std::vector<std::size_t> h(tree_.class_count, 0);
        for (std::size_t r : rows) ++h[static_cast<std::size_t>(y_[r])];
        return h;
    }

    // Sum of squared counts divided by n: n * (1 - gini) without the division by n.
    static double purity_mass(const std::vector<std::size_t>& counts, std::size_t n) {
        double s = 0.0;
        for (std::size_t c : counts) s += static_cast<double>(c) * static_cast<double>(c);
        return s / static_cast<double>(n);
    }

    Candidate best_split(std::span<const std::size_t> rows, const std::vector<std::size_t>& node_hist) const {
        const std::size_t n = rows.size();
        const double node_mass = purity_mass(node_hist, n);
        Candidate best;
        std::vector<std::size_t> order(rows.begin(), rows.end());
        for (std::size_t f = 0; f < x_.cols(); ++f) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const double va = x_(a, f), vb = x_(b, f);
                return va < vb || (va == vb && a < b);
            });
            std::vector<std::size_t> left(tree_.class_count, 0);
            std::vector<std::size_t> right = node_hist;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const int cls = y_[order[i]];
                ++left[static_cast<std::size_t>(cls)];
                --right[static_cast<std::size_t>(cls)];
                const double lo = x_(order[i], f);
                const double hi = x_(order[i + 1], f);
                if (!(lo < hi)) continue;
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (nl < params_.min_samples_leaf || nr < params_.min_samples_leaf) continue;
                // impurity - weighted child impurity = (mass_l + mass_r - mass_node) / n
                const double decrease =
                    (purity_mass(left, nl) + purity_mass(right, nr) - node_mass) / static_cast<double>(n);
                if (!best.found || decrease > best.decrease + 1e-12) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = lo + (hi - lo) / 2.0;
                    best.decrease = std::max(decrease, 0.0);
                }
            }
        }
        return best;
    }

    std::size_t grow(std::vector<std::size_t>& rows, std::size_t depth) {
        const std::size_t id = tree_.nodes.size();
        tree_.nodes.emplace_back();
        Node node;
        node.samples = rows.size();
        node.histogram = histogram(rows);
        node.impurity = gini_from_counts(node.histogram);
        node.predicted_class = static_cast<int>(
            std::max_element(node.histogram.begin(), node.histogram.end()) - node.histogram.begin());

        const bool depth_exhausted = params_.max_depth && depth >= *params_.max_depth;
        const bool too_small = rows.size() < 2 * params_.min_samples_leaf;
        if (node.impurity > 0.0 && !depth_exhausted && !too_small) {
            const Candidate split = best_split(rows, node.histogram);
            const bool worth_it = params_.min_impurity_decrease > 0.0
                                      ? split.decrease > params_.min_impurity_decrease
                                      : true;
            if (split.found && worth_it) {
                std::vector<std::size_t> left_rows, right_rows;
                for (std::size_t r : rows) (x_(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
                node.is_leaf = false;
                node.feature = split.feature;
                node.threshold = split.threshold;
                node.weighted_decrease =
                    static_cast<double>(rows.size()) / static_cast<double>(x_.rows()) * split.decrease;
                rows.clear();
                rows.shrink_to_fit();
                node.left = grow(left_rows, depth + 1);
                node.right = grow(right_rows, depth + 1);
            }
        }
        tree_.nodes[id] = std::move(node);
        return id;
    }

    const Matrix& x_;
    std::span<const int> y_;
    Params params_;
    Tree tree_;
};

}  // namespace

Tree fit(const Matrix& x, std::span<const int> y, std::size_t class_count, const Params& params) {
    params.validate();
    if (x.rows() == 0) fail_input("tree: empty training set");
    if (x.rows() != y.size())
        fail_input("tree: " + std::to_string(x.rows()) + " rows but " + std::to_string(y.size()) + " labels");
    if (class_count == 0) fail_input("tree: class_count must be positive");
    for (int c : y)
        if (c < 0 || static_cast<std::size_t>(c) >= class_count) fail_input("tree: label out of range");
    return Builder(x, y, class_count, params).build();
}

int predict(const Tree& tree, std::span<const double> x) {
    if (x.size() != tree.feature_count)
        fail_input("tree predict: expected " + std::to_string(tree.feature_count) + " features, got " +
                   std::to_string(x.size()));
    std::size_t id = 0;
    while (!tree.nodes[id].is_leaf) {
        const Node& n = tree.nodes[id];
        id = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return tree.nodes[id].predicted_class;
}

std::vector<int> predict_all(const Tree& tree, const Matrix& x) {
    std::vector<int> out;
    out.reserve(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(predict(tree, x.row(i)));
    return out;
}

std::size_t count_correct(const Tree& tree, const Matrix& x, std::span<const int> y) {
    if (x.rows() != y.size()) fail_input("tree: prediction rows and labels differ in length");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) correct += predict(tree, x.row(i)) == y[i] ? 1 : 0;
    return correct;
}

std::vector<double> importances(const Tree& tree) {
    std::vector<double> imp(tree.feature_count, 0.0);
    for (const Node& n : tree.nodes)
        if (!n.is_leaf) imp[n.feature] += n.weighted_decrease;
    const double total = std::accumulate(imp.begin(), imp.end(), 0.0);
    if (total > 0.0)
        for (double& v : imp) v /= total;
    return imp;
}

std::size_t Tree::depth() const {
    if (nodes.empty()) return 0;
    std::vector<std::size_t> d(nodes.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        deepest = std::max(deepest, d[i]);
        if (!nodes[i].is_leaf) {
            d[nodes[i].left] = d[i] + 1;
            d[nodes[i].right] = d[i] + 1;
        }
    }
    return deepest;
}

std::size_t Tree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.is_leaf; }));
}

}  // namespace obsfeat::tree
