#include "newsignals/tasks/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "newsignals/util/rng.hpp"

namespace newsignals::tasks {

int DecisionTree::predict(const SparseBinaryVector& x) const {
    std::size_t at = 0;
    while (nodes[at].feature >= 0) {
        const bool on = std::binary_search(x.on_indices.begin(), x.on_indices.end(),
                                           static_cast<std::size_t>(nodes[at].feature));
        at = static_cast<std::size_t>(on ? nodes[at].right : nodes[at].left);
    }
    return nodes[at].count1 > nodes[at].count0 ? 1 : 0;
}

namespace {

using Wide = __int128;  // split scoring in exact integer arithmetic

// Children score proportional to sum_child (count0^2 + count1^2) / size;
// larger means lower weighted Gini impurity.
struct SplitCounts {
    std::int64_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;

    std::int64_t left() const { return l0 + l1; }
    std::int64_t right() const { return r0 + r1; }
};

// score(a) > score(b) with score = (l0²+l1²)/l + (r0²+r1²)/r, compared via
// cross-multiplication so ties are exact.
bool better(const SplitCounts& a, const SplitCounts& b) {
    const Wide num_a = (Wide(a.l0) * a.l0 + Wide(a.l1) * a.l1) * a.right() +
                       (Wide(a.r0) * a.r0 + Wide(a.r1) * a.r1) * a.left();
    const Wide num_b = (Wide(b.l0) * b.l0 + Wide(b.l1) * b.l1) * b.right() +
                       (Wide(b.r0) * b.r0 + Wide(b.r1) * b.r1) * b.left();
    return num_a * (Wide(b.left()) * b.right()) > num_b * (Wide(a.left()) * a.right());
}

// Positive Gini decrease against the parent: (c0²+c1²)·l·r < n·(children sum).
bool beats_parent(const SplitCounts& s, std::int64_t c0, std::int64_t c1) {
    const std::int64_t n = c0 + c1;
    const Wide parent = (Wide(c0) * c0 + Wide(c1) * c1) * s.left() * s.right();
    const Wide children = ((Wide(s.l0) * s.l0 + Wide(s.l1) * s.l1) * s.right() +
                           (Wide(s.r0) * s.r0 + Wide(s.r1) * s.r1) * s.left()) *
                          n;
    return children > parent;
}

struct TreeBuilder {
    const std::vector<SparseBinaryVector>& X;
    const std::vector<int>& y;
    std::size_t n_features;
    std::size_t max_depth;
    std::size_t m_features;  // candidates per node
    util::SplitMix64 rng;
    std::vector<TreeNode> nodes;

    bool feature_on(std::size_t row, std::size_t f) const {
        const auto& on = X[row].on_indices;
        return std::binary_search(on.begin(), on.end(), f);
    }

    // sqrt(V) draws without replacement; rejection sampling keeps it O(m)
    // even for wide vocabularies.
    std::vector<std::size_t> sample_features() {
        std::vector<std::size_t> out;
        out.reserve(m_features);
        while (out.size() < m_features) {
            const auto f = static_cast<std::size_t>(rng.next_below(n_features));
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        }
        return out;
    }

    std::int32_t build(const std::vector<std::size_t>& samples, std::size_t depth) {
        std::int64_t c1 = 0;
        for (const auto i : samples) c1 += y[i];
        const auto c0 = static_cast<std::int64_t>(samples.size()) - c1;

        const auto leaf = [&] {
            nodes.push_back(TreeNode{-1, -1, -1, c0, c1});
            return static_cast<std::int32_t>(nodes.size() - 1);
        };
        if (c0 == 0 || c1 == 0 || depth >= max_depth || samples.size() < 2) return leaf();

        std::int64_t best_f = -1;
        SplitCounts best;
        for (const auto f : sample_features()) {
            SplitCounts counts;
            for (const auto i : samples) {
                if (feature_on(i, f)) {
                    ++(y[i] == 1 ? counts.r1 : counts.r0);
                }
            }
            counts.l1 = c1 - counts.r1;
            counts.l0 = c0 - counts.r0;
            if (counts.left() == 0 || counts.right() == 0) continue;
            if (!beats_parent(counts, c0, c1)) continue;
            if (best_f < 0 || better(counts, best) ||
                (!better(best, counts) && static_cast<std::int64_t>(f) < best_f)) {
                best_f = static_cast<std::int64_t>(f);
                best = counts;
            }
        }
        if (best_f < 0) return leaf();

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(static_cast<std::size_t>(best.left()));
        right_rows.reserve(static_cast<std::size_t>(best.right()));
        for (const auto i : samples) {
            (feature_on(i, static_cast<std::size_t>(best_f)) ? right_rows : left_rows).push_back(i);
        }

        const auto at = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(TreeNode{best_f, -1, -1, 0, 0});
        const auto left_id = build(left_rows, depth + 1);
        const auto right_id = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(at)].left = left_id;
        nodes[static_cast<std::size_t>(at)].right = right_id;
        return at;
    }
};

DecisionTree train_tree(const std::vector<SparseBinaryVector>& X, const std::vector<int>& y,
                        std::size_t n_features, const ForestParams& params, std::size_t tree_index) {
    util::SplitMix64 rng(util::derive_seed(params.seed, tree_index));
    const std::size_t n = X.size();
    std::vector<std::size_t> bootstrap(n);
    for (auto& i : bootstrap) i = static_cast<std::size_t>(rng.next_below(n));

    const auto m = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n_features)))));
    TreeBuilder builder{X, y, n_features, params.max_depth, std::min(m, n_features),
                        std::move(rng), {}};
    builder.build(bootstrap, 0);
    return DecisionTree{std::move(builder.nodes)};
}

}  // namespace

ForestModel ForestModel::train(const std::vector<SparseBinaryVector>& X, const std::vector<int>& y,
                               std::size_t n_features, const ForestParams& params) {
    if (X.size() != y.size()) throw std::invalid_argument("train_forest: |X| != |y|");
    if (X.size() < 2) throw std::invalid_argument("train_forest: need at least 2 rows");
    if (params.n_trees == 0 || params.max_depth == 0) {
        throw std::invalid_argument("train_forest: n_trees and max_depth must be positive");
    }
    if (n_features == 0) throw std::invalid_argument("train_forest: empty feature space");
    bool saw0 = false, saw1 = false;
    for (const auto label : y) {
        if (label != 0 && label != 1) throw std::invalid_argument("train_forest: labels must be 0/1");
        (label == 1 ? saw1 : saw0) = true;
    }
    if (!saw0 || !saw1) throw std::runtime_error("train_forest: labels are single-class");
    for (const auto& x : X) {
        if (!x.on_indices.empty() && x.on_indices.back() >= n_features) {
            throw std::invalid_argument("train_forest: feature index out of range");
        }
    }

    std::vector<DecisionTree> trees(params.n_trees);
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= params.n_trees) return;
            trees[k] = train_tree(X, y, n_features, params, k);
        }
    };
    const auto n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, params.jobs)), params.n_trees);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return ForestModel(params, n_features, std::move(trees));
}

int ForestModel::predict_one(const SparseBinaryVector& x) const {
    std::size_t votes = 0;
    for (const auto& tree : trees_) votes += static_cast<std::size_t>(tree.predict(x));
    return 2 * votes > trees_.size() ? 1 : 0;
}

std::vector<int> ForestModel::predict(const std::vector<SparseBinaryVector>& X) const {
    std::vector<int> out;
    out.reserve(X.size());
    for (const auto& x : X) out.push_back(predict_one(x));
    return out;
}

}  // namespace newsignals::tasks
