#pragma once

#include <cstdint>
#include <vector>

#include "newsignals/tasks/vocab.hpp"

namespace newsignals::tasks {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 20;
    std::uint64_t seed = 0;
    int jobs = 4;  // training threads; the result does not depend on it

    bool operator==(const ForestParams& other) const {
        return n_trees == other.n_trees && max_depth == other.max_depth && seed == other.seed;
    }
};

// Nodes in preorder; feature == -1 marks a leaf carrying class counts.
// Binary features: value 0 goes left, 1 goes right.
struct TreeNode {
    std::int64_t feature = -1;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int64_t count0 = 0;
    std::int64_t count1 = 0;

    bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    int predict(const SparseBinaryVector& x) const;

    bool operator==(const DecisionTree&) const = default;
};

// Random forest over sparse binary features: per tree a bootstrap sample of
// n rows, sqrt(V) candidate features per node, best Gini-impurity decrease
// (ties to the lowest feature index), leaves when pure / at max_depth / node
// size < 2. Majority vote; ties predict 0. Deterministic given the seed —
// tree k draws from a child generator derived from (seed, k).
class ForestModel {
public:
    ForestModel() = default;
    ForestModel(ForestParams params, std::size_t n_features, std::vector<DecisionTree> trees)
        : params_(params), n_features_(n_features), trees_(std::move(trees)) {}

    static ForestModel train(const std::vector<SparseBinaryVector>& X, const std::vector<int>& y,
                             std::size_t n_features, const ForestParams& params = {});

    int predict_one(const SparseBinaryVector& x) const;
    std::vector<int> predict(const std::vector<SparseBinaryVector>& X) const;

    const ForestParams& params() const { return params_; }
    std::size_t n_features() const { return n_features_; }
    const std::vector<DecisionTree>& trees() const { return trees_; }

    bool operator==(const ForestModel&) const = default;

private:
    ForestParams params_;
    std::size_t n_features_ = 0;
    std::vector<DecisionTree> trees_;
};

}  // namespace newsignals::tasks
