#pragma once

#include <cstdint>
#include <vector>

namespace newsignals::tasks {

// Label-free baselines: iid Bernoulli(0.5) and Bernoulli(p), seeded.
std::vector<int> random_uniform(std::size_t n, std::uint64_t seed);
std::vector<int> random_target(std::size_t n, double p, std::uint64_t seed);

// Positive-class precision/recall/F1 plus the proportion of positive
// predictions. Zero denominators score 0.
struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double pos_rate = 0.0;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    bool operator==(const EvalReport&) const = default;
};

EvalReport evaluate(const std::vector<int>& pred, const std::vector<int>& gold);

}  // namespace newsignals::tasks
