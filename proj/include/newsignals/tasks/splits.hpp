#pragma once

#include <cstdint>
#include <vector>

#include "newsignals/tasks/examples.hpp"

namespace newsignals::tasks {

// Chronological split. Every entity shares the same two cut dates:
// train < val_start <= val < test_start <= test.
struct TaskSplits {
    std::vector<TaskExample> train;
    std::vector<TaskExample> val;
    std::vector<TaskExample> test;
    core::Tick val_start;
    core::Tick test_start;
};

// Cuts the distinct-tick axis at floor(train_frac * n) and
// floor((train_frac + val_frac) * n), clamped so every split is non-empty.
// Requires >= 3 distinct ticks and fractions summing to 1.
TaskSplits chrono_split(const std::vector<TaskExample>& examples, double train_frac = 0.8,
                        double val_frac = 0.1, double test_frac = 0.1);

struct BalanceResult {
    std::vector<TaskExample> examples;  // shuffled union
    std::size_t pool_pos = 0;
    std::size_t pool_neg = 0;
    bool pos_with_replacement = false;  // pool smaller than the request
    bool neg_with_replacement = false;
};

// Draws n_pos positives and n_neg negatives, seeded and reproducible.
// Classes whose pool is smaller than the request are drawn with replacement
// (flagged); a requested class with an empty pool is an error.
BalanceResult balance_sample(const std::vector<TaskExample>& pool, std::size_t n_pos,
                             std::size_t n_neg, std::uint64_t seed);

}  // namespace newsignals::tasks
