#include "newsignals/tasks/splits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "newsignals/util/rng.hpp"

namespace newsignals::tasks {

TaskSplits chrono_split(const std::vector<TaskExample>& examples, double train_frac,
                        double val_frac, double test_frac) {
    if (train_frac <= 0.0 || val_frac <= 0.0 || test_frac <= 0.0 ||
        std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9) {
        throw std::invalid_argument("chrono_split: fractions must be positive and sum to 1");
    }
    std::vector<core::Tick> ticks;
    ticks.reserve(examples.size());
    for (const auto& ex : examples) ticks.push_back(ex.tick);
    std::sort(ticks.begin(), ticks.end());
    ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
    const std::size_t n = ticks.size();
    if (n < 3) throw std::invalid_argument("chrono_split: need at least 3 distinct ticks");

    const auto clamp = [n](double f, std::size_t lo, std::size_t hi) {
        const auto c = static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
        return std::min(std::max(c, lo), hi);
    };
    const std::size_t c1 = clamp(train_frac, 1, n - 2);
    const std::size_t c2 = std::max(clamp(train_frac + val_frac, 1, n - 1), c1 + 1);

    TaskSplits splits;
    splits.val_start = ticks[c1];
    splits.test_start = ticks[c2];
    for (const auto& ex : examples) {
        if (ex.tick < splits.val_start) {
            splits.train.push_back(ex);
        } else if (ex.tick < splits.test_start) {
            splits.val.push_back(ex);
        } else {
            splits.test.push_back(ex);
        }
    }
    return splits;
}

namespace {

std::vector<std::size_t> draw(const std::vector<std::size_t>& pool, std::size_t n,
                              util::SplitMix64& rng, bool* with_replacement) {
    *with_replacement = pool.size() < n;
    std::vector<std::size_t> picks;
    picks.reserve(n);
    if (*with_replacement) {
        for (std::size_t i = 0; i < n; ++i) {
            picks.push_back(pool[rng.next_below(pool.size())]);
        }
    } else {
        for (std::size_t i : util::sample_without_replacement(pool.size(), n, rng)) {
            picks.push_back(pool[i]);
        }
    }
    return picks;
}

}  // namespace

BalanceResult balance_sample(const std::vector<TaskExample>& pool, std::size_t n_pos,
                             std::size_t n_neg, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        (pool[i].label == 1 ? pos : neg).push_back(i);
    }
    BalanceResult result;
    result.pool_pos = pos.size();
    result.pool_neg = neg.size();
    if (n_pos > 0 && pos.empty()) {
        throw std::runtime_error("balance_sample: no positive examples in the pool");
    }
    if (n_neg > 0 && neg.empty()) {
        throw std::runtime_error("balance_sample: no negative examples in the pool");
    }

    util::SplitMix64 rng(seed);
    std::vector<std::size_t> picks;
    if (n_pos > 0) picks = draw(pos, n_pos, rng, &result.pos_with_replacement);
    std::vector<std::size_t> neg_picks;
    if (n_neg > 0) neg_picks = draw(neg, n_neg, rng, &result.neg_with_replacement);
    picks.insert(picks.end(), neg_picks.begin(), neg_picks.end());

    // Fisher-Yates over the union so the classes interleave reproducibly.
    for (std::size_t i = picks.size(); i > 1; --i) {
        std::swap(picks[i - 1], picks[rng.next_below(i)]);
    }
    result.examples.reserve(picks.size());
    for (std::size_t i : picks) result.examples.push_back(pool[i]);
    return result;
}

}  // namespace newsignals::tasks
