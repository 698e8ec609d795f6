#include "newsignals/tasks/baselines.hpp"

#include <stdexcept>

#include "newsignals/util/rng.hpp"

namespace newsignals::tasks {

std::vector<int> random_uniform(std::size_t n, std::uint64_t seed) {
    return random_target(n, 0.5, seed);
}

std::vector<int> random_target(std::size_t n, double p, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random baseline: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random baseline: p outside [0, 1]");
    util::SplitMix64 rng(seed);
    std::vector<int> labels(n);
    for (auto& label : labels) label = rng.next_bernoulli(p) ? 1 : 0;
    return labels;
}

EvalReport evaluate(const std::vector<int>& pred, const std::vector<int>& gold) {
    if (pred.size() != gold.size()) {
        throw std::invalid_argument("evaluate: pred and gold lengths differ");
    }
    EvalReport report;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if ((pred[i] != 0 && pred[i] != 1) || (gold[i] != 0 && gold[i] != 1)) {
            throw std::invalid_argument("evaluate: labels must be 0/1");
        }
        if (pred[i] == 1) {
            ++(gold[i] == 1 ? report.tp : report.fp);
        } else {
            ++(gold[i] == 1 ? report.fn : report.tn);
        }
    }
    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    report.precision = ratio(report.tp, report.tp + report.fp);
    report.recall = ratio(report.tp, report.tp + report.fn);
    report.f1 = report.precision + report.recall > 0.0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    report.pos_rate = ratio(report.tp + report.fp, pred.size());
    return report;
}

}  // namespace newsignals::tasks
