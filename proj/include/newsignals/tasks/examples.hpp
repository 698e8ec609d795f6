#pragma once

#include <string>
#include <vector>

#include "newsignals/anomaly/anomaly.hpp"
#include "newsignals/dataset/dataset.hpp"

namespace newsignals::tasks {

// One (day, entity) classification instance: the day's headlines against the
// anomaly label of the target series `horizon` days later. target_value keeps
// the raw series value for regression-style targets.
struct TaskExample {
    std::string qid;
    core::Tick tick;
    std::string text;  // headlines joined by "\n"; may be empty (no-news day)
    int label = 0;
    std::string target_name;
    int horizon = 0;
    double target_value = 0.0;

    bool operator==(const TaskExample&) const = default;
};

// Per (signal, tick): text is the tick's bucket headlines in bucket order
// (feeds in name order), label = anomaly flag of `target` at tick + horizon.
// Ticks whose shifted index leaves the range are dropped. Output is ordered
// by (qid, tick).
std::vector<TaskExample> make_examples(const dataset::SignalsDataset& ds,
                                       const std::string& target,
                                       const anomaly::AnomalyParams& params = {},
                                       int horizon = 0);

}  // namespace newsignals::tasks
