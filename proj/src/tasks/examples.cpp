#include "newsignals/tasks/examples.hpp"

#include <stdexcept>

namespace newsignals::tasks {

std::vector<TaskExample> make_examples(const dataset::SignalsDataset& ds,
                                       const std::string& target,
                                       const anomaly::AnomalyParams& params, int horizon) {
    std::vector<TaskExample> out;
    for (const auto& [qid, signal] : ds.signals()) {
        if (!signal.has_series(target)) {
            throw std::invalid_argument("make_examples: signal '" + qid + "' has no series '" +
                                        target + "'");
        }
        const auto& series = signal.series_at(target);
        const auto labels = anomaly::detect_anomalies(series, params);
        for (core::Tick t = series.start(); t < series.end(); ++t) {
            const core::Tick shifted = t + horizon;
            if (!series.covers(shifted)) continue;
            TaskExample ex;
            ex.qid = qid;
            ex.tick = t;
            ex.target_name = target;
            ex.horizon = horizon;
            ex.label = labels.value_at(shifted) != 0.0 ? 1 : 0;
            ex.target_value = series.value_at(shifted);
            for (const auto& [feed_name, feed] : signal.feeds()) {
                for (const auto& doc : feed.bucket(t)) {
                    if (!ex.text.empty()) ex.text += '\n';
                    ex.text += doc.title;
                }
            }
            out.push_back(std::move(ex));
        }
    }
    return out;
}

}  // namespace newsignals::tasks
