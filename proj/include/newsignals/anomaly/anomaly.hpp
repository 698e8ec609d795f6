#pragma once

#include <optional>
#include <utility>

#include "newsignals/core/time_series.hpp"

namespace newsignals::anomaly {

// threshold_t is measured in standard deviations. strict=true flags a value
// only when its z-score strictly exceeds the threshold.
struct AnomalyParams {
    double threshold_t = 3.0;
    bool strict = true;

    // When set, mean and standard deviation are estimated from this tick
    // window only (e.g. the training period) instead of the full series.
    std::optional<std::pair<core::Tick, core::Tick>> stats_window;
};

// z_i = (x_i - mu) / sigma with mu the arithmetic mean and sigma the
// population (divide by N) standard deviation. Constant series (sigma == 0)
// standardize to the all-zero series. Requires length >= 2.
core::TimeSeries zscore_series(const core::TimeSeries& ts);
core::TimeSeries zscore_series(const core::TimeSeries& ts, core::Tick stats_start,
                               core::Tick stats_end);

// Binary series: 1 where the z-score exceeds params.threshold_t.
core::TimeSeries detect_anomalies(const core::TimeSeries& ts, const AnomalyParams& params);

// Mean of a {0,1} series; throws on any other value.
double positive_rate(const core::TimeSeries& binary_ts);

}  // namespace newsignals::anomaly
