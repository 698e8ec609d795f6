#include "newsignals/anomaly/anomaly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace newsignals::anomaly {

namespace {

struct Moments {
    double mean;
    double stddev;  // population
};

Moments moments(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / n)};
}

core::TimeSeries standardize(const core::TimeSeries& ts, Moments m) {
    std::vector<double> z(ts.size(), 0.0);
    if (m.stddev > 0.0) {
        for (std::size_t i = 0; i < ts.size(); ++i) z[i] = (ts[i] - m.mean) / m.stddev;
    }
    return core::TimeSeries(ts.name() + "_zscore", ts.start(), std::move(z));
}

void require_length(const core::TimeSeries& ts) {
    if (ts.size() < 2) {
        throw std::invalid_argument("zscore: series '" + ts.name() + "' needs length >= 2");
    }
}

}  // namespace

core::TimeSeries zscore_series(const core::TimeSeries& ts) {
    require_length(ts);
    return standardize(ts, moments(ts.values()));
}

core::TimeSeries zscore_series(const core::TimeSeries& ts, core::Tick stats_start,
                               core::Tick stats_end) {
    require_length(ts);
    const core::TimeSeries window = ts.slice(stats_start, stats_end);
    if (window.size() < 2) {
        throw std::invalid_argument("zscore: stats window on '" + ts.name() + "' needs length >= 2");
    }
    return standardize(ts, moments(window.values()));
}

core::TimeSeries detect_anomalies(const core::TimeSeries& ts, const AnomalyParams& params) {
    if (!(params.threshold_t > 0.0)) {
        throw std::invalid_argument("anomaly threshold must be positive");
    }
    const core::TimeSeries z =
        params.stats_window
            ? zscore_series(ts, params.stats_window->first, params.stats_window->second)
            : zscore_series(ts);
    std::vector<double> flags(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const bool hit = params.strict ? z[i] > params.threshold_t : z[i] >= params.threshold_t;
        flags[i] = hit ? 1.0 : 0.0;
    }
    return core::TimeSeries(ts.name() + "_anomalies", ts.start(), std::move(flags));
}

double positive_rate(const core::TimeSeries& binary_ts) {
    double ones = 0.0;
    for (std::size_t i = 0; i < binary_ts.size(); ++i) {
        const double v = binary_ts[i];
        if (v != 0.0 && v != 1.0) {
            throw std::invalid_argument("positive_rate: non-binary value at index " +
                                        std::to_string(i));
        }
        ones += v;
    }
    return ones / static_cast<double>(binary_ts.size());
}

}  // namespace newsignals::anomaly
