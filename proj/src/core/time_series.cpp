#include "newsignals/core/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace newsignals::core {

TimeSeries::TimeSeries(std::string name, Tick start, std::vector<double> values)
    : name_(std::move(name)), start_(start), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("empty series '" + name_ + "'");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("non-finite value in series '" + name_ + "' at index " +
                                        std::to_string(i));
        }
    }
}

double TimeSeries::value_at(Tick t) const {
    if (!covers(t)) {
        throw std::out_of_range("tick " + t.to_string() + " outside series '" + name_ + "'");
    }
    return values_[static_cast<std::size_t>(t - start_)];
}

Tick TimeSeries::idxmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] > values_[best]) best = i;
    }
    return tick_at(best);
}

TimeSeries TimeSeries::slice(Tick slice_start, Tick slice_end) const {
    const Tick s = std::max(slice_start, start_);
    const Tick e = std::min(slice_end, end());
    if (s >= e) {
        throw std::invalid_argument("empty slice of series '" + name_ + "' [" +
                                    slice_start.to_string() + ", " + slice_end.to_string() + ")");
    }
    const auto from = static_cast<std::size_t>(s - start_);
    const auto len = static_cast<std::size_t>(e - s);
    return TimeSeries(name_, s,
                      std::vector<double>(values_.begin() + from, values_.begin() + from + len));
}

TimeSeries TimeSeries::renamed(std::string new_name) const {
    return TimeSeries(std::move(new_name), start_, values_);
}

}  // namespace newsignals::core
