#pragma once

#include <span>
#include <string>
#include <vector>

#include "newsignals/core/tick.hpp"

namespace newsignals::core {

// Daily series with exactly one real value per tick over a contiguous,
// half-open [start, end) range. Values are finite; length >= 1.
class TimeSeries {
public:
    TimeSeries(std::string name, Tick start, std::vector<double> values);

    const std::string& name() const { return name_; }
    Tick start() const { return start_; }
    Tick end() const { return start_ + static_cast<std::int64_t>(values_.size()); }
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    Tick tick_at(std::size_t i) const { return start_ + static_cast<std::int64_t>(i); }
    bool covers(Tick t) const { return t >= start_ && t < end(); }
    double value_at(Tick t) const;

    // Tick of the maximum value; ties resolve to the earliest tick.
    Tick idxmax() const;

    // Restriction to [slice_start, slice_end) intersected with this range.
    TimeSeries slice(Tick slice_start, Tick slice_end) const;

    TimeSeries renamed(std::string new_name) const;

    bool operator==(const TimeSeries&) const = default;

private:
    std::string name_;
    Tick start_;
    std::vector<double> values_;
};

}  // namespace newsignals::core
