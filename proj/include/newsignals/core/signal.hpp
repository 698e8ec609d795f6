#pragma once

#include <map>
#include <string>

#include "newsignals/core/feed.hpp"
#include "newsignals/core/row_table.hpp"
#include "newsignals/core/time_series.hpp"

namespace newsignals::core {

// A named entity's bundle of >=1 time series and >=0 document feeds.
// add_series/add_feed return *this so population chains; the transforming
// operations (slice, aligned) return new values and never mutate.
class Signal {
public:
    Signal(std::string id, std::string name,
           std::map<std::string, std::string> params = {});

    const std::string& id() const { return id_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, std::string>& params() const { return params_; }

    Signal& add_series(TimeSeries ts);
    Signal& add_feed(Feed feed);

    const std::map<std::string, TimeSeries>& series() const { return series_; }
    const std::map<std::string, Feed>& feeds() const { return feeds_; }
    const TimeSeries& series_at(const std::string& name) const;
    const Feed& feed_at(const std::string& name) const;
    bool has_series(const std::string& name) const { return series_.count(name) != 0; }

    // True when every series and feed covers one identical [start, end).
    bool is_aligned() const;
    Tick start() const;  // aligned signals only
    Tick end() const;

    // Trims all members to the intersection of their tick ranges; feeds gain
    // empty buckets for covered ticks. Throws if the intersection is empty.
    Signal aligned() const;

    // Restriction to the half-open [slice_start, slice_end).
    Signal slice(Tick slice_start, Tick slice_end) const;

    // One row per tick; requires an aligned signal.
    RowTable to_row_table() const;

    bool operator==(const Signal&) const = default;

private:
    std::string id_;
    std::string name_;
    std::map<std::string, std::string> params_;
    std::map<std::string, TimeSeries> series_;
    std::map<std::string, Feed> feeds_;
};

}  // namespace newsignals::core
