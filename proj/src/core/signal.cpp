#include "newsignals/core/signal.hpp"

#include <algorithm>
#include <stdexcept>

namespace newsignals::core {

Signal::Signal(std::string id, std::string name, std::map<std::string, std::string> params)
    : id_(std::move(id)), name_(std::move(name)), params_(std::move(params)) {
    if (id_.empty()) throw std::invalid_argument("signal id must be non-empty");
}

Signal& Signal::add_series(TimeSeries ts) {
    const std::string key = ts.name();
    if (!series_.emplace(key, std::move(ts)).second) {
        throw std::invalid_argument("duplicate series '" + key + "' on signal " + id_);
    }
    return *this;
}

Signal& Signal::add_feed(Feed feed) {
    const std::string key = feed.name();
    if (!feeds_.emplace(key, std::move(feed)).second) {
        throw std::invalid_argument("duplicate feed '" + key + "' on signal " + id_);
    }
    return *this;
}

const TimeSeries& Signal::series_at(const std::string& name) const {
    const auto it = series_.find(name);
    if (it == series_.end()) throw std::out_of_range("signal " + id_ + " has no series '" + name + "'");
    return it->second;
}

const Feed& Signal::feed_at(const std::string& name) const {
    const auto it = feeds_.find(name);
    if (it == feeds_.end()) throw std::out_of_range("signal " + id_ + " has no feed '" + name + "'");
    return it->second;
}

bool Signal::is_aligned() const {
    if (series_.empty()) return false;
    const Tick s = series_.begin()->second.start();
    const Tick e = series_.begin()->second.end();
    for (const auto& [name, ts] : series_) {
        if (ts.start() != s || ts.end() != e) return false;
    }
    for (const auto& [name, feed] : feeds_) {
        if (!feed.has_range() || feed.start() != s || feed.end() != e) return false;
    }
    return true;
}

Tick Signal::start() const {
    if (series_.empty()) throw std::logic_error("signal " + id_ + " has no series");
    return series_.begin()->second.start();
}

Tick Signal::end() const {
    if (series_.empty()) throw std::logic_error("signal " + id_ + " has no series");
    return series_.begin()->second.end();
}

Signal Signal::aligned() const {
    if (series_.empty()) throw std::logic_error("align: signal " + id_ + " has no series");
    Tick s = series_.begin()->second.start();
    Tick e = series_.begin()->second.end();
    for (const auto& [name, ts] : series_) {
        s = std::max(s, ts.start());
        e = std::min(e, ts.end());
    }
    for (const auto& [name, feed] : feeds_) {
        // A feed with no explicit span does not constrain the intersection.
        if (feed.has_range()) {
            s = std::max(s, feed.start());
            e = std::min(e, feed.end());
        }
    }
    if (s >= e) throw std::invalid_argument("align: empty intersection on signal " + id_);

    Signal out(id_, name_, params_);
    for (const auto& [name, ts] : series_) out.add_series(ts.slice(s, e));
    for (const auto& [name, feed] : feeds_) out.add_feed(feed.aligned_to(s, e));
    return out;
}

Signal Signal::slice(Tick slice_start, Tick slice_end) const {
    if (slice_start >= slice_end) {
        throw std::invalid_argument("slice: start must precede end on signal " + id_);
    }
    Signal out(id_, name_, params_);
    for (const auto& [name, ts] : series_) {
        if (slice_end <= ts.start() || slice_start >= ts.end()) {
            throw std::invalid_argument("empty slice [" + slice_start.to_string() + ", " +
                                        slice_end.to_string() + ") of signal " + id_);
        }
        out.add_series(ts.slice(slice_start, slice_end));
    }
    for (const auto& [name, feed] : feeds_) out.add_feed(feed.sliced(slice_start, slice_end));
    return out;
}

RowTable Signal::to_row_table() const {
    if (!is_aligned()) {
        throw std::logic_error("to_row_table: signal " + id_ + " is not aligned");
    }
    RowTable table;
    for (const auto& [name, ts] : series_) table.series_names.push_back(name);
    for (const auto& [name, feed] : feeds_) table.feed_names.push_back(name);

    const Tick s = start();
    const Tick e = end();
    table.rows.reserve(static_cast<std::size_t>(e - s));
    for (Tick t = s; t < e; ++t) {
        RowTable::Row row;
        row.tick = t;
        for (const auto& [name, ts] : series_) row.values.push_back(ts.value_at(t));
        for (const auto& [name, feed] : feeds_) row.documents.push_back(feed.bucket(t));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace newsignals::core
