#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace newsignals::core {

// One unit of the time index: a UTC calendar day. Ordering matches the
// lexicographic order of the ISO "YYYY-MM-DD" string.
class Tick {
public:
    Tick() = default;

    static Tick parse(std::string_view iso);  // "YYYY-MM-DD"
    static Tick from_day_number(std::int64_t days_since_epoch);

    // Floors a UTC timestamp (seconds since epoch) to its calendar day.
    static Tick from_timestamp(std::int64_t epoch_seconds);

    std::string to_string() const;
    std::int64_t day_number() const { return day_; }

    Tick operator+(std::int64_t days) const { return from_day_number(day_ + days); }
    Tick operator-(std::int64_t days) const { return from_day_number(day_ - days); }
    std::int64_t operator-(Tick other) const { return day_ - other.day_; }
    Tick& operator++() { ++day_; return *this; }

    auto operator<=>(const Tick&) const = default;

private:
    std::int64_t day_ = 0;  // days since 1970-01-01
};

// UTC timestamp helpers (seconds since epoch <-> "YYYY-MM-DDTHH:MM:SSZ").
// Parsing accepts an optional trailing "Z" or "+HH:MM"/"-HH:MM" offset and a
// bare date; offsets are normalized to UTC.
std::int64_t parse_timestamp(std::string_view iso);
std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace newsignals::core
