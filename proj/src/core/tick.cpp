#include "newsignals/core/tick.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace newsignals::core {

namespace {

int parse_int(std::string_view s, const char* what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

std::chrono::sys_days to_sys_days(int y, unsigned m, unsigned d, std::string_view src) {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date: '" + std::string(src) + "'");
    return std::chrono::sys_days{ymd};
}

}  // namespace

Tick Tick::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(iso) + "'");
    }
    const int y = parse_int(iso.substr(0, 4), "year");
    const int m = parse_int(iso.substr(5, 2), "month");
    const int d = parse_int(iso.substr(8, 2), "day");
    return from_day_number(to_sys_days(y, static_cast<unsigned>(m), static_cast<unsigned>(d), iso)
                               .time_since_epoch()
                               .count());
}

Tick Tick::from_day_number(std::int64_t days_since_epoch) {
    Tick t;
    t.day_ = days_since_epoch;
    return t;
}

Tick Tick::from_timestamp(std::int64_t epoch_seconds) {
    std::int64_t d = epoch_seconds / 86400;
    if (epoch_seconds < 0 && epoch_seconds % 86400 != 0) --d;
    return from_day_number(d);
}

std::string Tick::to_string() const {
    const std::chrono::sys_days sd{std::chrono::days{day_}};
    const std::chrono::year_month_day ymd{sd};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::int64_t parse_timestamp(std::string_view iso) {
    if (iso.size() == 10) return Tick::parse(iso).day_number() * 86400;
    if (iso.size() < 19 || (iso[10] != 'T' && iso[10] != ' ')) {
        throw std::invalid_argument("bad timestamp: '" + std::string(iso) + "'");
    }
    const Tick day = Tick::parse(iso.substr(0, 10));
    const int hh = parse_int(iso.substr(11, 2), "hour");
    const int mm = parse_int(iso.substr(14, 2), "minute");
    const int ss = parse_int(iso.substr(17, 2), "second");
    if (iso[13] != ':' || iso[16] != ':' || hh > 23 || mm > 59 || ss > 60) {
        throw std::invalid_argument("bad timestamp: '" + std::string(iso) + "'");
    }
    std::int64_t t = day.day_number() * 86400 + hh * 3600 + mm * 60 + ss;

    std::string_view rest = iso.substr(19);
    // Fractional seconds are truncated.
    if (!rest.empty() && rest[0] == '.') {
        std::size_t i = 1;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
        rest = rest.substr(i);
    }
    if (rest.empty() || rest == "Z" || rest == "z") return t;
    if ((rest[0] == '+' || rest[0] == '-') && (rest.size() == 6 || rest.size() == 5)) {
        const int oh = parse_int(rest.substr(1, 2), "offset hour");
        const int om = rest.size() == 6 ? parse_int(rest.substr(4, 2), "offset minute")
                                        : parse_int(rest.substr(3, 2), "offset minute");
        const std::int64_t offset = oh * 3600 + om * 60;
        return rest[0] == '+' ? t - offset : t + offset;
    }
    throw std::invalid_argument("bad timestamp suffix: '" + std::string(iso) + "'");
}

std::string format_timestamp(std::int64_t epoch_seconds) {
    const Tick day = Tick::from_timestamp(epoch_seconds);
    const std::int64_t rem = epoch_seconds - day.day_number() * 86400;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", day.to_string().c_str(),
                  int(rem / 3600), int(rem / 60 % 60), int(rem % 60));
    return buf;
}

}  // namespace newsignals::core
