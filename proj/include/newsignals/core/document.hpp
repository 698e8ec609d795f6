#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "newsignals/core/tick.hpp"

namespace newsignals::core {

struct Document {
    std::string id;
    std::int64_t published_at = 0;  // seconds since epoch, UTC
    std::string title;
    std::optional<std::string> body;
    std::map<std::string, std::string> metadata;

    // UTC-day truncation; the bucket this document belongs to.
    Tick day() const { return Tick::from_timestamp(published_at); }

    bool operator==(const Document&) const = default;
};

}  // namespace newsignals::core
