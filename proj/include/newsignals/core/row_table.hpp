#pragma once

#include <string>
#include <vector>

#include "newsignals/core/document.hpp"
#include "newsignals/core/tick.hpp"

namespace newsignals::core {

// Flat tabular view of an aligned signal: one row per tick, one real column
// per series and one document-list column per feed. Column order follows the
// sorted name order used everywhere serialization must be canonical.
struct RowTable {
    struct Row {
        Tick tick;
        std::vector<double> values;                   // parallel to series_names
        std::vector<std::vector<Document>> documents; // parallel to feed_names
    };

    std::vector<std::string> series_names;
    std::vector<std::string> feed_names;
    std::vector<Row> rows;

    std::size_t column_index(const std::string& series_name) const;
};

}  // namespace newsignals::core
