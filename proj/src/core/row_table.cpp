#include "newsignals/core/row_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace newsignals::core {

std::size_t RowTable::column_index(const std::string& series_name) const {
    const auto it = std::find(series_names.begin(), series_names.end(), series_name);
    if (it == series_names.end()) throw std::out_of_range("no column '" + series_name + "'");
    return static_cast<std::size_t>(it - series_names.begin());
}

}  // namespace newsignals::core
