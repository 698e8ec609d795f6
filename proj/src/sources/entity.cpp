#include "newsignals/sources/entity.hpp"

#include <stdexcept>

namespace newsignals::sources {

bool is_valid_qid(std::string_view s) {
    if (s.size() < 2 || s[0] != 'Q') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

EntityRecord make_entity(std::string qid, std::string label,
                         std::optional<std::string> wikipedia_title) {
    if (!is_valid_qid(qid)) throw std::invalid_argument("invalid qid '" + qid + "'");
    if (label.empty()) label = qid;
    return EntityRecord{std::move(qid), std::move(label), std::move(wikipedia_title)};
}

}  // namespace newsignals::sources
