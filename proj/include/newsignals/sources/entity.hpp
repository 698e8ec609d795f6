#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace newsignals::sources {

// A Wikidata item. qid matches ^Q[0-9]+$; wikipedia_title, when present, is
// the underscore form used by Wikimedia APIs ("Apple_Inc.").
struct EntityRecord {
    std::string qid;
    std::string label;
    std::optional<std::string> wikipedia_title;

    bool operator==(const EntityRecord&) const = default;
};

bool is_valid_qid(std::string_view s);

// Validating constructor; throws std::invalid_argument on a malformed qid.
EntityRecord make_entity(std::string qid, std::string label = {},
                         std::optional<std::string> wikipedia_title = std::nullopt);

}  // namespace newsignals::sources
