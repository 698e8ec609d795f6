#include "newsignals/sources/sparql.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "newsignals/util/text.hpp"

namespace newsignals::sources {

namespace {

std::string iri_tail(const std::string& value) {
    const auto slash = value.rfind('/');
    return slash == std::string::npos ? value : value.substr(slash + 1);
}

// Sitelink URLs carry the title after /wiki/; literals pass through with
// spaces normalized to the underscore form Wikimedia APIs expect.
std::string title_from_binding(const std::string& value) {
    std::string title = value;
    if (const auto pos = value.find("/wiki/"); pos != std::string::npos) {
        title = util::url_decode(value.substr(pos + 6));
    }
    std::replace(title.begin(), title.end(), ' ', '_');
    return title;
}

}  // namespace

std::vector<EntityRecord> parse_sparql_entities(const std::string& json_body,
                                                const SparqlBindingNames& names) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_body);
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("sparql: payload is not JSON: ") + e.what());
    }

    const auto results = doc.find("results");
    if (results == doc.end() || !results->contains("bindings")) {
        throw DecodeError("sparql: payload has no results.bindings");
    }

    std::vector<EntityRecord> out;
    std::set<std::string> seen;
    for (const auto& row : results->at("bindings")) {
        const auto entity = row.find(names.entity);
        if (entity == row.end()) {
            throw DecodeError("sparql: row is missing binding '" + names.entity + "'");
        }
        std::string qid;
        try {
            qid = iri_tail(entity->at("value").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw DecodeError(std::string("sparql: malformed binding: ") + e.what());
        }
        if (!is_valid_qid(qid)) {
            throw DecodeError("sparql: binding '" + names.entity + "' is not a QID: '" + qid + "'");
        }
        if (!seen.insert(qid).second) continue;

        std::string label = qid;
        if (const auto it = row.find(names.label); it != row.end() && it->contains("value")) {
            label = it->at("value").get<std::string>();
        }
        std::optional<std::string> title;
        if (const auto it = row.find(names.title); it != row.end() && it->contains("value")) {
            title = title_from_binding(it->at("value").get<std::string>());
        }
        out.push_back(EntityRecord{std::move(qid), std::move(label), std::move(title)});
    }
    return out;
}

SparqlClient::SparqlClient(HttpSession& session, std::string endpoint_url)
    : session_(session), endpoint_(std::move(endpoint_url)) {
    if (endpoint_.empty()) {
        if (const char* env = std::getenv("SPARQL_ENDPOINT"); env && *env) {
            endpoint_ = env;
        } else {
            endpoint_ = kDefaultEndpoint;
        }
    }
}

std::vector<EntityRecord> SparqlClient::run(const std::string& query_text,
                                            const SparqlBindingNames& names) const {
    const std::string url =
        endpoint_ + (endpoint_.find('?') == std::string::npos ? "?" : "&") +
        "query=" + util::url_encode_path_segment(query_text) + "&format=json";
    const std::string cache_key = HttpCache::make_key(endpoint_, query_text, "");
    const HttpResponse response = session_.get(
        url, {{"Accept", "application/sparql-results+json"}}, cache_key);
    if (!response.ok()) {
        throw TransportError("sparql: HTTP " + std::to_string(response.status) + " from " +
                             endpoint_);
    }
    return parse_sparql_entities(response.body, names);
}

}  // namespace newsignals::sources
