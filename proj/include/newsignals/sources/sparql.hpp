#pragma once

#include <string>
#include <vector>

#include "newsignals/sources/entity.hpp"
#include "newsignals/sources/http.hpp"

namespace newsignals::sources {

// Names of the SELECT variables entity fields are read from.
struct SparqlBindingNames {
    std::string entity = "item";    // IRI or bare QID
    std::string label = "itemLabel";
    std::string title = "article";  // sitelink URL or literal title
};

// Parses application/sparql-results+json into entity records. QIDs come
// from the IRI tail; duplicates are dropped keeping the first occurrence.
std::vector<EntityRecord> parse_sparql_entities(const std::string& json_body,
                                                const SparqlBindingNames& names = {});

class SparqlClient {
public:
    static constexpr const char* kDefaultEndpoint = "https://query.wikidata.org/sparql";

    // endpoint_url == "" falls back to $SPARQL_ENDPOINT, then the default.
    explicit SparqlClient(HttpSession& session, std::string endpoint_url = {});

    std::vector<EntityRecord> run(const std::string& query_text,
                                  const SparqlBindingNames& names = {}) const;

    const std::string& endpoint() const { return endpoint_; }

private:
    HttpSession& session_;
    std::string endpoint_;
};

}  // namespace newsignals::sources
