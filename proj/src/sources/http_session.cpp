#include <httplib.h>

#include "newsignals/sources/http.hpp"
#include "newsignals/util/rng.hpp"
#include "newsignals/util/text.hpp"

namespace newsignals::sources {

std::string ParsedUrl::origin() const {
    std::string out = scheme + "://" + host;
    if (port != 0) out += ":" + std::to_string(port);
    return out;
}

ParsedUrl parse_url(const std::string& url) {
    ParsedUrl p;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw std::invalid_argument("bad url: '" + url + "'");
    p.scheme = url.substr(0, scheme_end);
    const auto rest = url.substr(scheme_end + 3);
    const auto path_start = rest.find('/');
    std::string authority = path_start == std::string::npos ? rest : rest.substr(0, path_start);
    p.target = path_start == std::string::npos ? "/" : rest.substr(path_start);
    const auto colon = authority.rfind(':');
    if (colon != std::string::npos) {
        p.port = std::stoi(authority.substr(colon + 1));
        authority = authority.substr(0, colon);
    }
    p.host = authority;
    if (p.host.empty()) throw std::invalid_argument("bad url: '" + url + "'");
    return p;
}

HttplibClient::HttplibClient(std::chrono::seconds timeout) : timeout_(timeout) {}

HttpResponse HttplibClient::get(const std::string& url, const HeaderList& headers) {
    const ParsedUrl parsed = parse_url(url);
    httplib::Client client(parsed.origin());
    client.set_connection_timeout(timeout_.count(), 0);
    client.set_read_timeout(timeout_.count(), 0);
    client.set_follow_location(true);

    httplib::Headers hl;
    for (const auto& [k, v] : headers) hl.emplace(k, v);

    const auto result = client.Get(parsed.target, hl);
    if (!result) {
        throw TransportError("GET " + url + ": " + httplib::to_string(result.error()));
    }
    HttpResponse out;
    out.status = result->status;
    out.body = result->body;
    for (const auto& [k, v] : result->headers) out.headers[util::to_lower(k)] = v;
    return out;
}

HttpSession::HttpSession() : HttpSession(Options{}) {}

HttpSession::HttpSession(Options options, std::shared_ptr<HttpClient> client)
    : options_(std::move(options)),
      client_(client ? std::move(client) : std::make_shared<HttplibClient>()),
      pacer_(options_.host_spacing, options_.max_in_flight) {
    if (options_.cache_dir) cache_.emplace(*options_.cache_dir / "http");
}

HttpResponse HttpSession::get(const std::string& url, const HeaderList& headers,
                              const std::string& cache_key) {
    if (cache_ && !cache_key.empty()) {
        if (auto hit = cache_->lookup(cache_key)) return *hit;
    }
    const std::string host = parse_url(url).host;
    const auto response = with_retry(
        options_.retry,
        [&] {
            auto slot = pacer_.acquire(host);
            return client_->get(url, headers);
        },
        {}, util::fnv1a(url));
    if (cache_ && !cache_key.empty() && response.ok()) cache_->store(cache_key, response);
    return response;
}

}  // namespace newsignals::sources
