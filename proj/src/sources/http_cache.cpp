#include <fstream>
#include <sstream>

#include <json.hpp>

#include "newsignals/sources/http.hpp"
#include "newsignals/util/rng.hpp"

namespace newsignals::sources {

namespace {

std::string hash_name(const std::string& key) {
    // Two passes make accidental 64-bit collisions a non-issue; the stored
    // key is still verified on lookup.
    char buf[36];
    std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                  static_cast<unsigned long long>(util::fnv1a(key)),
                  static_cast<unsigned long long>(util::fnv1a(key + "#2")));
    return buf;
}

}  // namespace

HttpCache::HttpCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path HttpCache::entry_path(const std::string& key) const {
    return dir_ / (hash_name(key) + ".json");
}

std::optional<HttpResponse> HttpCache::lookup(const std::string& key) const {
    const auto path = entry_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    try {
        const auto doc = nlohmann::json::parse(in);
        if (doc.at("key").get<std::string>() != key) return std::nullopt;
        HttpResponse r;
        r.status = doc.at("status").get<int>();
        r.body = doc.at("body").get<std::string>();
        for (const auto& [k, v] : doc.at("headers").items()) r.headers[k] = v.get<std::string>();
        return r;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries behave like misses
    }
}

void HttpCache::store(const std::string& key, const HttpResponse& response) const {
    nlohmann::json doc;
    doc["key"] = key;
    doc["status"] = response.status;
    doc["body"] = response.body;
    doc["headers"] = response.headers;
    std::ofstream out(entry_path(key), std::ios::binary);
    out << doc.dump();
}

std::string HttpCache::make_key(std::string_view endpoint, std::string_view query,
                                std::string_view date_range) {
    std::string key;
    key.reserve(endpoint.size() + query.size() + date_range.size() + 2);
    key.append(endpoint).push_back('\x1f');
    key.append(query).push_back('\x1f');
    key.append(date_range);
    return key;
}

std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* env = std::getenv("NEWS_SIGNALS_CACHE_DIR"); env && *env) {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

}  // namespace newsignals::sources
