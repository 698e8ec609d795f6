#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "newsignals/sources/rate_limit.hpp"
#include "newsignals/sources/retry.hpp"

namespace newsignals::sources {

struct ParsedUrl {
    std::string scheme;
    std::string host;
    int port = 0;  // 0 = scheme default
    std::string target;  // path + query, begins with '/'

    std::string origin() const;  // "scheme://host[:port]"
};

ParsedUrl parse_url(const std::string& url);

using HeaderList = std::vector<std::pair<std::string, std::string>>;

// One attempt; implementations throw TransportError on connection failure.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual HttpResponse get(const std::string& url, const HeaderList& headers) = 0;
};

// cpp-httplib backed client.
class HttplibClient : public HttpClient {
public:
    explicit HttplibClient(std::chrono::seconds timeout = std::chrono::seconds(30));
    HttpResponse get(const std::string& url, const HeaderList& headers) override;

private:
    std::chrono::seconds timeout_;
};

// Disk cache of raw successful responses, keyed by caller-supplied strings.
class HttpCache {
public:
    explicit HttpCache(std::filesystem::path dir);

    std::optional<HttpResponse> lookup(const std::string& key) const;
    void store(const std::string& key, const HttpResponse& response) const;

    static std::string make_key(std::string_view endpoint, std::string_view query,
                                std::string_view date_range);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path entry_path(const std::string& key) const;
    std::filesystem::path dir_;
};

// Client + retry + per-host pacing + optional response cache. This is the
// handle the higher-level API clients share.
class HttpSession {
public:
    struct Options {
        RetryPolicy retry;
        std::chrono::milliseconds host_spacing{100};
        int max_in_flight = 4;
        std::optional<std::filesystem::path> cache_dir;  // empty = no caching
    };

    HttpSession();
    explicit HttpSession(Options options, std::shared_ptr<HttpClient> client = nullptr);

    // cache_key == "" disables caching for this request.
    HttpResponse get(const std::string& url, const HeaderList& headers = {},
                     const std::string& cache_key = {});

    const Options& options() const { return options_; }

private:
    Options options_;
    std::shared_ptr<HttpClient> client_;
    HostPacer pacer_;
    std::optional<HttpCache> cache_;
};

// NEWS_SIGNALS_CACHE_DIR when set, otherwise nullopt.
std::optional<std::filesystem::path> default_cache_dir();

}  // namespace newsignals::sources
