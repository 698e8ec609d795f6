#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "newsignals/dataset/dataset.hpp"
#include "newsignals/sources/http.hpp"

namespace newsignals::dataset {

struct CachedLoadOptions {
    std::filesystem::path cache_dir;  // "" = $NEWS_SIGNALS_CACHE_DIR/datasets
    sources::HttpSession* session = nullptr;  // required for http(s) locations
    std::function<void(const std::string&)> log;  // optional trace sink
};

// Local paths load directly. URLs are downloaded once into the cache —
// keyed by the server's ETag when it sends one, by the URL otherwise — and
// later calls are served from disk without network I/O. A corrupt cache
// entry is discarded and fetched again once.
SignalsDataset cached_load(const std::string& path_or_url,
                           const CachedLoadOptions& options = {});

}  // namespace newsignals::dataset
