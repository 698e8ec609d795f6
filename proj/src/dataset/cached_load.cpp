#include "newsignals/dataset/cached_load.hpp"

#include <cctype>

#include <json.hpp>

#include "newsignals/dataset/archive.hpp"
#include "newsignals/sources/errors.hpp"
#include "newsignals/util/rng.hpp"

namespace newsignals::dataset {

namespace {

bool is_url(const std::string& location) {
    return location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

void trace(const CachedLoadOptions& options, const std::string& message) {
    if (options.log) options.log(message);
}

// ETag values arrive quoted and possibly weak ("W/"); reduce to a token that
// is safe as a file name.
std::string digest_token(std::string etag) {
    if (etag.rfind("W/", 0) == 0) etag.erase(0, 2);
    std::string out;
    for (char c : etag) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_') {
            out += c;
        }
    }
    return out;
}

std::filesystem::path resolve_cache_dir(const CachedLoadOptions& options) {
    if (!options.cache_dir.empty()) return options.cache_dir;
    if (auto root = sources::default_cache_dir()) return *root / "datasets";
    throw std::invalid_argument(
        "cached_load: no cache directory (set NEWS_SIGNALS_CACHE_DIR or pass one)");
}

std::string fetch_and_store(const std::string& url, const std::filesystem::path& dir,
                            const std::filesystem::path& index_path,
                            const CachedLoadOptions& options) {
    if (!options.session) {
        throw std::invalid_argument("cached_load: remote location needs an HTTP session");
    }
    trace(options, "downloading " + url);
    const auto response = options.session->get(url, {{"Accept", "application/octet-stream"}});
    if (!response.ok()) {
        throw sources::TransportError("cached_load: HTTP " + std::to_string(response.status) +
                                      " for " + url);
    }
    std::string blob_name = digest_token(response.header("etag").value_or(""));
    if (blob_name.empty()) blob_name = hex64(util::fnv1a(url));
    blob_name += ".tar.gz";

    std::filesystem::create_directories(dir);
    write_binary_file(dir / blob_name, response.body);
    const nlohmann::json index = {{"url", url}, {"blob", blob_name}};
    write_binary_file(index_path, index.dump(2) + "\n");
    return response.body;
}

}  // namespace

SignalsDataset cached_load(const std::string& path_or_url, const CachedLoadOptions& options) {
    if (!is_url(path_or_url)) {
        return load_dataset(path_or_url);
    }
    const std::filesystem::path dir = resolve_cache_dir(options);
    const std::filesystem::path index_path =
        dir / (hex64(util::fnv1a(path_or_url)) + ".url.json");

    if (std::filesystem::exists(index_path)) {
        std::filesystem::path blob_path;
        try {
            const auto index = nlohmann::json::parse(read_binary_file(index_path));
            blob_path = dir / index.at("blob").get<std::string>();
            if (std::filesystem::exists(blob_path)) {
                trace(options, "cache hit for " + path_or_url);
                return load_dataset_bytes(read_binary_file(blob_path));
            }
        } catch (const std::exception& e) {
            trace(options, std::string("corrupt cache entry (") + e.what() + "); refetching");
            if (!blob_path.empty()) std::filesystem::remove(blob_path);
            std::filesystem::remove(index_path);
        }
    }
    return load_dataset_bytes(fetch_and_store(path_or_url, dir, index_path, options));
}

}  // namespace newsignals::dataset
