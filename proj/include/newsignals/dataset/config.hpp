#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newsignals/core/tick.hpp"
#include "newsignals/sources/entity.hpp"

namespace newsignals::dataset {

enum class TargetKind { news_volume, wikimedia_pageviews };

std::string to_string(TargetKind kind);
TargetKind target_from_string(const std::string& name);

struct NewsSourceSpec {
    std::string backend;  // "local_corpus"
    std::filesystem::path path;
};

struct EntitySpec {
    std::vector<sources::EntityRecord> inline_entities;
    std::optional<std::filesystem::path> sparql_query_path;
};

struct DatasetConfig {
    std::string name;
    core::Tick start;
    core::Tick end;  // exclusive
    EntitySpec entities;
    NewsSourceSpec news_source;
    int stories_per_day = 20;
    std::vector<TargetKind> targets;
    std::filesystem::path output;

    std::string wikimedia_project = "en.wikipedia";
    std::optional<std::string> wikimedia_endpoint;  // endpoint override
    std::optional<std::string> sparql_endpoint;
};

// Carries every schema violation found, one per line.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::vector<std::string>& problems);
    std::vector<std::string> problems;
};

// Validates, applies defaults, rejects unknown keys. All violations are
// reported at once.
DatasetConfig parse_config(const std::string& yaml_text);

// Reads the file and resolves relative paths against its directory.
DatasetConfig load_config(const std::filesystem::path& path);

}  // namespace newsignals::dataset
