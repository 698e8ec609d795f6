#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "newsignals/core/signal.hpp"
#include "newsignals/dataset/config.hpp"
#include "newsignals/sources/news_source.hpp"
#include "newsignals/sources/pageviews.hpp"
#include "newsignals/sources/sparql.hpp"

namespace newsignals::dataset {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kArchiveFormatVersion = 1;

// Default full set; a titles-only release would keep {"id", "published_at",
// "title"}.
std::vector<std::string> default_document_fields();

struct DatasetMetadata {
    std::string name;
    core::Tick start;
    core::Tick end;
    std::string built_at;  // ISO timestamp; excluded from equality
    std::string tool_version = kToolVersion;
    std::vector<std::string> document_fields = default_document_fields();
};

// Uniform-date-range collection of signals keyed by qid.
class SignalsDataset {
public:
    SignalsDataset() = default;
    explicit SignalsDataset(DatasetMetadata metadata) : metadata_(std::move(metadata)) {}

    const DatasetMetadata& metadata() const { return metadata_; }
    DatasetMetadata& metadata() { return metadata_; }

    // Signal must be aligned to [metadata.start, metadata.end); qid unique.
    void add_signal(core::Signal signal);

    const std::map<std::string, core::Signal>& signals() const { return signals_; }
    const core::Signal& at(const std::string& qid) const;
    std::size_t size() const { return signals_.size(); }

    // built_at does not participate.
    bool operator==(const SignalsDataset& other) const;

private:
    DatasetMetadata metadata_;
    std::map<std::string, core::Signal> signals_;
};

struct BuildOptions {
    std::uint64_t seed = 0;
    int jobs = 4;
    bool strict = false;          // escalate per-entity fetch problems
    std::string built_at;         // pinned ISO timestamp; "" = now
    std::function<void(const std::string&)> warn;  // warning sink, may be empty
};

struct BuildSources {
    sources::NewsSource& news;
    sources::PageviewsClient* pageviews = nullptr;  // needed for that target only
    sources::SparqlClient* sparql = nullptr;        // needed for SPARQL entity specs only
};

// Resolves entities, then per entity populates a "stories" feed day by day,
// a news_volume series counting the full matching pool, and a
// wikimedia_pageviews series when requested. Per-entity fetch problems
// become warnings unless options.strict is set.
SignalsDataset build_dataset(const DatasetConfig& config, const BuildSources& sources,
                             const BuildOptions& options = {});

}  // namespace newsignals::dataset
