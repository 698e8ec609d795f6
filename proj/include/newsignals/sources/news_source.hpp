#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "newsignals/core/document.hpp"
#include "newsignals/core/tick.hpp"
#include "newsignals/sources/entity.hpp"

namespace newsignals::sources {

struct NewsQuery {
    EntityRecord entity;
    core::Tick tick;
    int limit = 20;
};

// Where stories come from. The shipped backend reads a local JSONL corpus;
// API-backed implementations plug in behind the same surface.
class NewsSource {
public:
    virtual ~NewsSource() = default;

    // At most q.limit documents, each bucketable to q.tick. Order is
    // sampling order. Unknown entities yield an empty list.
    virtual std::vector<core::Document> fetch_stories(const NewsQuery& q) = 0;

    // Size of the full matching pool for (entity, day) — not capped by any
    // sampling limit.
    virtual std::size_t story_count(const std::string& qid, core::Tick tick) const = 0;
};

// JSONL corpus, one document per line:
//   {"id": ..., "published_at": ..., "title": ..., "body"?: ...,
//    "entity_ids": ["Q..."], "metadata"?: {...}}
// Sampling is uniform without replacement and keyed on (seed, qid, day), so
// results do not depend on request order.
class LocalCorpusSource : public NewsSource {
public:
    explicit LocalCorpusSource(const std::filesystem::path& jsonl_path, std::uint64_t seed = 0);

    std::vector<core::Document> fetch_stories(const NewsQuery& q) override;
    std::size_t story_count(const std::string& qid, core::Tick tick) const override;

    std::size_t total_documents() const { return documents_.size(); }
    const std::vector<std::string>& log() const { return log_; }

private:
    std::vector<core::Document> documents_;
    std::map<std::string, std::map<core::Tick, std::vector<std::size_t>>> index_;
    std::uint64_t seed_;
    std::vector<std::string> log_;
};

}  // namespace newsignals::sources
