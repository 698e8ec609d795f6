#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsignals/core/document.hpp"
#include "newsignals/core/tick.hpp"

namespace newsignals::core {

// Time-indexed buckets of documents. Buckets keep insertion (sampling) order.
// A feed may carry an explicit half-open range so that days without
// documents are distinguishable from days outside the feed.
class Feed {
public:
    explicit Feed(std::string name) : name_(std::move(name)) {}
    Feed(std::string name, Tick start, Tick end);

    const std::string& name() const { return name_; }

    // Buckets by the document's UTC day; id must be unique within the bucket.
    Feed& add(Document doc);

    void set_range(Tick start, Tick end);
    bool has_range() const { return range_.has_value(); }

    // Explicit range if set, else the span [min bucket, max bucket + 1).
    // A feed with no range and no buckets has no span at all.
    Tick start() const;
    Tick end() const;
    bool empty() const { return buckets_.empty(); }

    const std::map<Tick, std::vector<Document>>& buckets() const { return buckets_; }
    const std::vector<Document>& bucket(Tick t) const;
    std::size_t total_documents() const;

    Feed sliced(Tick slice_start, Tick slice_end) const;

    // Clips to [start, end) and materializes empty buckets for covered ticks.
    Feed aligned_to(Tick start, Tick end) const;

    // Value equality over name, range, and documents; materialized-but-empty
    // buckets are not distinguishable from absent ones.
    bool operator==(const Feed& other) const;

private:
    std::string name_;
    std::optional<std::pair<Tick, Tick>> range_;
    std::map<Tick, std::vector<Document>> buckets_;
};

}  // namespace newsignals::core
