#include "newsignals/core/feed.hpp"

#include <algorithm>
#include <stdexcept>

namespace newsignals::core {

Feed::Feed(std::string name, Tick start, Tick end) : name_(std::move(name)) {
    set_range(start, end);
}

Feed& Feed::add(Document doc) {
    if (doc.id.empty()) throw std::invalid_argument("document with empty id in feed '" + name_ + "'");
    const Tick t = doc.day();
    if (range_ && (t < range_->first || t >= range_->second)) {
        throw std::invalid_argument("document " + doc.id + " published " + t.to_string() +
                                    " outside feed '" + name_ + "' range");
    }
    auto& bucket = buckets_[t];
    for (const auto& existing : bucket) {
        if (existing.id == doc.id) {
            throw std::invalid_argument("duplicate document id '" + doc.id + "' in bucket " +
                                        t.to_string() + " of feed '" + name_ + "'");
        }
    }
    bucket.push_back(std::move(doc));
    return *this;
}

void Feed::set_range(Tick start, Tick end) {
    if (start >= end) throw std::invalid_argument("feed '" + name_ + "': start must precede end");
    if (!buckets_.empty() &&
        (buckets_.begin()->first < start || std::prev(buckets_.end())->first >= end)) {
        throw std::invalid_argument("feed '" + name_ + "': range excludes existing buckets");
    }
    range_ = {start, end};
}

Tick Feed::start() const {
    if (range_) return range_->first;
    if (buckets_.empty()) throw std::logic_error("feed '" + name_ + "' has no span");
    return buckets_.begin()->first;
}

Tick Feed::end() const {
    if (range_) return range_->second;
    if (buckets_.empty()) throw std::logic_error("feed '" + name_ + "' has no span");
    return std::prev(buckets_.end())->first + 1;
}

const std::vector<Document>& Feed::bucket(Tick t) const {
    static const std::vector<Document> kEmpty;
    const auto it = buckets_.find(t);
    return it == buckets_.end() ? kEmpty : it->second;
}

std::size_t Feed::total_documents() const {
    std::size_t n = 0;
    for (const auto& [tick, docs] : buckets_) n += docs.size();
    return n;
}

Feed Feed::sliced(Tick slice_start, Tick slice_end) const {
    const bool spanned = range_ || !buckets_.empty();
    Tick s = slice_start, e = slice_end;
    if (spanned) {
        s = std::max(s, start());
        e = std::min(e, end());
    }
    Feed out(name_);
    if (s < e) {
        out.range_ = {s, e};
        for (const auto& [tick, docs] : buckets_) {
            if (tick >= s && tick < e) out.buckets_.emplace(tick, docs);
        }
    } else {
        // Degenerate clip: an empty feed with no span.
    }
    return out;
}

Feed Feed::aligned_to(Tick start, Tick end) const {
    Feed out = sliced(start, end);
    out.range_ = {start, end};
    for (Tick t = start; t < end; ++t) out.buckets_.try_emplace(t);
    return out;
}

bool Feed::operator==(const Feed& other) const {
    if (name_ != other.name_ || range_ != other.range_) return false;
    auto a = buckets_.begin();
    auto b = other.buckets_.begin();
    while (true) {
        while (a != buckets_.end() && a->second.empty()) ++a;
        while (b != other.buckets_.end() && b->second.empty()) ++b;
        if (a == buckets_.end() || b == other.buckets_.end()) {
            return a == buckets_.end() && b == other.buckets_.end();
        }
        if (a->first != b->first || a->second != b->second) return false;
        ++a;
        ++b;
    }
}

}  // namespace newsignals::core
