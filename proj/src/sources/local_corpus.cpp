#include <fstream>

#include <json.hpp>

#include "newsignals/sources/errors.hpp"
#include "newsignals/sources/news_source.hpp"
#include "newsignals/util/rng.hpp"

namespace newsignals::sources {

namespace {

core::Document document_from_json(const nlohmann::json& doc) {
    core::Document d;
    d.id = doc.at("id").get<std::string>();
    d.published_at = core::parse_timestamp(doc.at("published_at").get<std::string>());
    d.title = doc.at("title").get<std::string>();
    if (const auto it = doc.find("body"); it != doc.end() && !it->is_null()) {
        d.body = it->get<std::string>();
    }
    if (const auto it = doc.find("metadata"); it != doc.end() && !it->is_null()) {
        for (const auto& [k, v] : it->items()) d.metadata[k] = v.get<std::string>();
    }
    return d;
}

}  // namespace

LocalCorpusSource::LocalCorpusSource(const std::filesystem::path& jsonl_path, std::uint64_t seed)
    : seed_(seed) {
    std::ifstream in(jsonl_path, std::ios::binary);
    if (!in) throw DecodeError("corpus: cannot open " + jsonl_path.string());

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
            const std::size_t index = documents_.size();
            documents_.push_back(document_from_json(doc));
            const core::Tick day = documents_.back().day();
            for (const auto& qid : doc.at("entity_ids")) {
                index_[qid.get<std::string>()][day].push_back(index);
            }
        } catch (const std::exception& e) {
            throw DecodeError("corpus: " + jsonl_path.string() + " line " +
                              std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::vector<core::Document> LocalCorpusSource::fetch_stories(const NewsQuery& q) {
    if (q.limit < 1) throw std::invalid_argument("fetch_stories: limit must be >= 1");
    const auto entity_it = index_.find(q.entity.qid);
    if (entity_it == index_.end()) {
        log_.push_back("unknown entity " + q.entity.qid);
        return {};
    }
    const auto day_it = entity_it->second.find(q.tick);
    if (day_it == entity_it->second.end()) return {};

    const auto& pool = day_it->second;
    const auto want = static_cast<std::size_t>(q.limit);
    std::vector<core::Document> out;
    if (pool.size() <= want) {
        out.reserve(pool.size());
        for (std::size_t i : pool) out.push_back(documents_[i]);
        return out;
    }
    util::SplitMix64 rng(util::derive_seed(
        seed_, util::fnv1a(q.entity.qid) ^ static_cast<std::uint64_t>(q.tick.day_number())));
    out.reserve(want);
    for (std::size_t i : util::sample_without_replacement(pool.size(), want, rng)) {
        out.push_back(documents_[pool[i]]);
    }
    return out;
}

std::size_t LocalCorpusSource::story_count(const std::string& qid, core::Tick tick) const {
    const auto entity_it = index_.find(qid);
    if (entity_it == index_.end()) return 0;
    const auto day_it = entity_it->second.find(tick);
    return day_it == entity_it->second.end() ? 0 : day_it->second.size();
}

}  // namespace newsignals::sources
