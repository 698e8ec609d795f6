#include "newsignals/sources/pageviews.hpp"

#include <json.hpp>

#include "newsignals/util/text.hpp"

namespace newsignals::sources {

namespace {

std::string compact_day(core::Tick t) {
    std::string iso = t.to_string();  // YYYY-MM-DD
    return iso.substr(0, 4) + iso.substr(5, 2) + iso.substr(8, 2) + "00";
}

core::Tick tick_from_compact(const std::string& stamp) {
    if (stamp.size() < 8) throw DecodeError("pageviews: bad timestamp '" + stamp + "'");
    return core::Tick::parse(stamp.substr(0, 4) + "-" + stamp.substr(4, 2) + "-" +
                             stamp.substr(6, 2));
}

}  // namespace

core::TimeSeries parse_pageviews(const std::string& json_body, const std::string& series_name,
                                 core::Tick start, core::Tick end,
                                 std::vector<core::Tick>* gap_log) {
    if (start >= end) throw std::invalid_argument("pageviews: start must precede end");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_body);
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("pageviews: payload is not JSON: ") + e.what());
    }
    const auto n = static_cast<std::size_t>(end - start);
    std::vector<double> values(n, 0.0);
    std::vector<bool> seen(n, false);
    try {
        for (const auto& item : doc.at("items")) {
            const core::Tick day = tick_from_compact(item.at("timestamp").get<std::string>());
            if (day < start || day >= end) continue;
            const auto i = static_cast<std::size_t>(day - start);
            values[i] = item.at("views").get<double>();
            seen[i] = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("pageviews: unexpected payload shape: ") + e.what());
    }
    if (gap_log) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!seen[i]) gap_log->push_back(start + static_cast<std::int64_t>(i));
        }
    }
    return core::TimeSeries(series_name, start, std::move(values));
}

PageviewsClient::PageviewsClient(HttpSession& session, std::string endpoint_base)
    : session_(session), endpoint_base_(std::move(endpoint_base)) {}

std::string PageviewsClient::request_url(const std::string& project,
                                         const std::string& article_title, core::Tick start,
                                         core::Tick end) const {
    return endpoint_base_ + "/metrics/pageviews/per-article/" + project +
           "/all-access/all-agents/" + util::url_encode_path_segment(article_title) + "/daily/" +
           compact_day(start) + "/" + compact_day(end - 1);
}

core::TimeSeries PageviewsClient::fetch(const std::string& project,
                                        const std::string& article_title, core::Tick start,
                                        core::Tick end, std::vector<core::Tick>* gap_log) const {
    if (start >= end) throw std::invalid_argument("pageviews: start must precede end");
    const std::string url = request_url(project, article_title, start, end);
    const std::string cache_key = HttpCache::make_key(
        endpoint_base_, project + "/" + article_title, start.to_string() + "/" + end.to_string());
    const HttpResponse response =
        session_.get(url, {{"Accept", "application/json"}}, cache_key);
    if (response.status == 404) {
        throw NotFoundError("pageviews: unknown article '" + article_title + "' on " + project);
    }
    if (!response.ok()) {
        throw TransportError("pageviews: HTTP " + std::to_string(response.status) + " for " + url);
    }
    return parse_pageviews(response.body, "wikimedia_pageviews", start, end, gap_log);
}

}  // namespace newsignals::sources
