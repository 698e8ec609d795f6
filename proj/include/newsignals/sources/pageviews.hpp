#pragma once

#include <string>
#include <vector>

#include "newsignals/core/time_series.hpp"
#include "newsignals/sources/http.hpp"

namespace newsignals::sources {

// Per-article daily pageviews, REST endpoint shape:
//   {base}/metrics/pageviews/per-article/{project}/all-access/all-agents/
//     {article}/daily/{YYYYMMDD00}/{YYYYMMDD00}
// The remote range is inclusive of its end day; [start, end) maps to
// {start .. end-1}. Days missing from the response are zero-filled and
// recorded in the gap log.
class PageviewsClient {
public:
    static constexpr const char* kDefaultEndpoint = "https://wikimedia.org/api/rest_v1";

    explicit PageviewsClient(HttpSession& session, std::string endpoint_base = kDefaultEndpoint);

    core::TimeSeries fetch(const std::string& project, const std::string& article_title,
                           core::Tick start, core::Tick end,
                           std::vector<core::Tick>* gap_log = nullptr) const;

    std::string request_url(const std::string& project, const std::string& article_title,
                            core::Tick start, core::Tick end) const;

private:
    HttpSession& session_;
    std::string endpoint_base_;
};

// Parses a pageviews JSON payload into a series over [start, end).
// Exposed separately so recorded fixtures can be checked bit-exactly.
core::TimeSeries parse_pageviews(const std::string& json_body, const std::string& series_name,
                                 core::Tick start, core::Tick end,
                                 std::vector<core::Tick>* gap_log = nullptr);

}  // namespace newsignals::sources
