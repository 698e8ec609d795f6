#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "newsignals/sources/errors.hpp"

namespace newsignals::sources {

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{200};
    std::chrono::milliseconds max_delay{5000};
    double jitter_fraction = 0.1;  // in [0, 1]

    void validate() const;
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::map<std::string, std::string> headers;  // keys lowercased

    std::optional<std::string> header(const std::string& name) const;
    bool ok() const { return status >= 200 && status < 300; }
};

// A single request attempt; throws TransportError on connection failure.
using RequestFn = std::function<HttpResponse()>;
using SleepFn = std::function<void(std::chrono::milliseconds)>;

// Retries transport errors and HTTP 429/5xx with exponential backoff
// (min(max_delay, base * 2^k), +/- jitter), honoring Retry-After when the
// server sends one. Any other status is returned to the caller after a
// single request. Exhausting max_attempts raises TransportError carrying
// the attempt count.
HttpResponse with_retry(const RetryPolicy& policy, const RequestFn& request,
                        const SleepFn& sleep = {}, std::uint64_t jitter_seed = 0);

}  // namespace newsignals::sources
