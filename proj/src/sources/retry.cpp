#include "newsignals/sources/retry.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "newsignals/util/rng.hpp"
#include "newsignals/util/text.hpp"

namespace newsignals::sources {

void RetryPolicy::validate() const {
    if (max_attempts < 1) throw std::invalid_argument("retry: max_attempts must be >= 1");
    if (base_delay.count() <= 0 || max_delay.count() <= 0) {
        throw std::invalid_argument("retry: delays must be positive");
    }
    if (jitter_fraction < 0.0 || jitter_fraction > 1.0) {
        throw std::invalid_argument("retry: jitter_fraction must be in [0, 1]");
    }
}

std::optional<std::string> HttpResponse::header(const std::string& name) const {
    const auto it = headers.find(util::to_lower(name));
    if (it == headers.end()) return std::nullopt;
    return it->second;
}

namespace {

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt,
                                        util::SplitMix64& rng) {
    const double base = static_cast<double>(policy.base_delay.count()) * std::pow(2.0, attempt);
    double delay = std::min(base, static_cast<double>(policy.max_delay.count()));
    if (policy.jitter_fraction > 0.0) {
        const double jitter = (2.0 * rng.next_double() - 1.0) * policy.jitter_fraction * delay;
        delay = std::max(0.0, delay + jitter);
    }
    return std::chrono::milliseconds(static_cast<long long>(delay));
}

std::optional<std::chrono::milliseconds> retry_after(const HttpResponse& r) {
    const auto v = r.header("retry-after");
    if (!v) return std::nullopt;
    try {
        return std::chrono::milliseconds(
            static_cast<long long>(util::parse_double(util::trim(*v)) * 1000.0));
    } catch (const std::exception&) {
        return std::nullopt;  // HTTP-date form is not supported; fall back to backoff
    }
}

}  // namespace

HttpResponse with_retry(const RetryPolicy& policy, const RequestFn& request, const SleepFn& sleep,
                        std::uint64_t jitter_seed) {
    policy.validate();
    const SleepFn do_sleep =
        sleep ? sleep : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    util::SplitMix64 rng(jitter_seed);

    std::string last_error;
    for (int attempt = 0; attempt < policy.max_attempts; ++attempt) {
        std::optional<HttpResponse> response;
        try {
            response = request();
        } catch (const TransportError& e) {
            last_error = e.what();
        }
        if (response) {
            if (!retryable_status(response->status)) return *response;
            last_error = "HTTP " + std::to_string(response->status);
        }
        if (attempt + 1 < policy.max_attempts) {
            auto delay = backoff_delay(policy, attempt, rng);
            if (response) {
                if (const auto ra = retry_after(*response)) delay = *ra;
            }
            do_sleep(delay);
        }
    }
    throw TransportError("request failed after " + std::to_string(policy.max_attempts) +
                         " attempts: " + last_error);
}

}  // namespace newsignals::sources
