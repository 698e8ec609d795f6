#include "newsignals/sources/rate_limit.hpp"

#include <stdexcept>
#include <thread>

namespace newsignals::sources {

HostPacer::HostPacer(std::chrono::milliseconds min_spacing, int max_in_flight)
    : min_spacing_(min_spacing), max_in_flight_(max_in_flight) {
    if (max_in_flight < 1) throw std::invalid_argument("pacer: max_in_flight must be >= 1");
    if (min_spacing.count() < 0) throw std::invalid_argument("pacer: spacing must be >= 0");
}

HostPacer::Slot::Slot(Slot&& other) noexcept : pacer_(other.pacer_) { other.pacer_ = nullptr; }

HostPacer::Slot::~Slot() {
    if (pacer_) pacer_->release();
}

HostPacer::Slot HostPacer::acquire(const std::string& host) {
    std::unique_lock lock(mutex_);
    slot_free_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;

    // Reserve the host's next send time, then sleep outside the lock so other
    // hosts are not blocked by this one's spacing.
    const auto now = std::chrono::steady_clock::now();
    auto& next = next_allowed_[host];
    const auto send_at = next > now ? next : now;
    next = send_at + min_spacing_;
    lock.unlock();

    if (send_at > now) std::this_thread::sleep_until(send_at);
    return Slot(this);
}

void HostPacer::release() {
    {
        std::lock_guard lock(mutex_);
        --in_flight_;
    }
    slot_free_.notify_one();
}

}  // namespace newsignals::sources
