#pragma once

#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <string>

namespace newsignals::sources {

// Per-host pacing: at most max_in_flight concurrent requests overall and at
// least min_spacing between consecutive requests to the same host.
class HostPacer {
public:
    explicit HostPacer(std::chrono::milliseconds min_spacing = std::chrono::milliseconds(100),
                       int max_in_flight = 4);

    class Slot {
    public:
        Slot(Slot&& other) noexcept;
        Slot(const Slot&) = delete;
        ~Slot();

    private:
        friend class HostPacer;
        explicit Slot(HostPacer* pacer) : pacer_(pacer) {}
        HostPacer* pacer_;
    };

    // Blocks until a slot is free and the host spacing has elapsed.
    Slot acquire(const std::string& host);

private:
    void release();

    std::chrono::milliseconds min_spacing_;
    int max_in_flight_;
    int in_flight_ = 0;
    std::mutex mutex_;
    std::condition_variable slot_free_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_allowed_;
};

}  // namespace newsignals::sources
