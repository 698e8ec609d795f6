#pragma once

#include <stdexcept>
#include <string>

namespace newsignals::sources {

struct SourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Connection-level failures and retry exhaustion.
struct TransportError : SourceError {
    using SourceError::SourceError;
};

// The remote knows the resource does not exist (HTTP 404).
struct NotFoundError : SourceError {
    using SourceError::SourceError;
};

// Payload arrived but could not be interpreted.
struct DecodeError : SourceError {
    using SourceError::SourceError;
};

}  // namespace newsignals::sources
