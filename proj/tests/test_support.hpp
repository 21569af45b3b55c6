#pragma once

// Shared helpers for the unit tests: error-code capture and a few word
// builders used across modules.

#include "nubshift/errors.hpp"

#include <functional>
#include <optional>

namespace nubshift::testing {

/// Runs fn and reports the Errc it threw, or nullopt if it returned.
inline std::optional<Errc> thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace nubshift::testing
