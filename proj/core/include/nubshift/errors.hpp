#pragma once

#include <stdexcept>
#include <string>

namespace nubshift {

/// Failure categories surfaced by the library. Every throw site uses one of
/// these so callers (and the CLI exit-code mapping) can branch on the kind
/// without parsing messages.
enum class Errc {
    InvalidOrder,
    InvalidAction,
    FieldMismatch,
    AlphabetMismatch,
    WidthExceeded,
    NotLinear,
    NotTransitive,
    FiniteGroupShift,
    PreconditionFailed,
    Unsupported,
    UnsupportedQuotient,
    TrivialKernel,
    NotFinite,
    InternalInconsistency,
    InvalidDescriptor,
    TrivialGroup,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// Internal sanity check. Unlike assert() this stays on in release builds;
/// an exact algorithm that detects its own disagreement must not return.
inline void require_internal(bool ok, const std::string& what) {
    if (!ok) fail(Errc::InternalInconsistency, what);
}

} // namespace nubshift
