#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

namespace ec {

enum class ErrorKind {
    Contradiction,
    SizeExceeded,
    NotACode,
    DivisionByZero,
    ZeroInput,
    NotStabilized,
    UnknownRow,
    NotInfinite,
    BadInput,
};

inline const char* errorKindName(ErrorKind k) {
    switch (k) {
        case ErrorKind::Contradiction: return "Contradiction";
        case ErrorKind::SizeExceeded: return "SizeExceeded";
        case ErrorKind::NotACode: return "NotACode";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::NotStabilized: return "NotStabilized";
        case ErrorKind::UnknownRow: return "UnknownRow";
        case ErrorKind::NotInfinite: return "NotInfinite";
        case ErrorKind::BadInput: return "BadInput";
    }
    return "Unknown";
}

// Domain error with a machine-checkable kind. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline std::ostream& operator<<(std::ostream& os, ErrorKind k) { return os << errorKindName(k); }

} // namespace ec
