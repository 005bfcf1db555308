#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
    invalid_argument,      // precondition violated by the caller
    out_of_range,          // input exceeds a table or sieve limit
    no_inverse,            // modular inverse requested for a non-unit
    budget,                // work or memory budget exceeded
    internal_consistency,  // two evaluation routes disagree
    accuracy,              // quadrature self-check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::out_of_range:
    case ErrorKind::no_inverse:
        return 1;
    case ErrorKind::budget:
        return 2;
    case ErrorKind::internal_consistency:
        return 3;
    case ErrorKind::accuracy:
        return 4;
    }
    return 1;
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace mordell
