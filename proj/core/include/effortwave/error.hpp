#pragma once

#include <stdexcept>
#include <string>

namespace effortwave {

enum class ErrorKind {
    Parse,       // malformed file
    Schema,      // well-formed but missing or invalid fields
    Ordering,    // non-monotonic timestamps
    Validation,  // bad parameter or configuration
    Io,
    Numerical,   // non-finite intermediate or out-of-domain value
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit status for an error kind: 2 validation, 3 I/O, 4 numerical.
[[nodiscard]] constexpr int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Io:
            return 3;
        case ErrorKind::Numerical:
            return 4;
        default:
            return 2;
    }
}

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

}  // namespace effortwave
