#include "effortwave/error.hpp"

namespace effortwave {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse:
            return "parse error";
        case ErrorKind::Schema:
            return "schema error";
        case ErrorKind::Ordering:
            return "ordering error";
        case ErrorKind::Validation:
            return "validation error";
        case ErrorKind::Io:
            return "I/O error";
        case ErrorKind::Numerical:
            return "numerical error";
    }
    return "error";
}

}  // namespace effortwave
