#pragma once

#include <stdexcept>
#include <string>

namespace diffcomp {

enum class ErrorKind {
    Domain,
    SizeCap,
    Parse,
    DimensionMismatch,
    DivisionByZero,
    Singular,
    InvalidRelabelling,
    NotHomogeneous,
    NotApplicable,
    ModelViolation,
    InternalInconsistency,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace diffcomp
