#include "diffcomp/error.hpp"

namespace diffcomp {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::SizeCap: return "size cap exceeded";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
        case ErrorKind::DivisionByZero: return "division by zero";
        case ErrorKind::Singular: return "singular input";
        case ErrorKind::InvalidRelabelling: return "invalid relabelling";
        case ErrorKind::NotHomogeneous: return "not homogeneous";
        case ErrorKind::NotApplicable: return "not applicable";
        case ErrorKind::ModelViolation: return "model violation";
        case ErrorKind::InternalInconsistency: return "internal inconsistency";
    }
    return "error";
}

}  // namespace diffcomp
