#pragma once

#include <stdexcept>
#include <string>

namespace spiegel {

enum class ErrorKind {
    EisensteinFailure,
    SizeBound,
    NotInvertible,
    PoleAtQ,
    TruncationTooShort,
    NotIntegralAfterClear,
    RankDeficit,
    NotAUnit,
    OracleMismatch,
    WitnessNotFound,
    TheoremViolation,
    FiltrationMismatch,
    DimensionMismatch,
    SymmetryViolation,
    NotIntegral,
    InvalidInput,
};

const char* error_kind_name(ErrorKind k);

/// True for kinds that signal a falsified mathematical claim rather than an
/// internal inconsistency.
inline bool is_falsification(ErrorKind k) {
    return k == ErrorKind::TheoremViolation || k == ErrorKind::FiltrationMismatch ||
           k == ErrorKind::DimensionMismatch;
}

class SpiegelError : public std::runtime_error {
public:
    SpiegelError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::EisensteinFailure: return "EisensteinFailure";
    case ErrorKind::SizeBound: return "SizeBound";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::PoleAtQ: return "PoleAtQ";
    case ErrorKind::TruncationTooShort: return "TruncationTooShort";
    case ErrorKind::NotIntegralAfterClear: return "NotIntegralAfterClear";
    case ErrorKind::RankDeficit: return "RankDeficit";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::FiltrationMismatch: return "FiltrationMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace spiegel
