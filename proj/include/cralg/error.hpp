#ifndef CRALG_ERROR_HPP
#define CRALG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cralg {

/// Every failure the library reports, as a closed set of codes.
enum class ErrorCode {
    ParseError,
    ZeroPolynomial,
    NotMonic,
    KOutOfRange,
    NotMonotone,
    EmptyInterval,
    BadInterval,
    NoSignChange,
    DerivativeVanishes,
    Unsupported,
    MissingVariable,
    NonLinearTerm,
    Multivariate,
    NotAUnitUpTo,
    HypothesisViolatedAt,
    PreconditionFailed,
    InconsistentWitness,
    OddValuation,
    LeadingNotASquare,
    UndeterminedSign,
    NotInvertibleUpTo,
    UnknownTheory,
    SchemaError,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::NonLinearTerm: return "NonLinearTerm";
    case ErrorCode::Multivariate: return "Multivariate";
    case ErrorCode::NotAUnitUpTo: return "NotAUnitUpTo";
    case ErrorCode::HypothesisViolatedAt: return "HypothesisViolatedAt";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InconsistentWitness: return "InconsistentWitness";
    case ErrorCode::OddValuation: return "OddValuation";
    case ErrorCode::LeadingNotASquare: return "LeadingNotASquare";
    case ErrorCode::UndeterminedSign: return "UndeterminedSign";
    case ErrorCode::NotInvertibleUpTo: return "NotInvertibleUpTo";
    case ErrorCode::UnknownTheory: return "UnknownTheory";
    case ErrorCode::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, long detail = -1)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    /// Index payload for codes that carry one (DerivativeVanishes(δ), HypothesisViolatedAt(k), ...).
    long detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    long detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what, long detail = -1) {
    throw Error(code, what, detail);
}

} // namespace cralg

#endif // CRALG_ERROR_HPP
