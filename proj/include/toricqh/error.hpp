#ifndef TORICQH_ERROR_HPP
#define TORICQH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricqh {

/// Every domain failure the engine can report. The CLI maps these to exit code 1.
enum class ErrorKind {
    Parse,
    Unbounded,
    NotFullDimensional,
    NotSimple,
    NotSmooth,
    NonPrimitiveNormal,
    RedundantFacet,
    NonIntegralCoefficient,
    NonPositiveEnergy,
    CutoffMismatch,
    ZeroElement,
    NotAUnit,
    WrongDegree,
    NonGenericVector,
    RestrictionNotResolved,
    BadCorrectionValuation,
    BadCorrectionDegree,
    ZeroVector,
    InconsistentWeights,
    InvariantMismatch,
    MissingYEntry,
    NoEligibleVertex,
    DictionaryIncomplete,
    InvalidArgument,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NonPrimitiveNormal: return "NonPrimitiveNormal";
    case ErrorKind::RedundantFacet: return "RedundantFacet";
    case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorKind::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorKind::CutoffMismatch: return "CutoffMismatch";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::NonGenericVector: return "NonGenericVector";
    case ErrorKind::RestrictionNotResolved: return "RestrictionNotResolved";
    case ErrorKind::BadCorrectionValuation: return "BadCorrectionValuation";
    case ErrorKind::BadCorrectionDegree: return "BadCorrectionDegree";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InconsistentWeights: return "InconsistentWeights";
    case ErrorKind::InvariantMismatch: return "InvariantMismatch";
    case ErrorKind::MissingYEntry: return "MissingYEntry";
    case ErrorKind::NoEligibleVertex: return "NoEligibleVertex";
    case ErrorKind::DictionaryIncomplete: return "DictionaryIncomplete";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

} // namespace toricqh

#endif
