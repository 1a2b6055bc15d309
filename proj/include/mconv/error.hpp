#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mconv {

enum class ErrorKind {
    InvalidCharacteristic,
    OrderUnavailable,
    RamifiedPrime,
    ResidueFieldTooSmall,
    NotIntegralAtPrime,
    FieldMismatch,
    SingularMatrix,
    DimensionMismatch,
    EigenvalueOutsideField,
    NotInvariant,
    ProductRelationViolated,
    SingularEntry,
    ConditionAViolated,
    InvalidM,
    ArityMismatch,
    ParseError,
    InvalidCharacter,
    TooFewPoints,
    BadReductionPrime,
    RankMismatch,
    HypothesisViolation,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidCharacteristic: return "InvalidCharacteristic";
    case ErrorKind::OrderUnavailable: return "OrderUnavailable";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::ResidueFieldTooSmall: return "ResidueFieldTooSmall";
    case ErrorKind::NotIntegralAtPrime: return "NotIntegralAtPrime";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EigenvalueOutsideField: return "EigenvalueOutsideField";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ProductRelationViolated: return "ProductRelationViolated";
    case ErrorKind::SingularEntry: return "SingularEntry";
    case ErrorKind::ConditionAViolated: return "ConditionAViolated";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidCharacter: return "InvalidCharacter";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::BadReductionPrime: return "BadReductionPrime";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    }
    return "Unknown";
}

} // namespace mconv
