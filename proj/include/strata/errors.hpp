#pragma once

#include <stdexcept>
#include <string>

namespace strata {

enum class ErrorCode {
    // group
    EmptyOrders,
    OrderBoundExceeded,
    ElementNotInGroup,
    ParentMismatch,
    InvalidTable,
    // action
    NonIntegralGenus,
    BadExponent,
    RelationFails,
    // dual graphs
    BadGraphStructure,
    MissingExplicitDecoration,
    NonAbelianDerivation,
    NotDecorated,
    NotAdmissible,
    // lift engine
    NonIntegralWeight,
    NegativeWeight,
    DisconnectedLift,
    QuotientMismatch,
    DegreeCheckFailed,
    GenusCheckFailed,
    NotPGonal,
    NotHyperelliptic,
    NotSingleCurve,
    // enumeration
    NotGenusZero,
    BadRange,
    // canonicalization
    SizeBoundExceeded,
    // cli
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace strata
