#include "khsq/error.hpp"

namespace khsq {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::MalformedToken: return "MalformedToken";
    case ErrorKind::DanglingStrand: return "DanglingStrand";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::IOFailure: return "IOFailure";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::NoValidAssignment: return "NoValidAssignment";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::SignCriterionViolation: return "SignCriterionViolation";
    case ErrorKind::OddCount: return "OddCount";
    case ErrorKind::OddBoundary: return "OddBoundary";
    case ErrorKind::DanglingVertex: return "DanglingVertex";
    case ErrorKind::OddSwitchbackCount: return "OddSwitchbackCount";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::HypothesesFail: return "HypothesesFail";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind k) {
    switch (k) {
    case ErrorKind::MalformedToken:
    case ErrorKind::DanglingStrand:
    case ErrorKind::EmptyInput:
    case ErrorKind::UnknownName:
    case ErrorKind::IOFailure:
    case ErrorKind::BadArgument:
        return true;
    default:
        return false;
    }
}

} // namespace khsq
