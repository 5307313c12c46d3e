#pragma once

#include <stdexcept>
#include <string>

namespace khsq {

enum class ErrorKind {
    MalformedToken,
    DanglingStrand,
    EmptyInput,
    UnknownName,
    IOFailure,
    BadArgument,
    NotAnEdge,
    NoValidAssignment,
    DimensionMismatch,
    NoSolution,
    NotAComplex,
    NotACocycle,
    SignCriterionViolation,
    OddCount,
    OddBoundary,
    DanglingVertex,
    OddSwitchbackCount,
    BadIndices,
    HypothesesFail,
    InvariantViolation,
};

const char* error_kind_name(ErrorKind k);

// True for errors caused by user input rather than by a broken invariant.
bool is_input_error(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + error_kind_name(kind) + ": " + what),
          kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& module() const { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

} // namespace khsq
