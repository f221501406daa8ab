#pragma once

#include <stdexcept>
#include <string>

namespace homforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse failure in the graph text format or an experiment file.
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct CompositionError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

// A configured size/vertex guard was hit before any work completed.
struct GuardExceeded : Error {
    using Error::Error;
};

struct NotSublattice : Error {
    using Error::Error;
};

struct ClosureError : Error {
    using Error::Error;
};

struct InactiveSymbol : Error {
    using Error::Error;
};

// A stage invariant failed at runtime; the stage cannot be trusted.
struct StageCorrupt : Error {
    using Error::Error;
};

struct NotLeftMultiplication : Error {
    NotLeftMultiplication(const std::string& what, int witness_basis_index)
        : Error(what), witness(witness_basis_index) {}
    int witness;
};

struct NotInImage : Error {
    NotInImage(const std::string& what, int witness_basis_index)
        : Error(what), witness(witness_basis_index) {}
    int witness;
};

struct InvalidInversePair : Error {
    using Error::Error;
};

struct NotCodirected : Error {
    using Error::Error;
};

struct SearchExhausted : Error {
    using Error::Error;
};

}  // namespace homforge
