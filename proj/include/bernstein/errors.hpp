#pragma once

#include <stdexcept>
#include <string>

namespace bernstein {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands belong to different fields (e.g. GF(5) vs GF(7), or Q vs GF(p)).
struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

/// Multiplicative inverse of zero requested.
struct ZeroInverse : Error {
    ZeroInverse() : Error("multiplicative inverse of zero") {}
};

/// Vector/matrix dimensions do not match the ambient algebra.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

/// Characteristic 2 field requested; the scalar 1/2 must exist.
struct CharTwo : Error {
    CharTwo() : Error("field of characteristic 2 is not supported (1/2 must exist)") {}
};

/// The algebra does not satisfy (x^2)^2 = 0.
struct Not4Algebra : Error {
    Not4Algebra() : Error("algebra is not a 4-algebra: (x^2)^2 = 0 fails") {}
};

/// The baric algebra does not satisfy the Bernstein identity.
struct NotBernstein : Error {
    NotBernstein() : Error("baric algebra is not a Bernstein algebra") {}
};

/// A matrix expected to be idempotent is not.
struct NotIdempotent : Error {
    NotIdempotent() : Error("endomorphism is not idempotent") {}
};

/// A matrix expected to be a Bernstein operator is not.
struct NotOperator : Error {
    NotOperator() : Error("endomorphism is not a Bernstein operator") {}
};

/// Operation requires a finite field (or a small-dimension rational case).
struct UnsupportedField : Error {
    explicit UnsupportedField(const std::string& msg) : Error(msg) {}
};

/// Exhaustive search exceeded its candidate budget; no partial results returned.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

/// Catalog lookup with an unknown name.
struct UnknownName : Error {
    explicit UnknownName(const std::string& name) : Error("unknown catalog name: " + name) {}
};

/// Malformed or inconsistent input data (JSON schema, structure constants, weights).
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

}  // namespace bernstein
