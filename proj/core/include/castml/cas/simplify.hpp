#pragma once

#include <vector>

#include "castml/cas/expr.hpp"

namespace castml::cas {

// Canonical builders. Given canonical operands they return a canonical
// expression: sums and products flattened, rationals folded, like terms and
// equal bases collected, operands sorted.

Expr make_add(std::vector<Expr> terms);
Expr make_mul(std::vector<Expr> factors);
/// Throws DivisionByZero for 0 raised to a negative power.
Expr make_pow(Expr base, Expr exponent);
Expr make_call(Function fn, Expr argument);

Expr negate(const Expr& e);

/// Exact constant folding and collection of like terms. Idempotent.
Expr simplify(const Expr& e);

/// Distributes products over sums and expands positive integer powers of sums.
Expr expand(const Expr& e);

/// Symbolic derivative with respect to `variable`, simplified.
/// Throws UnsupportedDerivative when both base and exponent of a power depend
/// on the variable.
Expr diff(const Expr& e, std::string_view variable);

}  // namespace castml::cas
