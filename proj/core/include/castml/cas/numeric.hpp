#pragma once

#include <map>
#include <string>

#include "castml/cas/expr.hpp"

namespace castml::cas {

using Bindings = std::map<std::string, double, std::less<>>;

/// IEEE double evaluation. `pi` and `e` are constants unless bound.
/// Domain problems (ln of a non-positive number, division by zero) yield a
/// non-finite value instead of throwing. Throws UnboundSymbol otherwise.
double eval_numeric(const Expr& e, const Bindings& bindings = {});

}  // namespace castml::cas
