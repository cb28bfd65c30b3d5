#pragma once

#include <string>

#include "castml/cas/expr.hpp"
#include "castml/cas/factor.hpp"

namespace castml::cas {

/// TeX accepted both by the math translator and by parse_command.
/// Products use `\cdot `, rationals `\frac{p}{q}`, powers `x^{n}`.
std::string expr_to_tex(const Expr& e);

/// `(x-1)\cdot (x+1)` style product; repeated factors become powers.
std::string factors_to_tex(const Factorization& f);
/// Same with `*` and `^`.
std::string factors_to_text(const Factorization& f);

}  // namespace castml::cas
