#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "castml/cas/expr.hpp"

namespace castml::cas {

enum class Verb { Evaluate, Factor, Expand, Diff, Plot };

std::string_view to_string(Verb verb);

/// A parsed cell command. Arguments are raw (unsimplified) expressions:
/// factor/expand/simplify take one, diff takes the expression and an
/// optional variable symbol, plot takes the expression and an optional range.
struct Command {
  Verb verb = Verb::Evaluate;
  std::vector<Expr> args;
};

/// Maximum parser recursion depth. Each parenthesized level costs a few.
inline constexpr int kMaxParseDepth = 512;

/// Accepts plain infix (`factor(x^10-1)`, `2*x/3`) and the TeX produced by
/// expr_to_tex (`\frac{1}{2}\cdot x^{2}`, `\sin(x)`, `\left|x\right|`).
/// Throws CasError with ParseError or UnknownFunction; positions are 1-based
/// byte columns.
Command parse_command(std::string_view command);

/// Bare expression; command verbs are rejected.
Expr parse_expression(std::string_view text);

}  // namespace castml::cas
