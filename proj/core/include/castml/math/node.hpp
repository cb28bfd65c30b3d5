#pragma once

#include <string>
#include <vector>

namespace castml::math {

enum class MathKind {
  Identifier,
  Number,
  Operator,
  Row,
  Sup,
  Sub,
  SubSup,
  Frac,
  Sqrt,
  Root,
  FunctionName,
  Fenced,
  Space,
};

/// Presentation tree for one math span.
///
/// Child layout by kind:
///   Sup    {base, superscript}      Sub  {base, subscript}
///   SubSup {base, sub, sup}         Frac {numerator, denominator}
///   Sqrt   {radicand}               Root {index, radicand}
///   Fenced {body}; `open`/`close` hold the delimiters ("" when omitted)
///   Row    any number of children (empty only for an explicit `{}`)
/// `text` holds the identifier, digits, operator symbol, function name,
/// or the width of a Space. `variant` is a MathML mathvariant, or empty.
struct MathNode {
  MathKind kind = MathKind::Row;
  std::string text;
  std::string variant;
  std::string open;
  std::string close;
  std::vector<MathNode> children;

  static MathNode identifier(std::string name, std::string variant = {});
  static MathNode number(std::string digits);
  static MathNode op(std::string symbol);
  static MathNode function(std::string name);
  static MathNode space(std::string width);
  static MathNode row(std::vector<MathNode> children);
  static MathNode sup(MathNode base, MathNode exponent);
  static MathNode sub(MathNode base, MathNode subscript);
  static MathNode subsup(MathNode base, MathNode subscript, MathNode superscript);
  static MathNode frac(MathNode numerator, MathNode denominator);
  static MathNode sqrt(MathNode radicand);
  static MathNode root(MathNode index, MathNode radicand);
  static MathNode fenced(std::string open, std::string close, MathNode body);

  bool operator==(const MathNode&) const = default;
};

}  // namespace castml::math
