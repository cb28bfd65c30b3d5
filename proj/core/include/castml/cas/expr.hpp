#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace castml::cas {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Any operation producing an expression larger than this aborts.
inline constexpr std::size_t kMaxNodes = 1'000'000;

enum class CasErrorCode {
  ParseError,
  UnknownFunction,
  DivisionByZero,
  UnsupportedDerivative,
  UnboundSymbol,
  ExprTooLarge,
  InvalidArgument,
};

std::string_view to_string(CasErrorCode code);

class CasError : public std::runtime_error {
 public:
  CasError(CasErrorCode code, const std::string& message, std::size_t position = 0);

  [[nodiscard]] CasErrorCode code() const { return code_; }
  /// 1-based column in the command for parse errors, 0 otherwise.
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  CasErrorCode code_;
  std::size_t position_;
};

enum class Function { Sin, Cos, Exp, Ln, Sqrt, Abs };

std::string_view to_string(Function fn);
std::optional<Function> function_from_name(std::string_view name);

enum class ExprKind { Rational, Symbol, Add, Mul, Pow, Call };

/// Immutable expression tree with shared structure. Equality is structural.
///
/// The static constructors build nodes exactly as given; canonical forms
/// come from simplify() and the make_* builders in simplify.hpp.
class Expr {
 public:
  Expr();  // the rational 0

  static Expr number(Rational value);
  static Expr integer(long long value);
  static Expr symbol(std::string name);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr pow(Expr base, Expr exponent);
  static Expr call(Function fn, Expr argument);

  [[nodiscard]] ExprKind kind() const;
  [[nodiscard]] bool is(ExprKind k) const { return kind() == k; }
  [[nodiscard]] bool is_number() const { return kind() == ExprKind::Rational; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool is_integer() const;

  [[nodiscard]] const Rational& number() const;
  [[nodiscard]] const std::string& name() const;
  /// Terms of an Add, factors of a Mul.
  [[nodiscard]] std::span<const Expr> operands() const;
  [[nodiscard]] const Expr& base() const;
  [[nodiscard]] const Expr& exponent() const;
  [[nodiscard]] Function function() const;
  [[nodiscard]] const Expr& argument() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Total order used for canonical sorting. Returns <0, 0 or >0.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Number of nodes, counting stops once `limit` is exceeded.
std::size_t node_count(const Expr& e, std::size_t limit = kMaxNodes + 1);

bool depends_on(const Expr& e, std::string_view symbol);
std::set<std::string> free_symbols(const Expr& e);

/// Plain infix rendering, e.g. `x^2+2*x+1`.
std::string to_text(const Expr& e);

}  // namespace castml::cas
