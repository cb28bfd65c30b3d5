#include "castml/cas/expr.hpp"

#include <fmt/format.h>

#include "castml/cas/simplify.hpp"

namespace castml::cas {

std::string_view to_string(CasErrorCode code) {
  switch (code) {
    case CasErrorCode::ParseError:
      return "ParseError";
    case CasErrorCode::UnknownFunction:
      return "UnknownFunction";
    case CasErrorCode::DivisionByZero:
      return "DivisionByZero";
    case CasErrorCode::UnsupportedDerivative:
      return "UnsupportedDerivative";
    case CasErrorCode::UnboundSymbol:
      return "UnboundSymbol";
    case CasErrorCode::ExprTooLarge:
      return "ExprTooLarge";
    case CasErrorCode::InvalidArgument:
      return "InvalidArgument";
  }
  return "?";
}

CasError::CasError(CasErrorCode code, const std::string& message, std::size_t position)
    : std::runtime_error(message), code_(code), position_(position) {}

std::string_view to_string(Function fn) {
  switch (fn) {
    case Function::Sin:
      return "sin";
    case Function::Cos:
      return "cos";
    case Function::Exp:
      return "exp";
    case Function::Ln:
      return "ln";
    case Function::Sqrt:
      return "sqrt";
    case Function::Abs:
      return "abs";
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  if (name == "sin") return Function::Sin;
  if (name == "cos") return Function::Cos;
  if (name == "exp") return Function::Exp;
  if (name == "ln" || name == "log") return Function::Ln;
  if (name == "sqrt") return Function::Sqrt;
  if (name == "abs") return Function::Abs;
  return std::nullopt;
}

struct Expr::Node {
  ExprKind kind = ExprKind::Rational;
  Rational value;
  std::string name;
  Function fn = Function::Sin;
  std::vector<Expr> operands;
};

Expr::Expr() : Expr(number(0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::number(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Rational;
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::integer(long long value) { return number(Rational(value)); }

Expr Expr::symbol(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Symbol;
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::add(std::vector<Expr> terms) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Add;
  node->operands = std::move(terms);
  return Expr(std::move(node));
}

Expr Expr::mul(std::vector<Expr> factors) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Mul;
  node->operands = std::move(factors);
  return Expr(std::move(node));
}

Expr Expr::pow(Expr base, Expr exponent) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Pow;
  node->operands = {std::move(base), std::move(exponent)};
  return Expr(std::move(node));
}

Expr Expr::call(Function fn, Expr argument) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Call;
  node->fn = fn;
  node->operands = {std::move(argument)};
  return Expr(std::move(node));
}

ExprKind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return is_number() && node_->value == 0; }
bool Expr::is_one() const { return is_number() && node_->value == 1; }
bool Expr::is_integer() const {
  return is_number() && boost::multiprecision::denominator(node_->value) == 1;
}
const Rational& Expr::number() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
std::span<const Expr> Expr::operands() const { return node_->operands; }
const Expr& Expr::base() const { return node_->operands[0]; }
const Expr& Expr::exponent() const { return node_->operands[1]; }
Function Expr::function() const { return node_->fn; }
const Expr& Expr::argument() const { return node_->operands[0]; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  return compare(a, b) == 0;
}

namespace {

int rank(ExprKind kind) {
  switch (kind) {
    case ExprKind::Rational:
      return 0;
    case ExprKind::Symbol:
    case ExprKind::Pow:
      return 1;
    case ExprKind::Mul:
      return 2;
    case ExprKind::Add:
      return 3;
    case ExprKind::Call:
      return 4;
  }
  return 5;
}

int compare_lists(std::span<const Expr> a, std::span<const Expr> b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (const int c = compare(a[k], b[k]); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  const int ra = rank(a.kind());
  const int rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Rational:
      if (a.number() == b.number()) return 0;
      return a.number() < b.number() ? -1 : 1;
    case ExprKind::Symbol:
    case ExprKind::Pow: {
      if (a.is(ExprKind::Symbol) && b.is(ExprKind::Symbol)) {
        if (a.name() == b.name()) return 0;
        return a.name() < b.name() ? -1 : 1;
      }
      static const Expr one = Expr::integer(1);
      const Expr& base_a = a.is(ExprKind::Pow) ? a.base() : a;
      const Expr& base_b = b.is(ExprKind::Pow) ? b.base() : b;
      const Expr& exp_a = a.is(ExprKind::Pow) ? a.exponent() : one;
      const Expr& exp_b = b.is(ExprKind::Pow) ? b.exponent() : one;
      if (const int c = compare(base_a, base_b); c != 0) return c;
      return compare(exp_a, exp_b);
    }
    case ExprKind::Mul:
    case ExprKind::Add:
      return compare_lists(a.operands(), b.operands());
    case ExprKind::Call:
      if (a.function() != b.function()) return a.function() < b.function() ? -1 : 1;
      return compare(a.argument(), b.argument());
  }
  return 0;
}

std::size_t node_count(const Expr& e, std::size_t limit) {
  std::size_t count = 0;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty() && count <= limit) {
    const Expr* cur = stack.back();
    stack.pop_back();
    ++count;
    if (cur->is(ExprKind::Rational) || cur->is(ExprKind::Symbol)) continue;
    for (const auto& child : cur->operands()) stack.push_back(&child);
  }
  return count;
}

bool depends_on(const Expr& e, std::string_view symbol) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return false;
    case ExprKind::Symbol:
      return e.name() == symbol;
    default:
      for (const auto& child : e.operands()) {
        if (depends_on(child, symbol)) return true;
      }
      return false;
  }
}

namespace {
void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.is(ExprKind::Symbol)) {
    out.insert(e.name());
  } else if (!e.is_number()) {
    for (const auto& child : e.operands()) collect_symbols(child, out);
  }
}
}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

namespace {

std::string rational_text(const Rational& r) {
  return r.str();
}

bool negative_term(const Expr& t) {
  if (t.is_number()) return t.number() < 0;
  return t.is(ExprKind::Mul) && t.operands()[0].is_number() && t.operands()[0].number() < 0;
}

std::string text(const Expr& e);

std::string text_factor(const Expr& f) {
  if (f.is(ExprKind::Add) || (f.is_number() && (f.number() < 0 || !f.is_integer()))) return "(" + text(f) + ")";
  if (f.is(ExprKind::Mul)) return "(" + text(f) + ")";
  return text(f);
}

std::string text_mul(const Expr& e) {
  Rational coef = 1;
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : e.operands()) {
    if (f.is_number()) {
      coef *= f.number();
    } else if (f.is(ExprKind::Pow) && f.exponent().is_number() && f.exponent().number() < 0) {
      const Rational positive = -f.exponent().number();
      den.push_back(positive == 1 ? text_factor(f.base()) : text_factor(Expr::pow(f.base(), Expr::number(positive))));
    } else {
      num.push_back(text_factor(f));
    }
  }
  std::string out = coef < 0 ? "-" : "";
  const Rational mag = abs(coef);
  const Integer cn = boost::multiprecision::numerator(mag);
  const Integer cd = boost::multiprecision::denominator(mag);
  if (cn != 1 || num.empty()) num.insert(num.begin(), cn.str());
  if (cd != 1) den.insert(den.begin(), cd.str());
  out += fmt::format("{}", fmt::join(num, "*"));
  if (den.size() == 1) out += "/" + den[0];
  if (den.size() > 1) out += fmt::format("/({})", fmt::join(den, "*"));
  return out;
}

std::string text(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return rational_text(e.number());
    case ExprKind::Symbol:
      return e.name();
    case ExprKind::Add: {
      std::string out;
      bool first = true;
      for (const auto& t : e.operands()) {
        if (first) {
          out += text(t);
        } else if (negative_term(t)) {
          const Expr negated = make_mul({Expr::integer(-1), t});
          out += negated.is(ExprKind::Add) ? "-(" + text(negated) + ")" : "-" + text(negated);
        } else {
          out += "+" + text(t);
        }
        first = false;
      }
      return out;
    }
    case ExprKind::Mul:
      return text_mul(e);
    case ExprKind::Pow: {
      if (e.exponent().is_number() && e.exponent().number() < 0) return text_mul(Expr::mul({e}));
      const auto& x = e.exponent();
      const bool simple_exp = (x.is_integer() && x.number() >= 0) || x.is(ExprKind::Symbol);
      std::string base = e.base().is(ExprKind::Symbol) || (e.base().is_integer() && e.base().number() >= 0) ||
                                 e.base().is(ExprKind::Call)
                             ? text(e.base())
                             : "(" + text(e.base()) + ")";
      return base + "^" + (simple_exp ? text(x) : "(" + text(x) + ")");
    }
    case ExprKind::Call:
      return fmt::format("{}({})", to_string(e.function()), text(e.argument()));
  }
  return {};
}

}  // namespace

std::string to_text(const Expr& e) { return text(e); }

}  // namespace castml::cas
