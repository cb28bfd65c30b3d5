#include "castml/cas/command.hpp"

#include <array>
#include <cctype>
#include <optional>

#include <fmt/format.h>

namespace castml::cas {

std::string_view to_string(Verb verb) {
  switch (verb) {
    case Verb::Evaluate:
      return "evaluate";
    case Verb::Factor:
      return "factor";
    case Verb::Expand:
      return "expand";
    case Verb::Diff:
      return "diff";
    case Verb::Plot:
      return "plot";
  }
  return "?";
}

namespace {

constexpr std::array kGreek = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",  "eta", "theta",
                               "iota",  "kappa", "lambda", "mu",   "nu",      "xi",    "pi",  "rho",
                               "sigma", "tau",   "upsilon", "phi", "chi",     "psi",   "omega"};

bool is_greek(std::string_view name) {
  for (std::string_view g : kGreek) {
    if (g == name) return true;
  }
  return false;
}

std::optional<Verb> verb_from_name(std::string_view name) {
  if (name == "factor") return Verb::Factor;
  if (name == "expand") return Verb::Expand;
  if (name == "diff") return Verb::Diff;
  if (name == "plot") return Verb::Plot;
  if (name == "simplify") return Verb::Evaluate;
  return std::nullopt;
}

enum class Tok { End, Number, Ident, Command, Punct };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", pos_ + 1});
        return out;
      }
      const std::size_t start = pos_;
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() && digit(pos_ + 1))) {
        while (pos_ < src_.size() && digit(pos_)) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
          ++pos_;
          while (pos_ < src_.size() && digit(pos_)) ++pos_;
        }
        out.push_back({Tok::Number, std::string(src_.substr(start, pos_ - start)), start + 1});
      } else if (alpha(pos_)) {
        while (pos_ < src_.size() && (alpha(pos_) || digit(pos_))) ++pos_;
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), start + 1});
      } else if (c == '\\') {
        ++pos_;
        if (pos_ >= src_.size()) throw error("dangling backslash", start + 1);
        if (alpha(pos_)) {
          while (pos_ < src_.size() && alpha(pos_)) ++pos_;
        } else {
          ++pos_;
        }
        std::string word(src_.substr(start + 1, pos_ - start - 1));
        // TeX spacing commands are whitespace here.
        if (word == "," || word == ";" || word == ":" || word == "!" || word == " " || word == "quad" ||
            word == "qquad") {
          continue;
        }
        out.push_back({Tok::Command, std::move(word), start + 1});
      } else if (std::string_view("+-*/^(){}[],|").find(c) != std::string_view::npos) {
        ++pos_;
        out.push_back({Tok::Punct, std::string(1, c), start + 1});
      } else {
        throw error(fmt::format("unexpected character '{}'", printable(c)), start + 1);
      }
    }
  }

 private:
  static CasError error(const std::string& msg, std::size_t column) {
    return CasError(CasErrorCode::ParseError, msg, column);
  }
  static std::string printable(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string(1, c);
    return fmt::format("\\x{:02x}", u);
  }
  bool digit(std::size_t i) const { return std::isdigit(static_cast<unsigned char>(src_[i])) != 0; }
  bool alpha(std::size_t i) const {
    const auto u = static_cast<unsigned char>(src_[i]);
    return u < 0x80 && std::isalpha(u) != 0;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// cpp_int reads a leading 0 as octal.
Integer parse_digits(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

Rational parse_decimal(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_digits(text));
  Integer scale = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
  return Rational(parse_digits(text.substr(0, dot) + text.substr(dot + 1)), scale);
}

Expr negated(const Expr& e) {
  if (e.is_number()) return Expr::number(-e.number());
  return Expr::mul({Expr::integer(-1), e});
}

Expr reciprocal(const Expr& e) { return Expr::pow(e, Expr::integer(-1)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  Command command() {
    Command cmd;
    const Token& head = peek();
    if (head.kind == Tok::Ident && peek(1).text == "(") {
      if (auto verb = verb_from_name(head.text)) {
        next();
        next();
        cmd.verb = *verb;
        cmd.args.push_back(expression());
        while (accept(",")) cmd.args.push_back(expression());
        expect(")");
        expect_end();
        check_arity(cmd, head.column);
        return cmd;
      }
    }
    cmd.args.push_back(expression());
    expect_end();
    return cmd;
  }

  Expr bare() {
    Expr e = expression();
    expect_end();
    return e;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxParseDepth) {
        throw CasError(CasErrorCode::ParseError, "expression nested too deeply", parser.peek().column);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& parser;
  };

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return t;
  }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_command(std::string_view c) const { return peek().kind == Tok::Command && peek().text == c; }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  bool accept_command(std::string_view c) {
    if (!at_command(c)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw CasError(CasErrorCode::ParseError, msg, peek().column); }
  std::string describe() const {
    const Token& t = peek();
    if (t.kind == Tok::End) return "end of input";
    if (t.kind == Tok::Command) return "'\\" + t.text + "'";
    return "'" + t.text + "'";
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(fmt::format("expected '{}' but found {}", p, describe()));
  }
  void expect_command(std::string_view c) {
    if (!at_command(c)) fail(fmt::format("expected '\\{}' but found {}", c, describe()));
    next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(fmt::format("unexpected {}", describe()));
  }

  static void check_arity(const Command& cmd, std::size_t column) {
    const std::size_t n = cmd.args.size();
    bool ok = true;
    switch (cmd.verb) {
      case Verb::Evaluate:
      case Verb::Factor:
      case Verb::Expand:
        ok = n == 1;
        break;
      case Verb::Diff:
        ok = n == 1 || (n == 2 && cmd.args[1].is(ExprKind::Symbol));
        break;
      case Verb::Plot:
        ok = n == 1 || n == 3;
        break;
    }
    if (!ok) {
      const char* usage = cmd.verb == Verb::Diff   ? "diff(e) or diff(e, x)"
                          : cmd.verb == Verb::Plot ? "plot(e) or plot(e, xmin, xmax)"
                                                   : "one argument";
      throw CasError(CasErrorCode::ParseError, fmt::format("{} expects {}", to_string(cmd.verb), usage), column);
    }
  }

  Expr expression() {
    DepthGuard guard(*this);
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept("+")) {
        terms.push_back(term());
      } else if (accept("-")) {
        terms.push_back(negated(term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::add(std::move(terms));
  }

  bool starts_primary() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
      case Tok::Ident:
        return true;
      case Tok::Command:
        return t.text != "cdot" && t.text != "times" && t.text != "right";
      case Tok::Punct:
        return t.text == "(" || t.text == "{";
      case Tok::End:
        return false;
    }
    return false;
  }

  Expr term() {
    std::vector<Expr> factors{unary()};
    while (true) {
      if (accept("*") || accept_command("cdot") || accept_command("times")) {
        factors.push_back(unary());
      } else if (accept("/")) {
        factors.push_back(reciprocal(unary()));
      } else if (starts_primary()) {
        factors.push_back(power());
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::mul(std::move(factors));
  }

  Expr unary() {
    DepthGuard guard(*this);
    if (accept("-")) return negated(unary());
    if (accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept("^")) {
      DepthGuard guard(*this);
      return Expr::pow(std::move(base), unary());
    }
    return base;
  }

  Expr group(std::string_view open, std::string_view close) {
    expect(open);
    Expr e = expression();
    expect(close);
    return e;
  }

  Expr call_argument() {
    if (at_punct("(")) return group("(", ")");
    if (at_punct("{")) return group("{", "}");
    if (at_command("left")) return left_right();
    fail(fmt::format("expected '(' after function name but found {}", describe()));
  }

  Expr left_right() {
    expect_command("left");
    if (accept("(")) {
      Expr e = expression();
      expect_command("right");
      expect(")");
      return e;
    }
    if (accept("|")) {
      Expr e = expression();
      expect_command("right");
      expect("|");
      return Expr::call(Function::Abs, std::move(e));
    }
    fail(fmt::format("unsupported delimiter {} after \\left", describe()));
  }

  Expr primary() {
    DepthGuard guard(*this);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        return Expr::number(parse_decimal(t.text));
      }
      case Tok::Ident: {
        const Token ident = next();
        if (at_punct("(") && ident.text.size() > 1) {
          if (auto fn = function_from_name(ident.text)) return Expr::call(*fn, call_argument());
          if (verb_from_name(ident.text)) {
            throw CasError(CasErrorCode::ParseError, fmt::format("'{}' is only allowed as the outermost command", ident.text),
                           ident.column);
          }
          throw CasError(CasErrorCode::UnknownFunction, fmt::format("unknown function '{}'", ident.text), ident.column);
        }
        if (function_from_name(ident.text)) {
          throw CasError(CasErrorCode::ParseError, fmt::format("function '{}' needs an argument", ident.text),
                         ident.column);
        }
        return Expr::symbol(ident.text);
      }
      case Tok::Punct:
        if (t.text == "(") return group("(", ")");
        if (t.text == "{") return group("{", "}");
        fail(fmt::format("unexpected {}", describe()));
      case Tok::Command:
        return command_primary();
      case Tok::End:
        break;
    }
    fail("unexpected end of input");
  }

  Expr command_primary() {
    const Token t = peek();
    const std::string& word = t.text;
    if (word == "left") return left_right();
    next();
    if (word == "frac") {
      Expr num = group("{", "}");
      Expr den = group("{", "}");
      return Expr::mul({std::move(num), reciprocal(std::move(den))});
    }
    if (word == "sqrt") {
      if (accept("[")) {
        Expr index = expression();
        expect("]");
        Expr radicand = group("{", "}");
        return Expr::pow(std::move(radicand), reciprocal(std::move(index)));
      }
      return Expr::call(Function::Sqrt, call_argument());
    }
    if (auto fn = function_from_name(word); fn && word != "sqrt" && word != "abs") {
      return Expr::call(*fn, call_argument());
    }
    if (is_greek(word)) return Expr::symbol(word);
    throw CasError(CasErrorCode::ParseError, fmt::format("unsupported command '\\{}'", word), t.column);
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  int depth_ = 0;
};

}  // namespace

Command parse_command(std::string_view command) {
  bool blank = true;
  for (char c : command) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw CasError(CasErrorCode::ParseError, "empty command", 1);
  return Parser(command).command();
}

Expr parse_expression(std::string_view text) { return Parser(text).bare(); }

}  // namespace castml::cas
