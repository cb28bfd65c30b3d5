#include "castml/math/translator.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "castml/math/symbols.hpp"
#include "castml/utf8.hpp"

namespace castml::math {

MathNode MathNode::identifier(std::string name, std::string variant) {
  return {MathKind::Identifier, std::move(name), std::move(variant), {}, {}, {}};
}
MathNode MathNode::number(std::string digits) { return {MathKind::Number, std::move(digits), {}, {}, {}, {}}; }
MathNode MathNode::op(std::string symbol) { return {MathKind::Operator, std::move(symbol), {}, {}, {}, {}}; }
MathNode MathNode::function(std::string name) { return {MathKind::FunctionName, std::move(name), {}, {}, {}, {}}; }
MathNode MathNode::space(std::string width) { return {MathKind::Space, std::move(width), {}, {}, {}, {}}; }
MathNode MathNode::row(std::vector<MathNode> children) { return {MathKind::Row, {}, {}, {}, {}, std::move(children)}; }
MathNode MathNode::sup(MathNode base, MathNode exponent) {
  return {MathKind::Sup, {}, {}, {}, {}, {std::move(base), std::move(exponent)}};
}
MathNode MathNode::sub(MathNode base, MathNode subscript) {
  return {MathKind::Sub, {}, {}, {}, {}, {std::move(base), std::move(subscript)}};
}
MathNode MathNode::subsup(MathNode base, MathNode subscript, MathNode superscript) {
  return {MathKind::SubSup, {}, {}, {}, {}, {std::move(base), std::move(subscript), std::move(superscript)}};
}
MathNode MathNode::frac(MathNode numerator, MathNode denominator) {
  return {MathKind::Frac, {}, {}, {}, {}, {std::move(numerator), std::move(denominator)}};
}
MathNode MathNode::sqrt(MathNode radicand) { return {MathKind::Sqrt, {}, {}, {}, {}, {std::move(radicand)}}; }
MathNode MathNode::root(MathNode index, MathNode radicand) {
  return {MathKind::Root, {}, {}, {}, {}, {std::move(index), std::move(radicand)}};
}
MathNode MathNode::fenced(std::string open, std::string close, MathNode body) {
  return {MathKind::Fenced, {}, {}, std::move(open), std::move(close), {std::move(body)}};
}

namespace {

constexpr int kMaxDepth = 200;

const std::unordered_set<std::string_view>& function_names() {
  static const std::unordered_set<std::string_view> names = {
      "sin",  "cos",  "tan",    "cot",    "sec",    "csc", "arcsin", "arccos", "arctan", "sinh", "cosh",
      "tanh", "coth", "log",    "ln",     "lg",     "exp", "lim",    "limsup", "liminf", "max",  "min",
      "sup",  "inf",  "det",    "dim",    "ker",    "deg", "gcd",    "arg",    "Pr",     "hom",  "sgn",
  };
  return names;
}

const std::unordered_map<std::string_view, std::string_view>& font_variants() {
  static const std::unordered_map<std::string_view, std::string_view> variants = {
      {"text", "normal"},         {"textrm", "normal"},   {"textnormal", "normal"}, {"mbox", "normal"},
      {"mathrm", "normal"},       {"textit", "italic"},   {"mathit", "italic"},     {"textbf", "bold"},
      {"mathbf", "bold"},         {"mathbb", "double-struck"}, {"mathcal", "script"}, {"mathsf", "sans-serif"},
      {"mathtt", "monospace"},    {"texttt", "monospace"}, {"mathfrak", "fraktur"},
  };
  return variants;
}

const std::unordered_map<std::string_view, std::string_view>& space_widths() {
  static const std::unordered_map<std::string_view, std::string_view> widths = {
      {",", "0.1667em"}, {":", "0.2222em"}, {">", "0.2222em"}, {";", "0.2778em"},
      {"!", "-0.1667em"}, {" ", "0.25em"},  {"quad", "1em"},    {"qquad", "2em"},
  };
  return widths;
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

MathNode collapse(std::vector<MathNode> children) {
  if (children.size() == 1) return std::move(children.front());
  return MathNode::row(std::move(children));
}

class Parser {
 public:
  Parser(std::string_view src, std::vector<std::string>* warnings) : src_(src), warnings_(warnings) {}

  MathNode parse() {
    auto children = parse_sequence(Stop::End);
    return collapse(std::move(children));
  }

 private:
  enum class Stop { End, Brace, Right, Bracket };

  [[noreturn]] void fail(const std::string& message) const { throw MathSyntaxError(i_, message); }

  [[nodiscard]] bool at_end() const { return i_ >= src_.size(); }

  void skip_ws() {
    while (!at_end() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' || src_[i_] == '\r')) ++i_;
  }

  [[nodiscard]] std::string_view peek_word() const {
    if (at_end() || src_[i_] != '\\') return {};
    std::size_t end = i_ + 1;
    while (end < src_.size() && is_ascii_letter(src_[end])) ++end;
    return src_.substr(i_ + 1, end - i_ - 1);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("expression is nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  std::vector<MathNode> parse_sequence(Stop stop) {
    DepthGuard guard(*this);
    std::vector<MathNode> children;
    while (true) {
      skip_ws();
      if (at_end()) {
        if (stop == Stop::Brace) fail("missing '}'");
        if (stop == Stop::Right) fail("\\left without matching \\right");
        if (stop == Stop::Bracket) fail("missing ']'");
        return children;
      }
      const char c = src_[i_];
      if (c == '}') {
        if (stop == Stop::Brace) return children;
        fail("unmatched '}'");
      }
      if (c == ']' && stop == Stop::Bracket) return children;
      if (peek_word() == "right") {
        if (stop == Stop::Right) return children;
        fail("\\right without matching \\left");
      }
      auto atom = parse_atom();
      if (!atom) continue;
      children.push_back(attach_scripts(std::move(*atom)));
    }
  }

  MathNode parse_group() {
    ++i_;  // {
    auto children = parse_sequence(Stop::Brace);
    ++i_;  // }
    return collapse(std::move(children));
  }

  std::optional<MathNode> parse_atom() {
    const char c = src_[i_];
    if (is_ascii_letter(c)) {
      ++i_;
      return MathNode::identifier(std::string(1, c));
    }
    if (is_digit(c) || (c == '.' && i_ + 1 < src_.size() && is_digit(src_[i_ + 1]))) return parse_number();
    switch (c) {
      case '{':
        return parse_group();
      case '\\':
        return parse_control();
      case '^':
      case '_':
      case '\'':
        return MathNode::row({});
      case '&':
        fail("alignment '&' is not supported");
      case '#':
        fail("unexpected '#'");
      case '$':
        fail("unexpected '$'");
      case '~':
        ++i_;
        return MathNode::space("0.2778em");
      case '-':
        ++i_;
        return MathNode::op("\xE2\x88\x92");  // U+2212 minus sign
      case '*':
        ++i_;
        return MathNode::op("\xE2\x88\x97");  // U+2217 asterisk operator
      default:
        break;
    }
    const auto byte = static_cast<unsigned char>(c);
    if (byte < 0x20 || byte == 0x7F) fail("control character in math");
    if (byte < 0x80) {
      ++i_;
      return MathNode::op(std::string(1, c));
    }
    const auto start = i_;
    const auto cp = utf8::decode(src_, i_);
    if (!cp) {
      i_ = start;
      fail("invalid UTF-8 in math");
    }
    if (!utf8::is_xml_char(*cp)) {
      i_ = start;
      fail("character not allowed in MathML");
    }
    return MathNode::identifier(std::string(src_.substr(start, i_ - start)));
  }

  MathNode parse_number() {
    const auto start = i_;
    while (!at_end() && is_digit(src_[i_])) ++i_;
    if (!at_end() && src_[i_] == '.' && i_ + 1 < src_.size() && is_digit(src_[i_ + 1])) {
      ++i_;
      while (!at_end() && is_digit(src_[i_])) ++i_;
    }
    return MathNode::number(std::string(src_.substr(start, i_ - start)));
  }

  MathNode attach_scripts(MathNode base) {
    std::optional<MathNode> sub;
    std::optional<MathNode> sup;
    std::vector<MathNode> primes;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char c = src_[i_];
      if (c == '\'') {
        if (sup) fail("double superscript");
        ++i_;
        primes.push_back(MathNode::op("\xE2\x80\xB2"));  // U+2032 prime
      } else if (c == '^') {
        if (sup) fail("double superscript");
        ++i_;
        auto script = parse_argument();
        if (!primes.empty()) {
          primes.push_back(std::move(script));
          sup = MathNode::row(std::move(primes));
          primes.clear();
        } else {
          sup = std::move(script);
        }
      } else if (c == '_') {
        if (sub) fail("double subscript");
        ++i_;
        sub = parse_argument();
      } else {
        break;
      }
    }
    if (!primes.empty()) sup = collapse(std::move(primes));
    if (sub && sup) return MathNode::subsup(std::move(base), std::move(*sub), std::move(*sup));
    if (sup) return MathNode::sup(std::move(base), std::move(*sup));
    if (sub) return MathNode::sub(std::move(base), std::move(*sub));
    return base;
  }

  // One token or braced group, as taken by scripts and \frac.
  MathNode parse_argument() {
    DepthGuard guard(*this);
    skip_ws();
    if (at_end()) fail("missing argument");
    const char c = src_[i_];
    if (c == '}' || c == '^' || c == '_' || c == '&' || c == ']') fail(fmt::format("missing argument before '{}'", c));
    if (c == '{') return parse_group();
    if (is_digit(c)) {
      ++i_;
      return MathNode::number(std::string(1, c));
    }
    if (c == '\\' && peek_word() == "right") fail("missing argument before \\right");
    auto atom = parse_atom();
    if (!atom) fail("argument expected");
    return std::move(*atom);
  }

  std::string read_raw_group() {
    skip_ws();
    if (at_end()) fail("missing argument");
    if (src_[i_] != '{') {
      const auto start = i_;
      if (!utf8::decode(src_, i_)) fail("invalid UTF-8 in math");
      return std::string(src_.substr(start, i_ - start));
    }
    const auto open = i_++;
    int depth = 1;
    const auto start = i_;
    while (!at_end()) {
      if (src_[i_] == '\\' && i_ + 1 < src_.size()) {
        i_ += 2;
        continue;
      }
      if (src_[i_] == '{') ++depth;
      if (src_[i_] == '}' && --depth == 0) {
        const auto text = src_.substr(start, i_ - start);
        ++i_;
        if (!utf8::is_valid(text) || utf8::sanitize_for_xml(text) != text) fail("invalid text in math");
        return std::string(text);
      }
      ++i_;
    }
    i_ = open;
    fail("missing '}'");
  }

  std::string parse_delimiter() {
    skip_ws();
    if (at_end()) fail("missing delimiter");
    const char c = src_[i_];
    if (c == '.') {
      ++i_;
      return {};
    }
    if (c == '<' || c == '>') {
      ++i_;
      return c == '<' ? "\xE2\x9F\xA8" : "\xE2\x9F\xA9";
    }
    if (std::string_view("()[]|/").find(c) != std::string_view::npos) {
      ++i_;
      return std::string(1, c);
    }
    if (c == '\\' && i_ + 1 < src_.size()) {
      const char d = src_[i_ + 1];
      if (d == '{' || d == '}') {
        i_ += 2;
        return std::string(1, d);
      }
      if (d == '|') {
        i_ += 2;
        return "\xE2\x80\x96";
      }
      const auto word = peek_word();
      const auto* info = builtin_symbols().find(word);
      if (!word.empty() && info != nullptr &&
          (info->cls == SymbolClass::Open || info->cls == SymbolClass::Close || word == "vert" || word == "Vert")) {
        i_ += word.size() + 1;
        return utf8::encode(info->codepoint);
      }
    }
    fail("invalid delimiter");
  }

  std::optional<MathNode> parse_control() {
    if (i_ + 1 >= src_.size()) fail("trailing backslash");
    const char next = src_[i_ + 1];
    if (!is_ascii_letter(next)) {
      if (next == '\\') fail("line breaks are not supported in math");
      const auto key = std::string_view(&src_[i_ + 1], 1);
      if (const auto it = space_widths().find(key); it != space_widths().end()) {
        i_ += 2;
        return MathNode::space(std::string(it->second));
      }
      if (next == '|') {
        i_ += 2;
        return MathNode::op("\xE2\x80\x96");
      }
      if (std::string_view("{}%&#_$").find(next) != std::string_view::npos) {
        i_ += 2;
        return MathNode::op(std::string(1, next));
      }
      ++i_;  // keep the following character as a regular atom
      warn(fmt::format("unknown control symbol '\\{}'", next));
      return parse_atom();
    }

    const auto word = peek_word();
    const auto word_start = i_;
    i_ += word.size() + 1;

    if (word == "frac" || word == "dfrac" || word == "tfrac" || word == "cfrac") {
      auto numerator = parse_argument();
      auto denominator = parse_argument();
      return MathNode::frac(std::move(numerator), std::move(denominator));
    }
    if (word == "sqrt") {
      skip_ws();
      if (!at_end() && src_[i_] == '[') {
        ++i_;
        auto index = collapse(parse_sequence(Stop::Bracket));
        ++i_;  // ]
        auto radicand = parse_argument();
        return MathNode::root(std::move(index), std::move(radicand));
      }
      return MathNode::sqrt(parse_argument());
    }
    if (word == "left") {
      DepthGuard guard(*this);
      auto open = parse_delimiter();
      auto body = collapse(parse_sequence(Stop::Right));
      i_ += 6;  // \right
      auto close = parse_delimiter();
      return MathNode::fenced(std::move(open), std::move(close), std::move(body));
    }
    if (word == "right") {
      i_ = word_start;
      fail("\\right without matching \\left");
    }
    if (word == "operatorname") return MathNode::function(read_raw_group());
    if (const auto it = font_variants().find(word); it != font_variants().end()) {
      return MathNode::identifier(read_raw_group(), std::string(it->second));
    }
    if (word == "displaystyle" || word == "textstyle" || word == "scriptstyle" || word == "limits" ||
        word == "nolimits" || word == "nonumber") {
      return std::nullopt;
    }
    if (const auto it = space_widths().find(word); it != space_widths().end()) {
      return MathNode::space(std::string(it->second));
    }
    if (function_names().contains(word)) return MathNode::function(std::string(word));
    if (const auto* info = builtin_symbols().find(word)) {
      auto text = utf8::encode(info->codepoint);
      if (info->cls == SymbolClass::Ident) return MathNode::identifier(std::move(text));
      return MathNode::op(std::move(text));
    }
    warn(fmt::format("unknown control word '\\{}' rendered as an identifier", word));
    return MathNode::identifier(std::string(word));
  }

  void warn(std::string message) {
    if (warnings_ != nullptr) warnings_->push_back(std::move(message));
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int depth_ = 0;
  std::vector<std::string>* warnings_;
};

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
}

bool is_function_like(const MathNode& node) {
  if (node.kind == MathKind::FunctionName) return true;
  if (node.kind == MathKind::Sup || node.kind == MathKind::Sub || node.kind == MathKind::SubSup) {
    return node.children.front().kind == MathKind::FunctionName;
  }
  return false;
}

class Writer {
 public:
  std::string out;

  void element(std::string_view tag, const MathNode& node) {
    out += '<';
    out += tag;
    out += '>';
    for (const auto& child : node.children) write(child);
    out += "</";
    out += tag;
    out += '>';
  }

  void leaf(std::string_view tag, std::string_view text, std::string_view variant = {}) {
    out += '<';
    out += tag;
    if (!variant.empty()) {
      out += " mathvariant=\"";
      escape_into(out, variant);
      out += '"';
    }
    out += '>';
    escape_into(out, text);
    out += "</";
    out += tag;
    out += '>';
  }

  void row_children(const std::vector<MathNode>& children) {
    for (std::size_t k = 0; k < children.size(); ++k) {
      write(children[k]);
      if (is_function_like(children[k]) && k + 1 < children.size()) out += "<mo>&#x2061;</mo>";
    }
  }

  void write(const MathNode& node) {
    switch (node.kind) {
      case MathKind::Identifier:
        leaf("mi", node.text, node.variant);
        break;
      case MathKind::FunctionName:
        leaf("mi", node.text);
        break;
      case MathKind::Number:
        leaf("mn", node.text);
        break;
      case MathKind::Operator:
        leaf("mo", node.text);
        break;
      case MathKind::Space:
        out += "<mspace width=\"";
        escape_into(out, node.text);
        out += "\"/>";
        break;
      case MathKind::Row:
        out += "<mrow>";
        row_children(node.children);
        out += "</mrow>";
        break;
      case MathKind::Sup:
        element("msup", node);
        break;
      case MathKind::Sub:
        element("msub", node);
        break;
      case MathKind::SubSup:
        element("msubsup", node);
        break;
      case MathKind::Frac:
        element("mfrac", node);
        break;
      case MathKind::Sqrt:
        element("msqrt", node);
        break;
      case MathKind::Root:
        out += "<mroot>";
        write(node.children[1]);
        write(node.children[0]);
        out += "</mroot>";
        break;
      case MathKind::Fenced: {
        out += "<mrow>";
        if (!node.open.empty()) leaf("mo", node.open);
        const auto& body = node.children.front();
        if (body.kind == MathKind::Row) {
          row_children(body.children);
        } else {
          write(body);
        }
        if (!node.close.empty()) leaf("mo", node.close);
        out += "</mrow>";
        break;
      }
    }
  }
};

}  // namespace

MathNode parse_math(std::string_view tex, std::vector<std::string>* warnings) {
  return Parser(tex, warnings).parse();
}

std::string to_mathml(const MathNode& node, bool display) {
  Writer writer;
  writer.out = display ? "<math display=\"block\">" : "<math>";
  writer.write(node);
  writer.out += "</math>";
  return std::move(writer.out);
}

MathMLFragment translate_span(std::string_view tex, bool display) {
  MathMLFragment fragment;
  try {
    const auto node = parse_math(tex, &fragment.warnings);
    fragment.xml = to_mathml(node, display);
  } catch (const MathSyntaxError& e) {
    fragment.error = fmt::format("{} (offset {})", e.what(), e.offset());
    std::string xml = display ? "<math display=\"block\"" : "<math";
    xml += " data-math-error=\"";
    escape_into(xml, *fragment.error);
    xml += "\"><mi mathvariant=\"normal\">";
    escape_into(xml, utf8::sanitize_for_xml(tex));
    xml += "</mi></math>";
    fragment.xml = std::move(xml);
  }
  return fragment;
}

}  // namespace castml::math
