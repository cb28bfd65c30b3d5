#include <algorithm>
#include <cctype>
#include <unordered_map>

#include <fmt/format.h>

#include "castml/tex/document.hpp"

namespace castml::tex {

namespace {

struct MacroSpec {
  int args = 0;
  bool optional = false;
  bool starrable = false;
};

const std::unordered_map<std::string_view, MacroSpec>& macro_specs() {
  static const std::unordered_map<std::string_view, MacroSpec> specs = {
      {"documentclass", {1, true}},
      {"usepackage", {1, true}},
      {"input", {1}},
      {"include", {1}},
      {"title", {1}},
      {"author", {1}},
      {"date", {1}},
      {"index", {1}},
      {"footnote", {1}},
      {"footahref", {2}},
      {"href", {2}},
      {"url", {1}},
      {"section", {1, true, true}},
      {"subsection", {1, true, true}},
      {"subsubsection", {1, true, true}},
      {"paragraph", {1, true, true}},
      {"item", {0, true}},
      {"giacinput", {1}},
      {"giacinputmath", {1}},
      {"cite", {1, true}},
      {"nocite", {1}},
      {"bibliography", {1}},
      {"bibliographystyle", {1}},
      {"emph", {1}},
      {"textbf", {1}},
      {"textit", {1}},
      {"texttt", {1}},
      {"underline", {1}},
      {"home", {1}},
      {"label", {1}},
      {"ref", {1}},
  };
  return specs;
}

bool has_paragraph_break(std::string_view s) {
  auto first = s.find('\n');
  while (first != std::string_view::npos) {
    auto next = s.find_first_not_of(" \t\r", first + 1);
    if (next != std::string_view::npos && s[next] == '\n') return true;
    first = s.find('\n', first + 1);
  }
  return false;
}

std::size_t utf8_length(unsigned char lead) {
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Position advance_position(Position p, std::string_view consumed) {
  for (char c : consumed) {
    if (c == '\n') {
      ++p.line;
      p.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++p.column;
    }
  }
  return p;
}

class Parser {
 public:
  Parser(std::span<const Token> tokens, Diagnostics& diagnostics)
      : toks_(tokens.begin(), tokens.end()), diags_(diagnostics) {}

  NodeList parse_fragment() {
    NodeList nodes = parse_list(false);
    if (!at_end()) {
      // parse_list stops only at \end here
      const auto pos = peek().position;
      const auto name = read_name_after_end();
      throw TexError(TexErrorKind::MismatchedEnvironment, pos,
                     fmt::format("\\end{{{}}} at {}:{} has no matching \\begin", name, pos.line, pos.column));
    }
    return nodes;
  }

  ParsedDocument parse_document() {
    const auto begin_index = find_document_begin();
    if (!begin_index) {
      throw TexError(TexErrorKind::MissingDocumentEnvironment, Position{},
                     "no \\begin{document} found at the top level");
    }
    ParsedDocument doc;
    {
      Parser preamble(std::span<const Token>(toks_.data(), *begin_index), diags_);
      doc.preamble = preamble.parse_fragment();
    }
    i_ = *begin_index;
    const auto begin_pos = peek().position;
    next();  // \begin
    read_required_argument();  // {document}
    auto env = parse_environment_body("document", begin_pos);
    doc.body = std::move(env.body);
    doc.directives = extract_directives(doc.preamble);
    return doc;
  }

 private:
  [[nodiscard]] bool at_end() const { return i_ >= toks_.size(); }
  [[nodiscard]] const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  [[nodiscard]] bool peek_is_word(std::string_view lexeme) const {
    return !at_end() && peek().kind == TokenKind::ControlWord && peek().lexeme == lexeme;
  }

  std::optional<std::size_t> find_document_begin() const {
    int depth = 0;
    for (std::size_t k = 0; k < toks_.size(); ++k) {
      const auto& t = toks_[k];
      if (t.kind == TokenKind::BeginGroup) ++depth;
      if (t.kind == TokenKind::EndGroup) --depth;
      if (depth == 0 && t.kind == TokenKind::ControlWord && t.lexeme == "\\begin" && k + 3 < toks_.size() &&
          toks_[k + 1].kind == TokenKind::BeginGroup && toks_[k + 2].kind == TokenKind::Text &&
          toks_[k + 2].lexeme == "document" && toks_[k + 3].kind == TokenKind::EndGroup) {
        return k;
      }
    }
    return std::nullopt;
  }

  NodeList parse_list(bool inside_group) {
    NodeList nodes;
    while (!at_end()) {
      const Token& t = peek();
      switch (t.kind) {
        case TokenKind::Text:
          nodes.push_back({TextNode{t.lexeme}});
          next();
          break;
        case TokenKind::Comment:
          nodes.push_back({CommentNode{t.lexeme}});
          next();
          break;
        case TokenKind::VerbatimBlock:
          nodes.push_back({VerbatimNode{std::string(verbatim_content(t)), is_inline_verbatim(t), t.position}});
          next();
          break;
        case TokenKind::BeginGroup:
          nodes.push_back({GroupNode{parse_group()}});
          break;
        case TokenKind::EndGroup:
          if (inside_group) return nodes;
          throw TexError(TexErrorKind::UnbalancedBraces, t.position, "unexpected '}'");
        case TokenKind::MathShift:
          nodes.push_back({parse_dollar_math()});
          break;
        case TokenKind::ControlSymbol:
          if (t.lexeme == "\\[" || t.lexeme == "\\(") {
            nodes.push_back({parse_bracket_math()});
          } else {
            nodes.push_back({MacroNode{t.lexeme.substr(1), {}, {}, std::nullopt, false, t.position}});
            next();
          }
          break;
        case TokenKind::ControlWord:
          if (t.lexeme == "\\end") return nodes;
          if (t.lexeme == "\\begin") {
            nodes.push_back({parse_environment()});
          } else {
            nodes.push_back({parse_macro()});
          }
          break;
      }
    }
    return nodes;
  }

  // Expects the current token to be '{'; consumes through the matching '}'.
  NodeList parse_group() {
    const auto open = next().position;
    NodeList children = parse_list(true);
    if (at_end()) throw TexError(TexErrorKind::UnbalancedBraces, open, "'{' is never closed");
    if (peek().kind != TokenKind::EndGroup) {
      const auto& t = peek();
      throw TexError(TexErrorKind::MismatchedEnvironment, t.position,
                     fmt::format("\\end at {}:{} closes an environment across the group opened at {}:{}",
                                 t.position.line, t.position.column, open.line, open.column));
    }
    next();
    return children;
  }

  MathSpanNode parse_dollar_math() {
    const Token open = next();
    const bool display = open.lexeme == "$$";
    std::string tex;
    while (!at_end()) {
      const Token& t = next();
      if (t.kind == TokenKind::MathShift) {
        if (t.lexeme == open.lexeme) return {tex, display, open.position};
        break;
      }
      if (t.kind == TokenKind::Comment) continue;
      if (!display && t.kind == TokenKind::Text && has_paragraph_break(t.lexeme)) break;
      tex += t.lexeme;
    }
    throw TexError(TexErrorKind::UnterminatedMath, open.position,
                   fmt::format("math opened with '{}' is never closed", open.lexeme));
  }

  MathSpanNode parse_bracket_math() {
    const Token open = next();
    const bool display = open.lexeme == "\\[";
    const std::string_view close = display ? "\\]" : "\\)";
    std::string tex;
    while (!at_end()) {
      const Token& t = next();
      if (t.kind == TokenKind::ControlSymbol && t.lexeme == close) return {tex, display, open.position};
      if (t.kind == TokenKind::MathShift) break;
      if (t.kind == TokenKind::Comment) continue;
      if (!display && t.kind == TokenKind::Text && has_paragraph_break(t.lexeme)) break;
      tex += t.lexeme;
    }
    throw TexError(TexErrorKind::UnterminatedMath, open.position,
                   fmt::format("math opened with '{}' is never closed", open.lexeme));
  }

  EnvironmentNode parse_environment() {
    const auto begin_pos = next().position;
    const auto name = trim(read_required_argument().raw);
    return parse_environment_body(name, begin_pos);
  }

  EnvironmentNode parse_environment_body(const std::string& name, Position begin_pos) {
    EnvironmentNode env{name, parse_list(false), begin_pos};
    if (at_end()) {
      throw TexError(TexErrorKind::MismatchedEnvironment, begin_pos,
                     fmt::format("\\begin{{{}}} at {}:{} is never closed", name, begin_pos.line, begin_pos.column));
    }
    const auto end_pos = peek().position;
    const auto end_name = read_name_after_end();
    if (end_name != name) {
      throw TexError(TexErrorKind::MismatchedEnvironment, end_pos,
                     fmt::format("\\begin{{{}}} at {}:{} is closed by \\end{{{}}} at {}:{}", name, begin_pos.line,
                                 begin_pos.column, end_name, end_pos.line, end_pos.column));
    }
    return env;
  }

  // Current token is \end.
  std::string read_name_after_end() {
    next();
    return trim(read_required_argument().raw);
  }

  struct Argument {
    NodeList nodes;
    std::string raw;
    bool present = false;
  };

  void skip_blank_tokens() {
    while (!at_end()) {
      auto& t = toks_[i_];
      if (t.kind == TokenKind::Comment) {
        ++i_;
      } else if (t.kind == TokenKind::Text) {
        const auto keep = t.lexeme.find_first_not_of(" \t\r\n");
        if (keep == std::string::npos) {
          ++i_;
          continue;
        }
        if (keep > 0) {
          t.position = advance_position(t.position, std::string_view(t.lexeme).substr(0, keep));
          t.lexeme.erase(0, keep);
        }
        return;
      } else {
        return;
      }
    }
  }

  Argument read_required_argument() {
    skip_blank_tokens();
    if (at_end()) return {};
    auto& t = toks_[i_];
    switch (t.kind) {
      case TokenKind::BeginGroup: {
        const auto start = i_ + 1;
        Argument arg;
        arg.nodes = parse_group();
        arg.raw = detokenize(std::span<const Token>(toks_.data() + start, i_ - 1 - start));
        arg.present = true;
        return arg;
      }
      case TokenKind::Text: {
        const auto len = std::min(utf8_length(static_cast<unsigned char>(t.lexeme[0])), t.lexeme.size());
        std::string ch = t.lexeme.substr(0, len);
        t.position = advance_position(t.position, ch);
        t.lexeme.erase(0, len);
        if (t.lexeme.empty()) ++i_;
        return {NodeList{{TextNode{ch}}}, ch, true};
      }
      case TokenKind::ControlWord:
      case TokenKind::ControlSymbol: {
        if (t.lexeme == "\\end" || t.lexeme == "\\begin") return {};
        const Token& cs = next();
        return {NodeList{{MacroNode{cs.lexeme.substr(1), {}, {}, std::nullopt, false, cs.position}}}, cs.lexeme, true};
      }
      default:
        return {};
    }
  }

  // `[...]` immediately after optional whitespace; returns nullopt and
  // consumes nothing when absent or unterminated.
  std::optional<std::string> read_optional_argument() {
    std::size_t k = i_;
    std::size_t offset = 0;
    while (k < toks_.size() && toks_[k].kind == TokenKind::Text) {
      const auto first = toks_[k].lexeme.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) {
        ++k;
        continue;
      }
      offset = first;
      break;
    }
    if (k >= toks_.size() || toks_[k].kind != TokenKind::Text || toks_[k].lexeme[offset] != '[') return std::nullopt;
    if (has_paragraph_break(detokenize(std::span<const Token>(toks_.data() + i_, k - i_)))) return std::nullopt;

    std::string raw;
    int depth = 0;
    std::size_t j = k;
    std::size_t start = offset + 1;
    while (j < toks_.size()) {
      const auto& t = toks_[j];
      if (t.kind == TokenKind::Text) {
        for (std::size_t c = start; c < t.lexeme.size(); ++c) {
          if (t.lexeme[c] == ']' && depth == 0) {
            raw += t.lexeme.substr(start, c - start);
            auto& tail = toks_[j];
            tail.position = advance_position(tail.position, std::string_view(tail.lexeme).substr(0, c + 1));
            tail.lexeme.erase(0, c + 1);
            i_ = tail.lexeme.empty() ? j + 1 : j;
            return raw;
          }
        }
        raw += t.lexeme.substr(start);
      } else {
        if (t.kind == TokenKind::BeginGroup) ++depth;
        if (t.kind == TokenKind::EndGroup && --depth < 0) return std::nullopt;
        raw += t.lexeme;
      }
      start = 0;
      ++j;
    }
    return std::nullopt;
  }

  bool read_star() {
    if (at_end() || peek().kind != TokenKind::Text || !peek().lexeme.starts_with('*')) return false;
    auto& t = toks_[i_];
    t.lexeme.erase(0, 1);
    ++t.position.column;
    if (t.lexeme.empty()) ++i_;
    return true;
  }

  void push_argument(MacroNode& macro, Argument arg) {
    macro.args.push_back(std::move(arg.nodes));
    macro.raw_args.push_back(std::move(arg.raw));
  }

  MacroNode parse_macro() {
    const Token& word = next();
    MacroNode macro{word.lexeme.substr(1), {}, {}, std::nullopt, false, word.position};

    if (macro.name == "newcommand" || macro.name == "renewcommand" || macro.name == "providecommand") {
      diags_.warning(macro.position, fmt::format("\\{} is not expanded; the definition is kept as-is", macro.name));
      macro.star = read_star();
      push_argument(macro, read_required_argument());
      while (auto opt = read_optional_argument()) {
        if (!macro.optional_arg) macro.optional_arg = std::move(opt);
      }
      push_argument(macro, read_required_argument());
      return macro;
    }

    const auto& specs = macro_specs();
    const auto it = specs.find(macro.name);
    if (it == specs.end()) {
      // Unknown macro: take brace groups that follow with no space between.
      while (!at_end() && peek().kind == TokenKind::BeginGroup) {
        push_argument(macro, read_required_argument());
      }
      return macro;
    }

    const MacroSpec& spec = it->second;
    if (spec.starrable) macro.star = read_star();
    if (spec.optional) macro.optional_arg = read_optional_argument();
    for (int a = 0; a < spec.args; ++a) {
      auto arg = read_required_argument();
      if (!arg.present) {
        diags_.warning(macro.position, fmt::format("\\{} is missing argument {}", macro.name, a + 1));
      }
      push_argument(macro, std::move(arg));
    }
    return macro;
  }

  PreambleDirectives extract_directives(const NodeList& preamble) {
    PreambleDirectives d;
    walk(preamble, [&](const DocNode& node) {
      const auto* m = node.as<MacroNode>();
      if (m == nullptr) return;
      if (m->name == "input" && !m->raw_args.empty()) {
        const auto file = trim(m->raw_args[0]);
        if (file == "giac.tex" || file == "giac") d.giac_enabled = true;
      } else if (m->name == "giacmathjax") {
        d.mathjax_mode = true;
      } else if (m->name == "makeindex") {
        d.make_index = true;
      } else if (m->name == "title" && !m->args.empty()) {
        d.title = trim(plain_text(m->args[0]));
      } else if (m->name == "author" && !m->args.empty()) {
        d.author = trim(plain_text(m->args[0]));
      }
    });
    return d;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Diagnostics& diags_;
};

}  // namespace

ParsedDocument parse_document(std::span<const Token> tokens, Diagnostics& diagnostics) {
  return Parser(tokens, diagnostics).parse_document();
}

NodeList parse_fragment(std::span<const Token> tokens, Diagnostics& diagnostics) {
  return Parser(tokens, diagnostics).parse_fragment();
}

std::vector<const MathSpanNode*> extract_math_spans(const NodeList& body) {
  std::vector<const MathSpanNode*> spans;
  walk(body, [&](const DocNode& node) {
    if (const auto* span = node.as<MathSpanNode>()) spans.push_back(span);
  });
  return spans;
}

std::string plain_text(const NodeList& nodes) {
  std::string out;
  for (const auto& node : nodes) {
    if (const auto* text = node.as<TextNode>()) {
      out += text->text;
    } else if (const auto* group = node.as<GroupNode>()) {
      out += plain_text(group->children);
    } else if (const auto* math = node.as<MathSpanNode>()) {
      out += math->tex;
    } else if (const auto* verb = node.as<VerbatimNode>()) {
      out += verb->text;
    } else if (const auto* env = node.as<EnvironmentNode>()) {
      out += plain_text(env->body);
    } else if (const auto* macro = node.as<MacroNode>()) {
      const auto& name = macro->name;
      if (name == "LaTeX" || name == "TeX") {
        out += name;
      } else if (name == "home") {
        out += "~";
        if (!macro->args.empty()) out += plain_text(macro->args[0]);
      } else if (name == " " || name == "\\") {
        out += ' ';
      } else if (name.size() == 1 && std::string_view("%&#_${}~^").find(name[0]) != std::string_view::npos) {
        out += name;
      } else if (name == "index" || name == "label" || name == "footnote") {
        // not part of the surrounding text
      } else {
        for (const auto& arg : macro->args) out += plain_text(arg);
      }
    }
  }
  return out;
}

}  // namespace castml::tex
