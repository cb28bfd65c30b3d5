#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "castml/diagnostics.hpp"
#include "castml/tex/token.hpp"

namespace castml::tex {

struct DocNode;
using NodeList = std::vector<DocNode>;

struct TextNode {
  std::string text;
  bool operator==(const TextNode&) const = default;
};

/// A control word or control symbol together with the arguments it consumed.
/// `name` excludes the backslash. `raw_args[i]` is the exact source of `args[i]`.
struct MacroNode {
  std::string name;
  std::vector<NodeList> args;
  std::vector<std::string> raw_args;
  std::optional<std::string> optional_arg;
  bool star = false;
  Position position;

  bool operator==(const MacroNode&) const = default;
};

struct EnvironmentNode {
  std::string name;
  NodeList body;
  Position position;

  bool operator==(const EnvironmentNode&) const = default;
};

struct MathSpanNode {
  std::string tex;
  bool display = false;
  Position position;

  bool operator==(const MathSpanNode&) const = default;
};

struct VerbatimNode {
  std::string text;
  bool inline_form = false;
  Position position;

  bool operator==(const VerbatimNode&) const = default;
};

struct CommentNode {
  std::string text;
  bool operator==(const CommentNode&) const = default;
};

/// A brace group that is not a macro argument, e.g. `{\tt hevea}`.
struct GroupNode {
  NodeList children;
  bool operator==(const GroupNode&) const = default;
};

struct DocNode {
  using Variant =
      std::variant<TextNode, MacroNode, EnvironmentNode, MathSpanNode, VerbatimNode, CommentNode, GroupNode>;
  Variant value;

  template <typename T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&value);
  }

  bool operator==(const DocNode&) const = default;
};

struct PreambleDirectives {
  bool giac_enabled = false;  // \input{giac.tex}
  bool mathjax_mode = false;  // \giacmathjax
  bool make_index = false;    // \makeindex
  std::optional<std::string> title;
  std::optional<std::string> author;

  bool operator==(const PreambleDirectives&) const = default;
};

struct ParsedDocument {
  PreambleDirectives directives;
  NodeList preamble;
  NodeList body;
};

/// Splits the token stream at `\begin{document}`, extracts the preamble
/// directives, and returns the AST of the document body. Throws TexError on
/// structural problems; non-fatal findings go to `diagnostics`.
ParsedDocument parse_document(std::span<const Token> tokens, Diagnostics& diagnostics);

/// Parses a token stream as a bare body with no document environment.
NodeList parse_fragment(std::span<const Token> tokens, Diagnostics& diagnostics);

/// All math spans in document order, including those nested in macro
/// arguments and environments.
std::vector<const MathSpanNode*> extract_math_spans(const NodeList& body);

/// Concatenated text content of a node list, used for titles, anchors and
/// index terms. Macros contribute their arguments' text.
std::string plain_text(const NodeList& nodes);

/// Depth-first walk in document order. The visitor sees every node, including
/// those inside macro arguments, groups and environments.
template <typename Visitor>
void walk(const NodeList& nodes, Visitor&& visit) {
  for (const auto& node : nodes) {
    visit(node);
    if (const auto* macro = node.as<MacroNode>()) {
      for (const auto& arg : macro->args) walk(arg, visit);
    } else if (const auto* env = node.as<EnvironmentNode>()) {
      walk(env->body, visit);
    } else if (const auto* group = node.as<GroupNode>()) {
      walk(group->children, visit);
    }
  }
}

}  // namespace castml::tex
