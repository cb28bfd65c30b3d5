#include "castml/tex/cells.hpp"

#include <fmt/format.h>

namespace castml::tex {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

class CellCollector {
 public:
  CellCollector(const PreambleDirectives& directives, Diagnostics& diagnostics)
      : directives_(directives), diags_(diagnostics) {}

  void visit(const NodeList& nodes, int giacjshere_depth) {
    for (const auto& node : nodes) {
      if (const auto* macro = node.as<MacroNode>()) {
        if (is_cell_macro(macro->name)) add(*macro, giacjshere_depth > 0);
        for (const auto& arg : macro->args) visit(arg, giacjshere_depth);
      } else if (const auto* env = node.as<EnvironmentNode>()) {
        visit(env->body, giacjshere_depth + (env->name == "giacjshere" ? 1 : 0));
      } else if (const auto* group = node.as<GroupNode>()) {
        visit(group->children, giacjshere_depth);
      }
    }
  }

  std::vector<GiacCell> take() { return std::move(cells_); }

 private:
  void add(const MacroNode& macro, bool inside) {
    if (!directives_.giac_enabled) {
      diags_.warning(macro.position,
                     fmt::format("\\{} ignored: the preamble does not contain \\input{{giac.tex}}", macro.name));
      return;
    }
    auto command = macro.raw_args.empty() ? std::string() : trim(macro.raw_args[0]);
    if (command.empty()) {
      throw TexError(TexErrorKind::EmptyCommand, macro.position, fmt::format("\\{} has an empty command", macro.name));
    }
    GiacCell cell;
    cell.id = fmt::format("c{}", cells_.size() + 1);
    cell.mode = macro.name == "giacinputmath" ? CellMode::Math : CellMode::Text;
    cell.command = std::move(command);
    cell.inside_giacjshere = inside;
    cell.position = macro.position;
    if (!inside) {
      diags_.warning(macro.position, fmt::format("cell {} is outside a giacjshere environment", cell.id));
    }
    cells_.push_back(std::move(cell));
  }

  const PreambleDirectives& directives_;
  Diagnostics& diags_;
  std::vector<GiacCell> cells_;
};

}  // namespace

std::string_view to_string(CellMode mode) { return mode == CellMode::Math ? "math" : "text"; }

bool is_cell_macro(std::string_view name) { return name == "giacinput" || name == "giacinputmath"; }

std::vector<GiacCell> collect_cells(const NodeList& body, const PreambleDirectives& directives,
                                    Diagnostics& diagnostics) {
  CellCollector collector(directives, diagnostics);
  collector.visit(body, 0);
  return collector.take();
}

}  // namespace castml::tex
