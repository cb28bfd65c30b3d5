#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "castml/diagnostics.hpp"
#include "castml/tex/document.hpp"

namespace castml::tex {

enum class CellMode { Math, Text };

std::string_view to_string(CellMode mode);

/// One interactive cell. Ids are "c1", "c2", ... in document order.
struct GiacCell {
  std::string id;
  CellMode mode = CellMode::Math;
  std::string command;
  bool inside_giacjshere = false;
  Position position;

  bool operator==(const GiacCell&) const = default;
};

/// Returns true for `giacinput` and `giacinputmath`.
bool is_cell_macro(std::string_view name);

/// Collects `\giacinput` / `\giacinputmath` cells. Without `\input{giac.tex}`
/// no cells are produced and each macro is reported as a warning. Cells
/// outside a giacjshere environment are kept and reported as warnings.
/// Throws TexError(EmptyCommand) for a blank command.
std::vector<GiacCell> collect_cells(const NodeList& body, const PreambleDirectives& directives,
                                    Diagnostics& diagnostics);

}  // namespace castml::tex
