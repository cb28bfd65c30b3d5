#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "castml/diagnostics.hpp"
#include "castml/html/emitter.hpp"
#include "castml/tex/cells.hpp"
#include "castml/tex/document.hpp"

namespace castml {

struct CompileResult {
  /// Empty when `ok` is false.
  std::string html;
  tex::PreambleDirectives directives;
  std::vector<tex::GiacCell> cells;
  std::size_t math_spans = 0;
  Diagnostics diagnostics;
  /// False after a structural error (reported in `diagnostics`).
  bool ok = false;
};

/// tokenize, parse_document, collect_cells, emit_document.
CompileResult compile_document(std::string_view source, const html::EmitOptions& options = {});

}  // namespace castml
