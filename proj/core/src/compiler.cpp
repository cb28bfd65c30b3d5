#include "castml/compiler.hpp"

#include "castml/tex/token.hpp"

namespace castml {

CompileResult compile_document(std::string_view source, const html::EmitOptions& options) {
  CompileResult result;
  try {
    const auto tokens = tex::tokenize(source);
    const auto parsed = tex::parse_document(tokens, result.diagnostics);
    result.directives = parsed.directives;
    result.cells = tex::collect_cells(parsed.body, parsed.directives, result.diagnostics);
    result.math_spans = tex::extract_math_spans(parsed.body).size();
    result.html = html::emit_document(parsed.body, result.cells, parsed.directives, options, result.diagnostics);
    result.ok = true;
  } catch (const tex::TexError& e) {
    result.diagnostics.error(e.position(), e.what());
    result.html.clear();
    result.cells.clear();
  }
  return result;
}

}  // namespace castml
