#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "castml/diagnostics.hpp"
#include "castml/tex/cells.hpp"
#include "castml/tex/document.hpp"

namespace castml::html {

struct EmitOptions {
  /// Inline the runtime script; otherwise reference `runtime_path`.
  bool standalone = true;
  std::string runtime_path;
  /// Script inlined in standalone mode. Empty selects the built-in runtime.
  std::string runtime_source;
  /// `<title>`; empty falls back to the document's `\title`.
  std::string document_title;
  std::string language = "en";
};

struct TocEntry {
  std::string title;
  std::string anchor;
  int level = 1;  // 1 for \section, 2 for \subsection, ...
  std::vector<TocEntry> children;

  bool operator==(const TocEntry&) const = default;
};

struct IndexEntry {
  std::string term;
  std::string anchor;
  /// Ids of the spans emitted where the term was indexed ("idx-N").
  std::vector<std::string> back_links;

  bool operator==(const IndexEntry&) const = default;
};

/// Escapes `& < >`, and `"` too when `attribute` is set. Invalid UTF-8 and
/// characters outside XML become U+FFFD.
std::string escape(std::string_view text, bool attribute = false);

/// Lowercase ASCII letters and digits joined by single hyphens.
std::string slugify(std::string_view title);

/// One entry per unstarred sectioning command, nested by level. Anchors are
/// slugs, with "-2", "-3", ... appended on collision.
std::vector<TocEntry> build_toc(const tex::NodeList& body);

/// Alphabetized unique `\index` terms.
std::vector<IndexEntry> build_index(const tex::NodeList& body);

/// The interactive cell markup shared with the browser runtime.
std::string emit_cell(const tex::GiacCell& cell);

/// Full HTML5 document. `cells` must be the result of collect_cells on the
/// same body. Non-fatal findings are appended to `diagnostics`.
std::string emit_document(const tex::NodeList& body, std::span<const tex::GiacCell> cells,
                          const tex::PreambleDirectives& directives, const EmitOptions& options,
                          Diagnostics& diagnostics);

}  // namespace castml::html
