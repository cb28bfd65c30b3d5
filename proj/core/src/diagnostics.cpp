#include "castml/diagnostics.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace castml {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Note:
      return "note";
    case Severity::Warning:
      return "warning";
    case Severity::Error:
      return "error";
  }
  return "error";
}

void Diagnostics::note(Position position, std::string message) {
  items_.push_back({Severity::Note, position, std::move(message)});
}

void Diagnostics::warning(Position position, std::string message) {
  items_.push_back({Severity::Warning, position, std::move(message)});
}

void Diagnostics::error(Position position, std::string message) {
  items_.push_back({Severity::Error, position, std::move(message)});
}

void Diagnostics::add(Diagnostic diagnostic) { items_.push_back(std::move(diagnostic)); }

bool Diagnostics::has_errors() const { return count(Severity::Error) > 0; }

std::size_t Diagnostics::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      items_.begin(), items_.end(), [severity](const Diagnostic& d) { return d.severity == severity; }));
}

std::string format_diagnostic(std::string_view file, const Diagnostic& diagnostic) {
  return fmt::format("{}:{}:{}: {}: {}", file, diagnostic.position.line, diagnostic.position.column,
                     to_string(diagnostic.severity), diagnostic.message);
}

}  // namespace castml
