#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace castml {

/// 1-based line/column location in a source file. Columns count code points.
struct Position {
  int line = 1;
  int column = 1;

  auto operator<=>(const Position&) const = default;
};

enum class Severity { Note, Warning, Error };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::Warning;
  Position position;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Accumulates diagnostics produced while processing one document.
class Diagnostics {
 public:
  void note(Position position, std::string message);
  void warning(Position position, std::string message);
  void error(Position position, std::string message);
  void add(Diagnostic diagnostic);

  [[nodiscard]] const std::vector<Diagnostic>& items() const { return items_; }
  [[nodiscard]] bool has_errors() const;
  [[nodiscard]] std::size_t count(Severity severity) const;
  [[nodiscard]] bool empty() const { return items_.empty(); }

 private:
  std::vector<Diagnostic> items_;
};

/// Renders `file:line:col: severity: message`.
std::string format_diagnostic(std::string_view file, const Diagnostic& diagnostic);

}  // namespace castml
