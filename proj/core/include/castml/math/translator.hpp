#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "castml/math/node.hpp"

namespace castml::math {

class MathSyntaxError : public std::runtime_error {
 public:
  MathSyntaxError(std::size_t offset, const std::string& message)
      : std::runtime_error(message), offset_(offset) {}

  /// Byte offset into the math source.
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the interior of a math span. Unknown control words become
/// identifiers and are reported through `warnings` when given.
MathNode parse_math(std::string_view tex, std::vector<std::string>* warnings = nullptr);

/// Serializes to a `<math>` element; `display` adds `display="block"`.
std::string to_mathml(const MathNode& node, bool display);

struct MathMLFragment {
  std::string xml;
  std::optional<std::string> error;  // set when `xml` is the fallback
  std::vector<std::string> warnings;
};

/// parse_math + to_mathml. Never throws on malformed input: a syntax error
/// yields a `<math data-math-error="...">` element holding the raw source.
MathMLFragment translate_span(std::string_view tex, bool display);

}  // namespace castml::math
