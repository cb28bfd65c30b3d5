#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace castml::math {

enum class SymbolClass { Ident, Ord, Bin, Rel, Large, Open, Close, Punct };

struct SymbolInfo {
  std::string name;
  char32_t codepoint = 0;
  SymbolClass cls = SymbolClass::Ord;
};

/// Control-word lookup table loaded from `name<TAB>codepoint<TAB>class` lines.
/// Blank lines and lines starting with '#' are ignored; codepoints are hex.
class SymbolTable {
 public:
  static SymbolTable parse(std::string_view text);

  [[nodiscard]] const SymbolInfo* find(std::string_view name) const;
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, SymbolInfo> entries_;
};

/// The table shipped in data/math_symbols.tsv, compiled into the library.
const SymbolTable& builtin_symbols();

std::string_view builtin_symbol_data();

std::optional<SymbolClass> parse_symbol_class(std::string_view name);

}  // namespace castml::math
