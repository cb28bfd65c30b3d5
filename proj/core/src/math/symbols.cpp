#include "castml/math/symbols.hpp"

#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

#include "castml/embedded.hpp"

namespace castml::math {

std::optional<SymbolClass> parse_symbol_class(std::string_view name) {
  if (name == "ident") return SymbolClass::Ident;
  if (name == "ord") return SymbolClass::Ord;
  if (name == "bin") return SymbolClass::Bin;
  if (name == "rel") return SymbolClass::Rel;
  if (name == "large") return SymbolClass::Large;
  if (name == "open") return SymbolClass::Open;
  if (name == "close") return SymbolClass::Close;
  if (name == "punct") return SymbolClass::Punct;
  return std::nullopt;
}

SymbolTable SymbolTable::parse(std::string_view text) {
  SymbolTable table;
  int line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || line.find('\t', tab2 + 1) != std::string_view::npos) {
      throw std::invalid_argument(fmt::format("symbol table line {}: expected three tab-separated fields", line_no));
    }
    const auto name = line.substr(0, tab1);
    const auto hex = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto cls = parse_symbol_class(line.substr(tab2 + 1));

    std::uint32_t cp = 0;
    const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
    if (name.empty() || ec != std::errc() || ptr != hex.data() + hex.size() || cp > 0x10FFFF) {
      throw std::invalid_argument(fmt::format("symbol table line {}: bad name or codepoint", line_no));
    }
    if (!cls) throw std::invalid_argument(fmt::format("symbol table line {}: unknown class", line_no));
    table.entries_[std::string(name)] = SymbolInfo{std::string(name), static_cast<char32_t>(cp), *cls};
  }
  return table;
}

const SymbolInfo* SymbolTable::find(std::string_view name) const {
  const auto it = entries_.find(std::string(name));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string_view builtin_symbol_data() { return embedded::math_symbols_tsv(); }

const SymbolTable& builtin_symbols() {
  static const SymbolTable table = SymbolTable::parse(builtin_symbol_data());
  return table;
}

}  // namespace castml::math
