#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace castml::utf8 {

/// Decodes the code point starting at `text[index]` and advances `index`.
/// Returns nullopt for an invalid or truncated sequence (advancing one byte).
std::optional<char32_t> decode(std::string_view text, std::size_t& index);

std::string encode(char32_t codepoint);

/// Characters allowed by the XML 1.0 `Char` production.
bool is_xml_char(char32_t codepoint);

/// Replaces invalid sequences and non-XML characters with U+FFFD.
std::string sanitize_for_xml(std::string_view text);

bool is_valid(std::string_view text);

}  // namespace castml::utf8
