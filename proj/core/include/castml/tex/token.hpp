#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "castml/diagnostics.hpp"

namespace castml::tex {

enum class TokenKind {
  ControlWord,    // \name
  ControlSymbol,  // \ followed by one non-letter
  BeginGroup,     // {
  EndGroup,       // }
  MathShift,      // $ or $$
  Text,
  Comment,        // % up to, not including, the newline
  VerbatimBlock,  // \verb|..| or a whole verbatim environment
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Text;
  std::string lexeme;
  Position position;

  bool operator==(const Token&) const = default;
};

enum class TexErrorKind {
  UnterminatedVerb,
  UnterminatedMath,
  UnbalancedBraces,
  MismatchedEnvironment,
  MissingDocumentEnvironment,
  EmptyCommand,
};

std::string_view to_string(TexErrorKind kind);

/// Structural failure while lexing or parsing a document.
class TexError : public std::runtime_error {
 public:
  TexError(TexErrorKind kind, Position position, const std::string& message);

  [[nodiscard]] TexErrorKind kind() const { return kind_; }
  [[nodiscard]] Position position() const { return position_; }

 private:
  TexErrorKind kind_;
  Position position_;
};

/// Splits LaTeX source into tokens. A leading UTF-8 byte-order mark is
/// dropped; otherwise concatenating the lexemes reproduces `source`.
std::vector<Token> tokenize(std::string_view source);

std::string detokenize(std::span<const Token> tokens);

/// Content of a VerbatimBlock token: the text between the delimiters of
/// `\verb`, or between `\begin{verbatim}` and `\end{verbatim}` with the
/// first newline removed.
std::string_view verbatim_content(const Token& token);

bool is_inline_verbatim(const Token& token);

}  // namespace castml::tex
