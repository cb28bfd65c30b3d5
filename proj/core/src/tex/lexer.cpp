#include <cctype>

#include <fmt/format.h>

#include "castml/tex/token.hpp"

namespace castml::tex {

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";
constexpr std::string_view kBeginVerbatim = "\\begin{verbatim}";
constexpr std::string_view kEndVerbatim = "\\end{verbatim}";

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      switch (c) {
        case '\\':
          lex_control();
          break;
        case '{':
          emit(TokenKind::BeginGroup, 1);
          break;
        case '}':
          emit(TokenKind::EndGroup, 1);
          break;
        case '$':
          emit(TokenKind::MathShift, src_.substr(i_, 2) == "$$" ? 2 : 1);
          break;
        case '%': {
          auto end = src_.find('\n', i_);
          if (end == std::string_view::npos) end = src_.size();
          emit(TokenKind::Comment, end - i_);
          break;
        }
        default: {
          std::size_t end = i_;
          while (end < src_.size() && std::string_view("\\{}$%").find(src_[end]) == std::string_view::npos) ++end;
          emit(TokenKind::Text, end - i_);
          break;
        }
      }
    }
    return std::move(tokens_);
  }

 private:
  void lex_control() {
    if (i_ + 1 >= src_.size()) {
      emit(TokenKind::ControlSymbol, 1);
      return;
    }
    if (!is_letter(src_[i_ + 1])) {
      emit(TokenKind::ControlSymbol, 1 + utf8_length(static_cast<unsigned char>(src_[i_ + 1])));
      return;
    }
    std::size_t end = i_ + 1;
    while (end < src_.size() && is_letter(src_[end])) ++end;
    const auto word = src_.substr(i_ + 1, end - i_ - 1);
    if (word == "verb") {
      lex_inline_verb(end);
    } else if (word == "begin" && src_.substr(i_).starts_with(kBeginVerbatim)) {
      const auto close = src_.find(kEndVerbatim, i_ + kBeginVerbatim.size());
      if (close == std::string_view::npos) {
        throw TexError(TexErrorKind::UnterminatedVerb, pos_, "verbatim environment is never closed");
      }
      emit(TokenKind::VerbatimBlock, close + kEndVerbatim.size() - i_);
    } else {
      emit(TokenKind::ControlWord, end - i_);
    }
  }

  void lex_inline_verb(std::size_t after_name) {
    std::size_t j = after_name;
    if (j < src_.size() && src_[j] == '*') ++j;
    if (j >= src_.size() || src_[j] == '\n') {
      throw TexError(TexErrorKind::UnterminatedVerb, pos_, "\\verb without a delimiter");
    }
    const char delimiter = src_[j];
    std::size_t k = j + 1;
    while (k < src_.size() && src_[k] != delimiter && src_[k] != '\n') ++k;
    if (k >= src_.size() || src_[k] != delimiter) {
      throw TexError(TexErrorKind::UnterminatedVerb, pos_,
                     fmt::format("\\verb{} is not closed on the same line", delimiter));
    }
    emit(TokenKind::VerbatimBlock, k + 1 - i_);
  }

  void emit(TokenKind kind, std::size_t length) {
    tokens_.push_back({kind, std::string(src_.substr(i_, length)), pos_});
    for (std::size_t k = i_; k < i_ + length; ++k) {
      const auto byte = static_cast<unsigned char>(src_[k]);
      if (byte == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else if ((byte & 0xC0) != 0x80) {
        ++pos_.column;
      }
    }
    i_ += length;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Position pos_;
  std::vector<Token> tokens_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::ControlWord:
      return "ControlWord";
    case TokenKind::ControlSymbol:
      return "ControlSymbol";
    case TokenKind::BeginGroup:
      return "BeginGroup";
    case TokenKind::EndGroup:
      return "EndGroup";
    case TokenKind::MathShift:
      return "MathShift";
    case TokenKind::Text:
      return "Text";
    case TokenKind::Comment:
      return "Comment";
    case TokenKind::VerbatimBlock:
      return "VerbatimBlock";
  }
  return "?";
}

std::string_view to_string(TexErrorKind kind) {
  switch (kind) {
    case TexErrorKind::UnterminatedVerb:
      return "UnterminatedVerb";
    case TexErrorKind::UnterminatedMath:
      return "UnterminatedMath";
    case TexErrorKind::UnbalancedBraces:
      return "UnbalancedBraces";
    case TexErrorKind::MismatchedEnvironment:
      return "MismatchedEnvironment";
    case TexErrorKind::MissingDocumentEnvironment:
      return "MissingDocumentEnvironment";
    case TexErrorKind::EmptyCommand:
      return "EmptyCommand";
  }
  return "?";
}

TexError::TexError(TexErrorKind kind, Position position, const std::string& message)
    : std::runtime_error(message), kind_(kind), position_(position) {}

std::vector<Token> tokenize(std::string_view source) {
  if (source.starts_with(kBom)) source.remove_prefix(kBom.size());
  return Lexer(source).run();
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const auto& token : tokens) out += token.lexeme;
  return out;
}

bool is_inline_verbatim(const Token& token) {
  return token.kind == TokenKind::VerbatimBlock && !token.lexeme.starts_with(kBeginVerbatim);
}

std::string_view verbatim_content(const Token& token) {
  std::string_view lexeme = token.lexeme;
  if (token.kind != TokenKind::VerbatimBlock) return {};
  if (is_inline_verbatim(token)) {
    lexeme.remove_prefix(5);  // \verb
    if (lexeme.starts_with('*')) lexeme.remove_prefix(1);
    return lexeme.substr(1, lexeme.size() - 2);
  }
  lexeme.remove_prefix(kBeginVerbatim.size());
  lexeme.remove_suffix(kEndVerbatim.size());
  if (lexeme.starts_with("\r\n")) {
    lexeme.remove_prefix(2);
  } else if (lexeme.starts_with('\n')) {
    lexeme.remove_prefix(1);
  }
  return lexeme;
}

}  // namespace castml::tex
