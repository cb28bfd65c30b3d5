#include <random>

#include <gtest/gtest.h>

#include "castml/tex/token.hpp"
#include "test_files.hpp"

namespace castml::tex {
namespace {

using testing::read_file;
using testing::test_path;

std::vector<std::pair<TokenKind, std::string>> kinds(const std::vector<Token>& tokens) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const auto& t : tokens) out.emplace_back(t.kind, t.lexeme);
  return out;
}

TEST(Tokenize, GiacinputCommand) {
  const auto tokens = tokenize("\\giacinput{plot(sin(x))}");
  const std::vector<std::pair<TokenKind, std::string>> expected = {
      {TokenKind::ControlWord, "\\giacinput"},
      {TokenKind::BeginGroup, "{"},
      {TokenKind::Text, "plot(sin(x))"},
      {TokenKind::EndGroup, "}"},
  };
  EXPECT_EQ(kinds(tokens), expected);
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, CommentOnly) {
  const auto tokens = tokenize("% note");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].kind, TokenKind::Comment);
  EXPECT_EQ(tokens[0].lexeme, "% note");
}

TEST(Tokenize, CommentStopsBeforeNewline) {
  const auto tokens = tokenize("a% c\nb");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[1].lexeme, "% c");
  EXPECT_EQ(tokens[2].lexeme, "\nb");
}

TEST(Tokenize, ControlSymbolAndMathShift) {
  const auto tokens = tokenize("\\%$$x$$");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].kind, TokenKind::ControlSymbol);
  EXPECT_EQ(tokens[0].lexeme, "\\%");
  EXPECT_EQ(tokens[1].kind, TokenKind::MathShift);
  EXPECT_EQ(tokens[1].lexeme, "$$");
  EXPECT_EQ(tokens[3].lexeme, "$$");
}

TEST(Tokenize, InlineVerbIsOneToken) {
  const auto tokens = tokenize("see \\verb|\\giacinput{plot(sin(x))}| here");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[1].kind, TokenKind::VerbatimBlock);
  EXPECT_TRUE(is_inline_verbatim(tokens[1]));
  EXPECT_EQ(verbatim_content(tokens[1]), "\\giacinput{plot(sin(x))}");
}

TEST(Tokenize, VerbatimEnvironmentContentUntouched) {
  const std::string src = "\\begin{verbatim}\n\\makeindex\n{ % $ }\n\\end{verbatim}";
  const auto tokens = tokenize(src);
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].kind, TokenKind::VerbatimBlock);
  EXPECT_FALSE(is_inline_verbatim(tokens[0]));
  EXPECT_EQ(verbatim_content(tokens[0]), "\\makeindex\n{ % $ }\n");
  EXPECT_EQ(tokens[0].lexeme, src);
}

TEST(Tokenize, UnterminatedVerbAtEndOfInput) {
  try {
    tokenize("x\n\\verb|abc");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::UnterminatedVerb);
    EXPECT_EQ(e.position().line, 2);
    EXPECT_EQ(e.position().column, 1);
  }
}

TEST(Tokenize, UnterminatedVerbatimEnvironment) {
  try {
    tokenize("\\begin{verbatim}\nabc\n");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::UnterminatedVerb);
  }
}

TEST(Tokenize, PositionsAreOneBasedCodePoints) {
  const auto tokens = tokenize("é\\x\n  \\y");
  ASSERT_GE(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].position, (Position{1, 1}));
  EXPECT_EQ(tokens[1].position, (Position{1, 2}));
  EXPECT_EQ(tokens[3].position, (Position{2, 3}));
}

TEST(Tokenize, ByteOrderMarkIsStripped) {
  const auto tokens = tokenize("\xEF\xBB\xBFhello");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].lexeme, "hello");
  EXPECT_EQ(tokens[0].position, (Position{1, 1}));
}

TEST(Tokenize, ControlWordLexemeIsBackslashLetters) {
  for (const auto& t : tokenize(read_file(test_path("corpus/castex.tex")))) {
    if (t.kind != TokenKind::ControlWord) continue;
    ASSERT_GE(t.lexeme.size(), 2u);
    EXPECT_EQ(t.lexeme[0], '\\');
    for (std::size_t i = 1; i < t.lexeme.size(); ++i) EXPECT_TRUE(std::isalpha(static_cast<unsigned char>(t.lexeme[i])));
  }
}

TEST(TokenizeProperty, LosslessOnCorpus) {
  for (const char* file : {"corpus/castex.tex", "corpus/cells.tex"}) {
    const std::string src = read_file(test_path(file));
    EXPECT_EQ(detokenize(tokenize(src)), src) << file;
  }
}

TEST(TokenizeProperty, PositionsNondecreasing) {
  const auto tokens = tokenize(read_file(test_path("corpus/castex.tex")));
  for (std::size_t i = 1; i < tokens.size(); ++i) EXPECT_LE(tokens[i - 1].position, tokens[i].position);
}

TEST(TokenizeProperty, LosslessOnRandomInput) {
  // Random documents over an alphabet rich in TeX specials. Inputs that fail
  // with UnterminatedVerb are skipped; all others must round-trip.
  std::mt19937 rng(20240517);
  const std::string alphabet = "ab \n\\{}$%&^_~[]verbatimgin|";
  int checked = 0;
  for (int round = 0; round < 2000; ++round) {
    std::string s;
    const int len = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < len; ++i) s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    try {
      EXPECT_EQ(detokenize(tokenize(s)), s);
      ++checked;
    } catch (const TexError& e) {
      EXPECT_EQ(e.kind(), TexErrorKind::UnterminatedVerb);
    }
  }
  EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace castml::tex
