#include <functional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "castml/math/symbols.hpp"
#include "castml/math/translator.hpp"
#include "markup_check.hpp"
#include "test_files.hpp"

namespace castml::math {
namespace {

using testing::parse_xml;

TEST(ParseMath, Identifier) { EXPECT_EQ(parse_math("x"), MathNode::identifier("x")); }

TEST(ParseMath, ScriptBindsTighterThanInfix) {
  const auto expected = MathNode::row({MathNode::sup(MathNode::identifier("x"), MathNode::number("2")),
                                       MathNode::op("+"), MathNode::number("1")});
  EXPECT_EQ(parse_math("x^2+1"), expected);
}

TEST(ParseMath, Fraction) {
  const auto expected = MathNode::frac(
      MathNode::row({MathNode::identifier("a"), MathNode::op("+"), MathNode::identifier("b")}), MathNode::number("2"));
  EXPECT_EQ(parse_math("\\frac{a+b}{2}"), expected);
}

TEST(ParseMath, SqrtAndRoot) {
  EXPECT_EQ(parse_math("\\sqrt{x}"), MathNode::sqrt(MathNode::identifier("x")));
  EXPECT_EQ(parse_math("\\sqrt[3]{x}"), MathNode::root(MathNode::number("3"), MathNode::identifier("x")));
}

TEST(ParseMath, GreekAndFunctionNames) {
  EXPECT_EQ(parse_math("\\alpha"), MathNode::identifier("α"));
  EXPECT_EQ(parse_math("\\sin").kind, MathKind::FunctionName);
  EXPECT_EQ(parse_math("\\times").kind, MathKind::Operator);
}

TEST(ParseMath, DoubleSuperscriptIsError) { EXPECT_THROW(parse_math("x^2^3"), MathSyntaxError); }

TEST(ParseMath, DanglingScriptIsError) {
  EXPECT_THROW(parse_math("x^"), MathSyntaxError);
  EXPECT_THROW(parse_math("_"), MathSyntaxError);
}

TEST(ParseMath, UnbalancedBracesAreErrors) {
  EXPECT_THROW(parse_math("{x"), MathSyntaxError);
  EXPECT_THROW(parse_math("x}"), MathSyntaxError);
}

TEST(ParseMath, UnknownControlWordDegradesWithWarning) {
  std::vector<std::string> warnings;
  EXPECT_EQ(parse_math("\\foo", &warnings), MathNode::identifier("foo"));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ToMathml, SingleIdentifier) { EXPECT_EQ(to_mathml(MathNode::identifier("x"), false), "<math><mi>x</mi></math>"); }

TEST(ToMathml, Superscript) {
  EXPECT_EQ(to_mathml(MathNode::sup(MathNode::identifier("x"), MathNode::number("2")), false),
            "<math><msup><mi>x</mi><mn>2</mn></msup></math>");
}

TEST(ToMathml, Fraction) {
  EXPECT_EQ(to_mathml(parse_math("\\frac{a}{b}"), false), "<math><mfrac><mi>a</mi><mi>b</mi></mfrac></math>");
}

TEST(ToMathml, DisplayBlock) {
  EXPECT_EQ(to_mathml(MathNode::identifier("x"), true), "<math display=\"block\"><mi>x</mi></math>");
}

TEST(ToMathml, FunctionApplicationOperator) {
  EXPECT_EQ(to_mathml(parse_math("\\sin x"), false),
            "<math><mrow><mi>sin</mi><mo>&#x2061;</mo><mi>x</mi></mrow></math>");
}

TEST(TranslateSpan, EulerIdentity) {
  EXPECT_EQ(translate_span("e^{i\\pi}+1", false).xml,
            "<math><mrow><msup><mi>e</mi><mrow><mi>i</mi><mi>π</mi></mrow></msup><mo>+</mo><mn>1</mn></mrow></math>");
}

TEST(TranslateSpan, SuperscriptSpan) {
  const auto f = translate_span("x^2", false);
  EXPECT_EQ(f.xml, "<math><msup><mi>x</mi><mn>2</mn></msup></math>");
  EXPECT_FALSE(f.error.has_value());
}

TEST(TranslateSpan, MalformedFallsBack) {
  const auto f = translate_span("\\frac{a}{", false);
  ASSERT_TRUE(f.error.has_value());
  const auto tree = parse_xml(f.xml);
  ASSERT_TRUE(tree.has_value()) << f.xml;
  EXPECT_EQ(tree->name, "math");
  ASSERT_NE(tree->attribute("data-math-error"), nullptr);
  EXPECT_EQ(tree->children.at(0).text, "\\frac{a}{");
}

TEST(TranslateSpan, FallbackKeepsDisplay) {
  const auto f = translate_span("x^2^3", true);
  ASSERT_TRUE(f.error.has_value());
  const auto tree = parse_xml(f.xml);
  ASSERT_TRUE(tree.has_value());
  EXPECT_EQ(*tree->attribute("display"), "block");
}

TEST(TranslateSpan, EscapesMarkupCharacters) {
  const auto f = translate_span("a<b \\& c>d", false);
  std::string error;
  EXPECT_TRUE(parse_xml(f.xml, &error).has_value()) << error << " in " << f.xml;
}

TEST(TranslateSpan, Deterministic) {
  for (const char* s : {"x^2+\\frac{1}{2}", "\\sqrt[n]{\\alpha}", "\\frac{a}{"}) {
    EXPECT_EQ(translate_span(s, false).xml, translate_span(s, false).xml);
  }
}

TEST(TranslateSpan, OnlyAllowedVocabulary) {
  const std::set<std::string> allowed = {"math", "mrow", "mi", "mn", "mo", "msup", "msub",
                                         "msubsup", "mfrac", "msqrt", "mroot", "mspace"};
  std::function<void(const testing::XmlElement&)> check = [&](const testing::XmlElement& e) {
    EXPECT_TRUE(allowed.count(e.name)) << e.name;
    for (const auto& c : e.children) check(c);
  };
  for (const char* s : {"\\left(\\frac{1}{2}\\right)", "x_i^2", "\\sum_{i=1}^n i", "a\\,b", "\\mathbb{R}", "\\frac{"}) {
    const auto tree = parse_xml(translate_span(s, false).xml);
    ASSERT_TRUE(tree.has_value()) << s;
    check(*tree);
  }
}

// Goldens: one `tex<TAB>expected` per line, also cross-checked against an
// external translator by tests/scripts/mathml_crosscheck.py.
TEST(Goldens, ConformanceCorpusMatches) {
  const std::string data = testing::read_file(testing::test_path("data/mathml_goldens.tsv"));
  std::size_t count = 0;
  std::size_t start = 0;
  while (start < data.size()) {
    auto end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    const std::string line = data.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const std::string tex = line.substr(0, tab);
    const std::string expected = line.substr(tab + 1);
    const auto f = translate_span(tex, false);
    EXPECT_EQ(f.xml, expected) << tex;
    EXPECT_FALSE(f.error.has_value()) << tex;
    std::string error;
    EXPECT_TRUE(parse_xml(f.xml, &error).has_value()) << tex << ": " << error;
    ++count;
  }
  EXPECT_GE(count, 40u);
}

TEST(TranslateSpanProperty, MsupCountEqualsCaretCount) {
  // Script-only expressions: single letters joined by carets, each
  // superscript braced so no double script arises.
  std::mt19937 rng(99);
  for (int round = 0; round < 500; ++round) {
    std::string tex;
    int carets = 0;
    const int terms = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int t = 0; t < terms; ++t) {
      if (t) tex += "+";
      tex += static_cast<char>('a' + std::uniform_int_distribution<int>(0, 25)(rng));
      const int depth = std::uniform_int_distribution<int>(0, 3)(rng);
      std::string close;
      for (int d = 0; d < depth; ++d) {
        tex += "^{" + std::string(1, static_cast<char>('a' + d));
        close += "}";
        ++carets;
      }
      tex += close;
    }
    const auto tree = parse_xml(translate_span(tex, false).xml);
    ASSERT_TRUE(tree.has_value()) << tex;
    EXPECT_EQ(tree->count("msup"), static_cast<std::size_t>(carets)) << tex;
  }
}

TEST(TranslateSpanProperty, NoUndefinedNamedEntities) {
  for (const char* s : {"\\alpha\\le\\infty", "a<b>c&d", "é+ü", "\\text", "\"'"}) {
    const std::string xml = translate_span(s, false).xml;
    for (std::size_t i = xml.find('&'); i != std::string::npos; i = xml.find('&', i + 1)) {
      const auto semi = xml.find(';', i);
      ASSERT_NE(semi, std::string::npos) << xml;
      const std::string ref = xml.substr(i, semi - i + 1);
      const bool predefined = ref == "&amp;" || ref == "&lt;" || ref == "&gt;" || ref == "&quot;" || ref == "&apos;";
      EXPECT_TRUE(predefined || ref.compare(0, 2, "&#") == 0) << ref << " in " << xml;
    }
  }
}

TEST(TranslateSpanProperty, FuzzAlwaysYieldsMathRoot) {
  std::mt19937 rng(1234);
  for (int round = 0; round < 3000; ++round) {
    std::string s(std::uniform_int_distribution<std::size_t>(0, 64)(rng), '\0');
    for (auto& c : s) c = static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng));
    const auto f = translate_span(s, round % 2 == 0);
    std::string error;
    const auto tree = parse_xml(f.xml, &error);
    ASSERT_TRUE(tree.has_value()) << error << "\n" << f.xml;
    EXPECT_EQ(tree->name, "math");
  }
}

TEST(TranslateSpanProperty, DeepNestingFallsBack) {
  const std::string deep = std::string(5000, '{') + "x" + std::string(5000, '}');
  const auto f = translate_span(deep, false);
  EXPECT_TRUE(f.error.has_value());
  EXPECT_TRUE(parse_xml(f.xml).has_value());
}

TEST(SymbolTable, ParsesLines) {
  const auto t = SymbolTable::parse("# comment\nalpha\t3B1\tident\n\nle\t2264\trel\n");
  EXPECT_EQ(t.size(), 2u);
  ASSERT_NE(t.find("le"), nullptr);
  EXPECT_EQ(t.find("le")->codepoint, U'≤');
  EXPECT_EQ(t.find("le")->cls, SymbolClass::Rel);
  EXPECT_EQ(t.find("beta"), nullptr);
}

TEST(SymbolTable, RejectsMalformedLines) {
  EXPECT_THROW(SymbolTable::parse("alpha\t3B1\n"), std::invalid_argument);
  EXPECT_THROW(SymbolTable::parse("alpha\tzz\tident\n"), std::invalid_argument);
  EXPECT_THROW(SymbolTable::parse("alpha\t3B1\tweird\n"), std::invalid_argument);
}

TEST(SymbolTable, BuiltinCoversGreekAndOperators) {
  const auto& t = builtin_symbols();
  for (const char* name : {"alpha", "omega", "Gamma", "times", "le", "ge", "neq", "infty", "cdot", "pm"}) {
    EXPECT_NE(t.find(name), nullptr) << name;
  }
}

}  // namespace
}  // namespace castml::math
