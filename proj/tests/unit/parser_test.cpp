#include <gtest/gtest.h>

#include "castml/tex/document.hpp"
#include "test_files.hpp"

namespace castml::tex {
namespace {

ParsedDocument parse(std::string_view src, Diagnostics& diags) { return parse_document(tokenize(src), diags); }

ParsedDocument parse(std::string_view src) {
  Diagnostics diags;
  return parse(src, diags);
}

NodeList fragment(std::string_view src) {
  Diagnostics diags;
  return parse_fragment(tokenize(src), diags);
}

std::string wrap(std::string_view body) { return "\\documentclass{article}\n\\begin{document}\n" + std::string(body) + "\n\\end{document}\n"; }

TEST(ParseDocument, PreambleDirectives) {
  const auto doc = parse("\\makeindex\n\\input{giac.tex}\n\n\\giacmathjax\n\\begin{document}\\end{document}");
  EXPECT_TRUE(doc.directives.giac_enabled);
  EXPECT_TRUE(doc.directives.mathjax_mode);
  EXPECT_TRUE(doc.directives.make_index);
  EXPECT_FALSE(doc.directives.title.has_value());
}

TEST(ParseDocument, NoDirectivesByDefault) {
  const auto doc = parse("\\documentclass{article}\\begin{document}x\\end{document}");
  EXPECT_EQ(doc.directives, PreambleDirectives{});
}

TEST(ParseDocument, TitleAndAuthor) {
  const auto doc = parse("\\title{Computations}\\author{A. Writer}\\begin{document}\\end{document}");
  EXPECT_EQ(doc.directives.title, "Computations");
  EXPECT_EQ(doc.directives.author, "A. Writer");
}

TEST(ParseDocument, ItemizeStructure) {
  const auto body = fragment("\\begin{itemize}\\item a\\end{itemize}");
  ASSERT_EQ(body.size(), 1u);
  const auto* env = body[0].as<EnvironmentNode>();
  ASSERT_NE(env, nullptr);
  EXPECT_EQ(env->name, "itemize");
  ASSERT_EQ(env->body.size(), 2u);
  ASSERT_NE(env->body[0].as<MacroNode>(), nullptr);
  EXPECT_EQ(env->body[0].as<MacroNode>()->name, "item");
  ASSERT_NE(env->body[1].as<TextNode>(), nullptr);
  EXPECT_EQ(env->body[1].as<TextNode>()->text, " a");
}

TEST(ParseDocument, UnclosedEnvironmentIsMismatched) {
  try {
    parse("\\begin{document}\\begin{giacjshere}x\\end{document}");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::MismatchedEnvironment);
    // both positions are reported
    EXPECT_NE(std::string(e.what()).find("1:17"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("1:36"), std::string::npos) << e.what();
  }
}

TEST(ParseDocument, MismatchedNames) {
  try {
    fragment("\\begin{itemize}\\end{enumerate}");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::MismatchedEnvironment);
  }
}

TEST(ParseDocument, MissingDocumentEnvironment) {
  try {
    parse("\\documentclass{article}\nhello");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::MissingDocumentEnvironment);
  }
}

TEST(ParseDocument, BodyStopsAtEndDocument) {
  const auto doc = parse("\\begin{document}a\\end{document}ignored \\undefined{");
  ASSERT_EQ(doc.body.size(), 1u);
  EXPECT_EQ(doc.body[0].as<TextNode>()->text, "a");
}

TEST(ParseDocument, UnknownMacroPreserved) {
  const auto body = fragment("before \\frobnicate{x} after");
  bool found = false;
  walk(body, [&](const DocNode& n) {
    if (const auto* m = n.as<MacroNode>(); m && m->name == "frobnicate") {
      found = true;
      ASSERT_EQ(m->args.size(), 1u);
      EXPECT_EQ(plain_text(m->args[0]), "x");
    }
  });
  EXPECT_TRUE(found);
}

TEST(ParseDocument, NewcommandWarnsAndIsPreserved) {
  Diagnostics diags;
  const auto doc = parse(wrap("\\newcommand{\\foo}{bar}\\foo"), diags);
  EXPECT_EQ(diags.count(Severity::Warning), 1u);
  std::vector<std::string> names;
  walk(doc.body, [&](const DocNode& n) {
    if (const auto* m = n.as<MacroNode>()) names.push_back(m->name);
  });
  EXPECT_NE(std::find(names.begin(), names.end(), "newcommand"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "foo"), names.end());
}

TEST(ParseDocument, StarAndOptionalArgument) {
  const auto body = fragment("\\section*[short]{Long title}");
  const auto* m = body.at(0).as<MacroNode>();
  ASSERT_NE(m, nullptr);
  EXPECT_TRUE(m->star);
  EXPECT_EQ(m->optional_arg, "short");
  EXPECT_EQ(plain_text(m->args.at(0)), "Long title");
}

TEST(ParseDocument, FootahrefTakesTwoArguments) {
  const auto body = fragment("\\footahref{https://h/\\home{u}/f.html}{{\\tt f}}");
  const auto* m = body.at(0).as<MacroNode>();
  ASSERT_NE(m, nullptr);
  ASSERT_EQ(m->args.size(), 2u);
  EXPECT_EQ(plain_text(m->args[0]), "https://h/~u/f.html");
  ASSERT_NE(m->args[1].at(0).as<GroupNode>(), nullptr);
}

TEST(ParseDocument, CommentsKeptInTree) {
  const auto body = fragment("a % remark\nb");
  bool seen = false;
  walk(body, [&](const DocNode& n) {
    if (const auto* c = n.as<CommentNode>()) seen = c->text == "% remark";
  });
  EXPECT_TRUE(seen);
}

TEST(ParseDocument, Deterministic) {
  const std::string src = testing::read_file(testing::test_path("corpus/castex.tex"));
  const auto a = parse(src);
  const auto b = parse(src);
  EXPECT_EQ(a.body, b.body);
  EXPECT_EQ(a.directives, b.directives);
}

TEST(ExtractMathSpans, InlineDollar) {
  const auto body = fragment("$x^2$");
  const auto spans = extract_math_spans(body);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0]->tex, "x^2");
  EXPECT_FALSE(spans[0]->display);
}

TEST(ExtractMathSpans, DisplayBrackets) {
  const auto body = fragment("\\[ \\frac{a}{b} \\]");
  const auto spans = extract_math_spans(body);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0]->tex, " \\frac{a}{b} ");
  EXPECT_TRUE(spans[0]->display);
}

TEST(ExtractMathSpans, DoubleDollarIsDisplayAndOrderKept) {
  const auto body = fragment("$a$ text $$b$$ \\emph{$c$}");
  const auto spans = extract_math_spans(body);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0]->tex, "a");
  EXPECT_FALSE(spans[0]->display);
  EXPECT_EQ(spans[1]->tex, "b");
  EXPECT_TRUE(spans[1]->display);
  EXPECT_EQ(spans[2]->tex, "c");
}

TEST(ExtractMathSpans, EscapedDollarInsideMath) {
  const auto body = fragment("$\\$5$");
  const auto spans = extract_math_spans(body);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0]->tex, "\\$5");
}

TEST(ExtractMathSpans, Unterminated) {
  try {
    fragment("$x");
    FAIL() << "expected TexError";
  } catch (const TexError& e) {
    EXPECT_EQ(e.kind(), TexErrorKind::UnterminatedMath);
  }
}

TEST(ExtractMathSpans, NoneInVerbatim) {
  EXPECT_TRUE(extract_math_spans(fragment("\\verb|$x$| \\begin{verbatim}\n$y$\n\\end{verbatim}")).empty());
}

TEST(Corpus, ParsesWithExpectedShape) {
  Diagnostics diags;
  const auto doc = parse(testing::read_file(testing::test_path("corpus/castex.tex")), diags);
  EXPECT_TRUE(doc.directives.giac_enabled);
  EXPECT_TRUE(doc.directives.make_index);
  EXPECT_TRUE(doc.directives.mathjax_mode);
  EXPECT_FALSE(diags.has_errors());
  int sections = 0;
  int verbatims = 0;
  walk(doc.body, [&](const DocNode& n) {
    if (const auto* m = n.as<MacroNode>(); m && m->name == "section") ++sections;
    if (const auto* v = n.as<VerbatimNode>(); v && !v->inline_form) ++verbatims;
  });
  EXPECT_EQ(sections, 2);
  EXPECT_EQ(verbatims, 4);
}

}  // namespace
}  // namespace castml::tex
