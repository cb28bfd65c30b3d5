#include "castml/html/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "castml/embedded.hpp"
#include "castml/math/translator.hpp"
#include "castml/utf8.hpp"

namespace castml::html {

using namespace castml::tex;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int section_level(std::string_view name) {
  if (name == "section") return 1;
  if (name == "subsection") return 2;
  if (name == "subsubsection") return 3;
  if (name == "paragraph") return 4;
  return 0;
}

class AnchorAllocator {
 public:
  std::string take(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int n = 2;; ++n) {
      std::string candidate = fmt::format("{}-{}", base, n);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
};

struct SectionInfo {
  const MacroNode* macro = nullptr;
  std::string title;
  std::string anchor;
  int level = 1;
};

std::vector<SectionInfo> collect_sections(const NodeList& body) {
  std::vector<SectionInfo> out;
  AnchorAllocator anchors;
  walk(body, [&](const DocNode& node) {
    const auto* m = node.as<MacroNode>();
    if (!m) return;
    const int level = section_level(m->name);
    if (level == 0) return;
    SectionInfo s;
    s.macro = m;
    s.title = m->args.empty() ? std::string() : trim(plain_text(m->args[0]));
    s.anchor = anchors.take(slugify(s.title));
    s.level = level;
    out.push_back(std::move(s));
  });
  return out;
}

struct IndexScan {
  std::vector<IndexEntry> entries;
  std::unordered_map<const MacroNode*, std::string> span_ids;
};

IndexScan scan_index(const NodeList& body) {
  IndexScan scan;
  std::map<std::string, std::vector<std::string>> terms;
  int counter = 0;
  walk(body, [&](const DocNode& node) {
    const auto* m = node.as<MacroNode>();
    if (!m || m->name != "index" || m->args.empty()) return;
    std::string id = fmt::format("idx-{}", ++counter);
    scan.span_ids.emplace(m, id);
    std::string term = trim(plain_text(m->args[0]));
    if (!term.empty()) terms[term].push_back(std::move(id));
  });
  for (auto& [term, links] : terms) scan.entries.push_back({term, "", std::move(links)});
  std::stable_sort(scan.entries.begin(), scan.entries.end(), [](const IndexEntry& a, const IndexEntry& b) {
    return std::lexicographical_compare(a.term.begin(), a.term.end(), b.term.begin(), b.term.end(), [](char x, char y) {
      return std::tolower(static_cast<unsigned char>(x)) < std::tolower(static_cast<unsigned char>(y));
    });
  });
  AnchorAllocator anchors;
  for (auto& e : scan.entries) e.anchor = anchors.take("index-" + slugify(e.term));
  return scan;
}

enum class FontWrap { None, Code, Strong, Em };

// Declarations like `{\tt hevea}` that switch the font until the group ends.
std::optional<FontWrap> font_switch(std::string_view name) {
  if (name == "tt" || name == "ttfamily") return FontWrap::Code;
  if (name == "bf" || name == "bfseries") return FontWrap::Strong;
  if (name == "it" || name == "em" || name == "sl" || name == "itshape") return FontWrap::Em;
  if (name == "rm" || name == "sf" || name == "sc" || name == "normalfont" || name == "small" || name == "large" ||
      name == "Large" || name == "footnotesize" || name == "normalsize") {
    return FontWrap::None;
  }
  return std::nullopt;
}

const char* open_tag(FontWrap w) {
  switch (w) {
    case FontWrap::Code: return "<code>";
    case FontWrap::Strong: return "<strong>";
    case FontWrap::Em: return "<em>";
    case FontWrap::None: break;
  }
  return "";
}

const char* close_tag(FontWrap w) {
  switch (w) {
    case FontWrap::Code: return "</code>";
    case FontWrap::Strong: return "</strong>";
    case FontWrap::Em: return "</em>";
    case FontWrap::None: break;
  }
  return "";
}

bool is_ignored_macro(std::string_view n) {
  static const std::set<std::string_view> names = {
      "documentclass", "usepackage", "input", "include", "title", "author", "date", "makeindex", "giacmathjax",
      "label", "bibliography", "bibliographystyle", "nocite", "newcommand", "renewcommand", "providecommand",
      "noindent", "centering", "clearpage", "newpage", "medskip", "bigskip", "smallskip", "hfill", "vfill"};
  return names.count(n) > 0;
}

std::vector<std::string_view> split_paragraphs(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  std::size_t nl = s.find('\n');
  while (nl != std::string_view::npos) {
    std::size_t k = nl + 1;
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\r')) ++k;
    if (k < s.size() && s[k] == '\n') {
      out.push_back(s.substr(start, nl - start));
      while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
      start = k;
      nl = s.find('\n', start);
    } else {
      nl = s.find('\n', nl + 1);
    }
  }
  out.push_back(s.substr(start));
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

// Spaces and at most one line break after a control word are not output.
std::string_view strip_control_space(std::string_view s) {
  std::size_t k = 0;
  while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
  if (k < s.size() && s[k] == '\n') {
    std::size_t j = k + 1;
    while (j < s.size() && (s[j] == ' ' || s[j] == '\t' || s[j] == '\r')) ++j;
    if (j < s.size() && s[j] == '\n') return s.substr(k);  // paragraph break survives
    k = j;
  }
  return s.substr(k);
}

std::string text_html(std::string_view s) {
  std::string escaped = escape(s);
  std::string out;
  out.reserve(escaped.size());
  for (char c : escaped) {
    if (c == '~') {
      out += "&#160;";
    } else {
      out += c;
    }
  }
  return out;
}

class Emitter {
 public:
  Emitter(const NodeList& body, std::span<const GiacCell> cells, const PreambleDirectives& directives,
          const EmitOptions& options, Diagnostics& diagnostics)
      : directives_(directives), options_(options), diags_(diagnostics) {
    for (auto& s : collect_sections(body)) sections_.emplace(s.macro, s);
    toc_ = build_toc(body);
    auto scan = scan_index(body);
    index_ = std::move(scan.entries);
    index_ids_ = std::move(scan.span_ids);
    std::size_t k = 0;
    walk(body, [&](const DocNode& node) {
      const auto* m = node.as<MacroNode>();
      if (!m || !is_cell_macro(m->name) || k >= cells.size()) return;
      if (cells[k].position == m->position) cell_of_.emplace(m, &cells[k++]);
    });
  }

  std::string run(const NodeList& body) {
    std::string out;
    out += "<!DOCTYPE html>\n";
    out += fmt::format("<html lang=\"{}\">\n<head>\n", escape(options_.language, true));
    out += "<meta charset=\"utf-8\"/>\n";
    out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\"/>\n";
    out += "<meta name=\"generator\" content=\"castml\"/>\n";
    std::string title = options_.document_title;
    if (title.empty() && directives_.title) title = *directives_.title;
    if (title.empty()) title = "Untitled document";
    out += fmt::format("<title>{}</title>\n", escape(title));
    out += "<style>\n";
    out += embedded::stylesheet_css();
    out += "</style>\n</head>\n<body>\n";

    render_list(body, out, Ctx{true, nullptr});
    close_paragraph(out);

    if (!footnotes_.empty()) {
      out += "<section class=\"footnotes\">\n<ol>\n";
      for (std::size_t i = 0; i < footnotes_.size(); ++i) {
        out += fmt::format("<li id=\"fn-{0}\">{1} <a href=\"#fnref-{0}\">&#8617;</a></li>\n", i + 1, footnotes_[i]);
      }
      out += "</ol>\n</section>\n";
    }
    if (directives_.giac_enabled) emit_runtime(out);
    out += "</body>\n</html>\n";
    return out;
  }

 private:
  struct Ctx {
    bool block = true;      // paragraphs are managed at this level
    bool* li_open = nullptr;  // set directly inside a list environment
  };

  void open_paragraph(std::string& out, const Ctx& ctx) {
    if (ctx.block && !para_open_) {
      out += "<p>";
      para_open_ = true;
    }
  }

  void close_paragraph(std::string& out) {
    if (para_open_) {
      out += "</p>\n";
      para_open_ = false;
    }
  }

  void block_boundary(std::string& out, const Ctx& ctx) {
    if (ctx.block) close_paragraph(out);
  }

  void emit_runtime(std::string& out) {
    const bool inline_script = options_.standalone || options_.runtime_path.empty();
    if (!options_.standalone && options_.runtime_path.empty()) {
      diags_.warning(Position{}, "no runtime path given; the runtime is inlined");
    }
    if (inline_script) {
      out += "<script>\n";
      out += options_.runtime_source.empty() ? std::string(embedded::runtime_js()) : options_.runtime_source;
      if (out.back() != '\n') out += '\n';
      out += "</script>\n";
    } else {
      out += fmt::format("<script src=\"{}\"></script>\n", escape(options_.runtime_path, true));
    }
  }

  std::string render_inline(const NodeList& nodes) {
    std::string out;
    const bool saved = para_open_;
    para_open_ = false;
    render_list(nodes, out, Ctx{false, nullptr});
    para_open_ = saved;
    return out;
  }

  void render_list(const NodeList& nodes, std::string& out, const Ctx& ctx) { render_range(nodes, 0, nodes.size(), out, ctx); }

  void render_range(const NodeList& nodes, std::size_t begin, std::size_t end, std::string& out, const Ctx& ctx,
                    bool skip_space = false) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto* m = nodes[i].as<MacroNode>();
      if (m && m->args.empty()) {
        if (auto wrap = font_switch(m->name)) {
          // Scope runs to the end of the list, or to the next \item.
          std::size_t stop = i + 1;
          while (stop < end) {
            const auto* next = nodes[stop].as<MacroNode>();
            if (ctx.li_open && next && next->name == "item") break;
            ++stop;
          }
          open_paragraph(out, ctx);
          out += open_tag(*wrap);
          skip_space = false;
          render_range(nodes, i + 1, stop, out, Ctx{false, nullptr}, true);
          out += close_tag(*wrap);
          i = stop - 1;
          continue;
        }
      }
      if (skip_space && nodes[i].as<TextNode>()) {
        render_text(strip_control_space(nodes[i].as<TextNode>()->text), out, ctx);
      } else {
        render_node(nodes[i], out, ctx);
      }
      skip_space = m && m->args.empty() && !m->optional_arg && !m->name.empty() &&
                   std::isalpha(static_cast<unsigned char>(m->name[0]));
    }
  }

  void render_node(const DocNode& node, std::string& out, const Ctx& ctx) {
    if (const auto* text = node.as<TextNode>()) {
      render_text(text->text, out, ctx);
    } else if (const auto* macro = node.as<MacroNode>()) {
      render_macro(*macro, out, ctx);
    } else if (const auto* env = node.as<EnvironmentNode>()) {
      render_environment(*env, out, ctx);
    } else if (const auto* math = node.as<MathSpanNode>()) {
      open_paragraph(out, ctx);
      auto fragment = math::translate_span(math->tex, math->display);
      for (const auto& w : fragment.warnings) diags_.warning(math->position, w);
      if (fragment.error) diags_.warning(math->position, "math: " + *fragment.error);
      out += fragment.xml;
    } else if (const auto* verb = node.as<VerbatimNode>()) {
      if (verb->inline_form) {
        open_paragraph(out, ctx);
        out += "<code>" + escape(verb->text) + "</code>";
      } else {
        block_boundary(out, ctx);
        out += "<pre>";
        if (!verb->text.empty() && verb->text.front() == '\n') out += '\n';
        out += escape(verb->text);
        out += "</pre>\n";
      }
    } else if (const auto* group = node.as<GroupNode>()) {
      render_list(group->children, out, Ctx{ctx.block, nullptr});
    }
    // comments are dropped
  }

  void render_text(std::string_view text, std::string& out, const Ctx& ctx) {
    if (ctx.li_open && !*ctx.li_open && blank(text)) return;
    if (!ctx.block) {
      out += text_html(text);
      return;
    }
    const auto pieces = split_paragraphs(text);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i > 0) close_paragraph(out);
      if (!para_open_ && blank(pieces[i])) continue;
      open_paragraph(out, ctx);
      out += text_html(pieces[i]);
    }
  }

  void render_environment(const EnvironmentNode& env, std::string& out, const Ctx& ctx) {
    const std::string& name = env.name;
    if (name == "itemize" || name == "enumerate" || name == "description") {
      block_boundary(out, ctx);
      const char* tag = name == "enumerate" ? "ol" : "ul";
      out += fmt::format("<{}>\n", tag);
      bool li_open = false;
      const bool saved = para_open_;
      para_open_ = false;
      render_list(env.body, out, Ctx{false, &li_open});
      para_open_ = saved;
      if (li_open) out += "</li>\n";
      out += fmt::format("</{}>\n", tag);
      return;
    }
    if (name == "giacjshere" || name == "document") {
      render_list(env.body, out, Ctx{ctx.block, nullptr});
      return;
    }
    block_boundary(out, ctx);
    const bool saved = para_open_;
    para_open_ = false;
    if (name == "abstract") {
      out += "<section class=\"abstract\">\n<p class=\"abstract-title\">Abstract</p>\n";
    } else if (name == "quote" || name == "quotation") {
      out += "<blockquote>\n";
    } else {
      out += fmt::format("<div class=\"env-{}\">\n", escape(slugify(name), true));
    }
    render_list(env.body, out, Ctx{true, nullptr});
    close_paragraph(out);
    para_open_ = saved;
    if (name == "abstract") {
      out += "</section>\n";
    } else if (name == "quote" || name == "quotation") {
      out += "</blockquote>\n";
    } else {
      out += "</div>\n";
    }
  }

  std::string arg_inline(const MacroNode& m, std::size_t k) {
    return k < m.args.size() ? render_inline(m.args[k]) : std::string();
  }

  std::string arg_text(const MacroNode& m, std::size_t k) {
    return k < m.args.size() ? trim(plain_text(m.args[k])) : std::string();
  }

  void render_macro(const MacroNode& m, std::string& out, const Ctx& ctx) {
    const std::string& n = m.name;
    if (is_ignored_macro(n)) return;

    if (const int level = section_level(n); level > 0) {
      block_boundary(out, ctx);
      const auto it = sections_.find(&m);
      const int h = std::min(level + 1, 6);
      const std::string anchor = it != sections_.end() ? it->second.anchor : slugify(arg_text(m, 0));
      out += fmt::format("<h{0} id=\"{1}\">{2}</h{0}>\n", h, escape(anchor, true), arg_inline(m, 0));
      return;
    }
    if (n == "item") {
      if (ctx.li_open) {
        if (*ctx.li_open) out += "</li>\n";
        out += "<li>";
        *ctx.li_open = true;
        if (m.optional_arg) out += "<strong>" + text_html(*m.optional_arg) + "</strong> ";
      } else {
        diags_.warning(m.position, "\\item outside a list");
      }
      return;
    }
    if (n == "maketitle") {
      block_boundary(out, ctx);
      if (!directives_.title && !directives_.author) return;
      out += "<header class=\"title-block\">\n";
      if (directives_.title) out += "<h1>" + escape(*directives_.title) + "</h1>\n";
      if (directives_.author) out += "<p class=\"author\">" + escape(*directives_.author) + "</p>\n";
      out += "</header>\n";
      return;
    }
    if (n == "tableofcontents") {
      block_boundary(out, ctx);
      if (toc_.empty()) return;
      out += "<nav class=\"toc\">\n";
      render_toc(toc_, out);
      out += "</nav>\n";
      return;
    }
    if (n == "printindex") {
      block_boundary(out, ctx);
      if (index_.empty()) return;
      out += "<section class=\"index\">\n<h2>Index</h2>\n<ul>\n";
      for (const auto& e : index_) {
        out += fmt::format("<li id=\"{}\">{}", escape(e.anchor, true), escape(e.term));
        for (std::size_t i = 0; i < e.back_links.size(); ++i) {
          out += fmt::format("{}<a href=\"#{}\">{}</a>", i == 0 ? ": " : ", ", e.back_links[i], i + 1);
        }
        out += "</li>\n";
      }
      out += "</ul>\n</section>\n";
      return;
    }
    if (n == "par") {
      block_boundary(out, ctx);
      return;
    }
    if (is_cell_macro(n)) {
      if (const auto it = cell_of_.find(&m); it != cell_of_.end()) {
        block_boundary(out, ctx);
        out += emit_cell(*it->second);
        out += '\n';
      } else {
        open_paragraph(out, ctx);
        out += "<code class=\"giac-disabled\">" + escape(m.raw_args.empty() ? "" : m.raw_args[0]) + "</code>";
      }
      return;
    }

    open_paragraph(out, ctx);
    if (n == "index") {
      if (const auto it = index_ids_.find(&m); it != index_ids_.end()) {
        out += fmt::format("<span class=\"index-anchor\" id=\"{}\"></span>", it->second);
      }
    } else if (n == "footnote") {
      footnotes_.push_back(arg_inline(m, 0));
      out += fmt::format("<sup class=\"footnote-ref\"><a id=\"fnref-{0}\" href=\"#fn-{0}\">{0}</a></sup>",
                         footnotes_.size());
    } else if (n == "footahref" || n == "href") {
      out += fmt::format("<a href=\"{}\">{}</a>", escape(arg_text(m, 0), true), arg_inline(m, 1));
    } else if (n == "url") {
      const std::string url = arg_text(m, 0);
      out += fmt::format("<a href=\"{}\">{}</a>", escape(url, true), escape(url));
    } else if (n == "cite") {
      std::string keys;
      std::string_view all = m.raw_args.empty() ? std::string_view() : std::string_view(m.raw_args[0]);
      for (std::size_t start = 0; start <= all.size();) {
        std::size_t comma = all.find(',', start);
        if (comma == std::string_view::npos) comma = all.size();
        const std::string key = trim(all.substr(start, comma - start));
        if (!key.empty()) keys += (keys.empty() ? "" : ", ") + key;
        start = comma + 1;
      }
      if (m.optional_arg) keys += ", " + trim(*m.optional_arg);
      out += "<span class=\"cite\">[" + escape(keys) + "]</span>";
    } else if (n == "emph" || n == "textit") {
      out += "<em>" + arg_inline(m, 0) + "</em>";
    } else if (n == "textbf") {
      out += "<strong>" + arg_inline(m, 0) + "</strong>";
    } else if (n == "texttt") {
      out += "<code>" + arg_inline(m, 0) + "</code>";
    } else if (n == "underline") {
      out += "<u>" + arg_inline(m, 0) + "</u>";
    } else if (n == "home") {
      out += "~" + escape(arg_text(m, 0));
    } else if (n == "ref") {
      out += "<span class=\"ref\">" + escape(arg_text(m, 0)) + "</span>";
    } else if (n == "LaTeX" || n == "TeX") {
      out += n;
    } else if (n == "ldots" || n == "dots") {
      out += "&#8230;";
    } else if (n == "\\" || n == "newline") {
      out += "<br/>";
    } else if (n == " ") {
      out += ' ';
    } else if (n.size() == 1 && !std::isalpha(static_cast<unsigned char>(n[0]))) {
      out += escape(n);
    } else {
      for (std::size_t k = 0; k < m.args.size(); ++k) out += arg_inline(m, k);
    }
  }

  void render_toc(const std::vector<TocEntry>& entries, std::string& out) {
    out += "<ul>\n";
    for (const auto& e : entries) {
      out += fmt::format("<li><a href=\"#{}\">{}</a>", escape(e.anchor, true), escape(e.title));
      if (!e.children.empty()) {
        out += '\n';
        render_toc(e.children, out);
      }
      out += "</li>\n";
    }
    out += "</ul>\n";
  }

  const PreambleDirectives& directives_;
  const EmitOptions& options_;
  Diagnostics& diags_;
  std::unordered_map<const MacroNode*, SectionInfo> sections_;
  std::vector<TocEntry> toc_;
  std::vector<IndexEntry> index_;
  std::unordered_map<const MacroNode*, std::string> index_ids_;
  std::unordered_map<const MacroNode*, const GiacCell*> cell_of_;
  std::vector<std::string> footnotes_;
  bool para_open_ = false;
};

}  // namespace

std::string escape(std::string_view text, bool attribute) {
  const std::string clean = utf8::sanitize_for_xml(text);
  std::string out;
  out.reserve(clean.size());
  for (char c : clean) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += attribute ? "&quot;" : "\"";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string slugify(std::string_view title) {
  std::string out;
  bool hyphen = false;
  for (char c : title) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalnum(u)) {
      if (hyphen && !out.empty()) out += '-';
      hyphen = false;
      out += static_cast<char>(std::tolower(u));
    } else {
      hyphen = true;
    }
  }
  return out.empty() ? "section" : out;
}

std::vector<TocEntry> build_toc(const NodeList& body) {
  std::vector<TocEntry> roots;
  std::vector<TocEntry*> stack;
  for (const auto& s : collect_sections(body)) {
    if (s.macro->star) continue;
    TocEntry entry{s.title, s.anchor, s.level, {}};
    while (!stack.empty() && stack.back()->level >= s.level) stack.pop_back();
    std::vector<TocEntry>& siblings = stack.empty() ? roots : stack.back()->children;
    siblings.push_back(std::move(entry));
    stack.push_back(&siblings.back());
  }
  return roots;
}

std::vector<IndexEntry> build_index(const NodeList& body) { return scan_index(body).entries; }

std::string emit_cell(const GiacCell& cell) {
  std::size_t length = 0;
  for (std::size_t i = 0; i < cell.command.size();) {
    utf8::decode(cell.command, i);
    ++length;
  }
  const std::size_t size = std::max<std::size_t>(20, length + 4);
  return fmt::format(
      "<div class=\"giac-cell\" data-giac-id=\"{}\" data-giac-mode=\"{}\"><input class=\"giac-in\" value=\"{}\" "
      "size=\"{}\"/><button class=\"giac-run\" type=\"button\">ok</button><div class=\"giac-out\" "
      "aria-live=\"polite\"></div></div>",
      escape(cell.id, true), to_string(cell.mode), escape(cell.command, true), size);
}

std::string emit_document(const NodeList& body, std::span<const GiacCell> cells, const PreambleDirectives& directives,
                          const EmitOptions& options, Diagnostics& diagnostics) {
  return Emitter(body, cells, directives, options, diagnostics).run(body);
}

}  // namespace castml::html
