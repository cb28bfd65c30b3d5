#include "markup_check.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "castml/utf8.hpp"

namespace castml::testing {

const std::string* XmlElement::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::size_t XmlElement::count(std::string_view tag) const {
  std::size_t n = name == tag ? 1 : 0;
  for (const auto& c : children) n += c.count(tag);
  return n;
}

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':'; }
bool name_char(char c) {
  return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class XmlParser {
 public:
  explicit XmlParser(std::string_view s) : s_(s) {}

  std::optional<XmlElement> run(std::string* error) {
    try {
      if (!castml::utf8::is_valid(s_)) fail("invalid UTF-8");
      skip_ws();
      XmlElement root = element();
      skip_ws();
      if (i_ != s_.size()) fail("content after the root element");
      return root;
    } catch (const std::string& msg) {
      if (error) *error = msg + " at byte " + std::to_string(i_);
      return std::nullopt;
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw msg; }
  bool at(std::string_view t) const { return s_.substr(i_, t.size()) == t; }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string name() {
    if (i_ >= s_.size() || !name_start(s_[i_])) fail("expected a name");
    const std::size_t b = i_;
    while (i_ < s_.size() && name_char(s_[i_])) ++i_;
    return std::string(s_.substr(b, i_ - b));
  }
  std::string reference() {
    // at '&'
    const std::size_t semi = s_.find(';', i_);
    if (semi == std::string_view::npos || semi - i_ > 12) fail("unterminated entity reference");
    const std::string_view ref = s_.substr(i_ + 1, semi - i_ - 1);
    i_ = semi + 1;
    if (ref == "amp") return "&";
    if (ref == "lt") return "<";
    if (ref == "gt") return ">";
    if (ref == "quot") return "\"";
    if (ref == "apos") return "'";
    if (ref.size() >= 2 && ref[0] == '#') {
      const bool hex = ref[1] == 'x';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      unsigned long cp = 0;
      for (char c : digits) {
        const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                      : hex && std::isxdigit(static_cast<unsigned char>(c))
                          ? std::tolower(static_cast<unsigned char>(c)) - 'a' + 10
                          : -1;
        if (v < 0) fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      if (!castml::utf8::is_xml_char(static_cast<char32_t>(cp))) fail("reference to a non-XML character");
      return castml::utf8::encode(static_cast<char32_t>(cp));
    }
    fail("undefined entity '" + std::string(ref) + "'");
  }
  std::string char_data(char stop) {
    std::string out;
    while (i_ < s_.size() && s_[i_] != stop) {
      if (s_[i_] == '&') {
        out += reference();
      } else if (stop != '<' && s_[i_] == '<') {
        fail("'<' in attribute value");
      } else {
        out += s_[i_++];
      }
    }
    return out;
  }
  XmlElement element() {
    if (!at("<")) fail("expected '<'");
    ++i_;
    XmlElement e;
    e.name = name();
    std::set<std::string> seen;
    while (true) {
      const std::size_t before = i_;
      skip_ws();
      if (at("/>")) {
        i_ += 2;
        return e;
      }
      if (at(">")) {
        ++i_;
        break;
      }
      if (i_ == before) fail("expected whitespace before attribute");
      std::string key = name();
      if (!seen.insert(key).second) fail("duplicate attribute '" + key + "'");
      skip_ws();
      if (!at("=")) fail("expected '='");
      ++i_;
      skip_ws();
      if (i_ >= s_.size() || (s_[i_] != '"' && s_[i_] != '\'')) fail("unquoted attribute value");
      const char q = s_[i_++];
      std::string value = char_data(q);
      if (i_ >= s_.size()) fail("unterminated attribute value");
      ++i_;
      e.attributes.emplace_back(std::move(key), std::move(value));
    }
    while (true) {
      if (i_ >= s_.size()) fail("unclosed element <" + e.name + ">");
      if (at("</")) {
        i_ += 2;
        const std::string closing = name();
        if (closing != e.name) fail("</" + closing + "> closes <" + e.name + ">");
        skip_ws();
        if (!at(">")) fail("expected '>'");
        ++i_;
        return e;
      }
      if (at("<!--")) {
        const auto end = s_.find("-->", i_);
        if (end == std::string_view::npos) fail("unterminated comment");
        i_ = end + 3;
      } else if (at("<")) {
        e.children.push_back(element());
      } else {
        std::string text = char_data('<');
        if (text.find("]]>") != std::string::npos) fail("']]>' in text");
        e.text += text;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

const std::set<std::string, std::less<>> kVoid = {"area", "base", "br", "col", "embed", "hr", "img",
                                                  "input", "link", "meta", "source", "track", "wbr"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Tag {
  std::string name;
  bool closing = false;
  bool self_closing = false;
  std::size_t end = 0;
};

// Reads the tag starting at html[i] == '<'; nullopt for comments/doctype.
std::optional<Tag> read_tag(std::string_view html, std::size_t i, std::size_t& next) {
  if (html.substr(i, 4) == "<!--") {
    const auto e = html.find("-->", i);
    next = e == std::string_view::npos ? html.size() : e + 3;
    return std::nullopt;
  }
  if (html.substr(i, 2) == "<!") {
    const auto e = html.find('>', i);
    next = e == std::string_view::npos ? html.size() : e + 1;
    return std::nullopt;
  }
  Tag t;
  std::size_t k = i + 1;
  if (k < html.size() && html[k] == '/') {
    t.closing = true;
    ++k;
  }
  const std::size_t b = k;
  while (k < html.size() && (std::isalnum(static_cast<unsigned char>(html[k])) || html[k] == '-')) ++k;
  if (k == b) {
    next = i + 1;  // a literal '<'
    return std::nullopt;
  }
  t.name = lower(html.substr(b, k - b));
  char quote = 0;
  while (k < html.size()) {
    const char c = html[k];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      break;
    }
    ++k;
  }
  t.self_closing = k > 0 && html[k - 1] == '/';
  t.end = k + 1;
  next = std::min(k + 1, html.size());
  return t;
}

}  // namespace

std::optional<XmlElement> parse_xml(std::string_view xml, std::string* error) {
  return XmlParser(xml).run(error);
}

std::string check_html_balance(std::string_view html) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while ((i = html.find('<', i)) != std::string_view::npos) {
    std::size_t next = i + 1;
    auto tag = read_tag(html, i, next);
    if (tag && tag->end > html.size()) return "unterminated tag <" + tag->name;
    i = next;
    if (!tag) continue;
    if (tag->closing) {
      if (stack.empty() || stack.back() != tag->name) {
        return "</" + tag->name + "> does not close " + (stack.empty() ? std::string("anything") : "<" + stack.back() + ">");
      }
      stack.pop_back();
      continue;
    }
    if (kVoid.count(tag->name) || tag->self_closing) continue;
    if (tag->name == "script" || tag->name == "style") {
      const auto close = html.find("</" + tag->name, i);
      if (close == std::string_view::npos) return "unclosed <" + tag->name + ">";
      i = close;
    }
    stack.push_back(tag->name);
  }
  if (!stack.empty()) return "unclosed <" + stack.back() + ">";
  return {};
}

std::size_t count_tags(std::string_view html, std::string_view name) {
  std::size_t n = 0;
  std::size_t i = 0;
  while ((i = html.find('<', i)) != std::string_view::npos) {
    std::size_t next = i + 1;
    auto tag = read_tag(html, i, next);
    i = next;
    if (!tag || tag->closing) continue;
    if (tag->name == name) ++n;
    if (tag->name == "script" || tag->name == "style") {
      const auto close = html.find("</" + tag->name, i);
      i = close == std::string_view::npos ? html.size() : close;
    }
  }
  return n;
}

std::string unescape(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '&') {
      const auto semi = text.find(';', i);
      if (semi != std::string_view::npos) {
        const auto ref = text.substr(i + 1, semi - i - 1);
        std::string rep;
        if (ref == "amp") rep = "&";
        else if (ref == "lt") rep = "<";
        else if (ref == "gt") rep = ">";
        else if (ref == "quot") rep = "\"";
        else if (ref == "apos") rep = "'";
        else if (ref.size() > 1 && ref[0] == '#') {
          const bool hex = ref[1] == 'x' || ref[1] == 'X';
          const auto cp = std::stoul(std::string(ref.substr(hex ? 2 : 1)), nullptr, hex ? 16 : 10);
          rep = castml::utf8::encode(static_cast<char32_t>(cp));
        }
        if (!rep.empty()) {
          out += rep;
          i = semi + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

std::vector<std::string> pre_blocks(std::string_view html) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = html.find("<pre>", i)) != std::string_view::npos) {
    i += 5;
    const auto end = html.find("</pre>", i);
    if (end == std::string_view::npos) break;
    std::string_view body = html.substr(i, end - i);
    // A newline right after <pre> is not part of the content in HTML.
    if (!body.empty() && body.front() == '\n') body.remove_prefix(1);
    out.push_back(unescape(body));
    i = end + 6;
  }
  return out;
}

std::vector<std::string> math_elements(std::string_view html) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = html.find("<math", i)) != std::string_view::npos) {
    if (i + 5 < html.size() && html[i + 5] != '>' && html[i + 5] != ' ') {
      i += 5;
      continue;
    }
    const auto end = html.find("</math>", i);
    if (end == std::string_view::npos) break;
    out.emplace_back(html.substr(i, end + 7 - i));
    i = end + 7;
  }
  return out;
}

}  // namespace castml::testing
