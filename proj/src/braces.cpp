#include <cctype>
#include <optional>

#include "puresets/errors.hpp"
#include "puresets/pure_set.hpp"

namespace puresets {
namespace {

constexpr std::string_view kEmptySign = "\xE2\x88\x85";  // U+2205

void print_into(const PureSet& x, BracesStyle style, std::string& out) {
  if (x.empty()) {
    out += style == BracesStyle::commas_empty ? kEmptySign : std::string_view("{}");
    return;
  }
  out += '{';
  bool first = true;
  for (const auto& y : x.elements()) {
    if (!first && style != BracesStyle::plain) out += ',';
    first = false;
    print_into(y, style, out);
  }
  out += '}';
}

}  // namespace

std::string print_braces(const PureSet& x, BracesStyle style) {
  std::string out;
  print_into(x, style, out);
  return out;
}

PureSet parse_braces(std::string_view text) {
  struct Frame {
    std::vector<PureSet> elements;
    std::size_t open_at;
    bool expect_element = false;  // just saw a comma
  };
  std::vector<Frame> stack;
  std::optional<PureSet> result;
  std::size_t i = 0;

  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto push_element = [&](PureSet s, std::size_t at) {
    if (stack.empty()) {
      if (result) throw SyntaxError(at, "trailing input after a complete set");
      result = std::move(s);
      return;
    }
    stack.back().elements.push_back(std::move(s));
    stack.back().expect_element = false;
  };

  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    std::size_t at = i;
    char c = text[i];
    if (c == '{') {
      if (result) throw SyntaxError(at, "trailing input after a complete set");
      stack.push_back({{}, at});
      ++i;
    } else if (c == '}') {
      if (stack.empty()) throw SyntaxError(at, "unbalanced '}'");
      if (stack.back().expect_element) throw SyntaxError(at, "dangling ','");
      Frame f = std::move(stack.back());
      stack.pop_back();
      ++i;
      push_element(PureSet::from_elements(std::move(f.elements)), at);
    } else if (c == ',') {
      if (stack.empty()) throw SyntaxError(at, "',' outside braces");
      auto& f = stack.back();
      if (f.elements.empty() || f.expect_element) throw SyntaxError(at, "unexpected ','");
      f.expect_element = true;
      ++i;
    } else if (c == '0') {
      ++i;
      push_element(PureSet(), at);
    } else if (text.substr(i, kEmptySign.size()) == kEmptySign) {
      i += kEmptySign.size();
      push_element(PureSet(), at);
    } else {
      throw SyntaxError(at, std::string("unexpected character '") + c + "'");
    }
  }
  if (!stack.empty()) throw SyntaxError(stack.back().open_at, "unclosed '{'");
  if (!result) throw SyntaxError(text.size(), "empty input");
  return *result;
}

}  // namespace puresets
