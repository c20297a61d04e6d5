#include <algorithm>
#include <cctype>
#include <optional>

#include "puresets/errors.hpp"
#include "puresets/pure_set.hpp"

namespace puresets {
namespace {

void walk(const PureSet& x, std::vector<Step>& out) {
  out.push_back(Step::up);
  for (const auto& y : x.elements()) walk(y, out);
  out.push_back(Step::down);
}

}  // namespace

DyckWord DyckWord::parse(std::string_view text) {
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == 'U' || c == 'u' || c == '1') {
      steps.push_back(Step::up);
    } else if (c == 'D' || c == 'd' || c == '0') {
      steps.push_back(Step::down);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw SyntaxError(i, std::string("unexpected character '") + c + "' in Dyck word");
    }
  }
  return DyckWord(std::move(steps));
}

std::size_t DyckWord::max_height() const {
  std::ptrdiff_t h = 0, best = 0;
  for (auto s : steps_) {
    h += s == Step::up ? 1 : -1;
    best = std::max(best, h);
  }
  return static_cast<std::size_t>(best);
}

bool DyckWord::is_strict_excursion() const {
  if (steps_.size() < 2) return false;
  std::ptrdiff_t h = 0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    h += steps_[i] == Step::up ? 1 : -1;
    if (h < 0) return false;
    if (h == 0 && i + 1 != steps_.size()) return false;
  }
  return h == 0;
}

std::string DyckWord::to_string(bool binary) const {
  std::string s;
  s.reserve(steps_.size());
  for (auto st : steps_) s += st == Step::up ? (binary ? '1' : 'U') : (binary ? '0' : 'D');
  return s;
}

DyckWord to_dyck(const PureSet& x) {
  std::vector<Step> steps;
  walk(x, steps);
  return DyckWord(std::move(steps));
}

PureSet from_dyck(const DyckWord& w) {
  auto steps = w.steps();
  if (steps.empty()) throw InvalidExcursion(0, "empty word");
  std::vector<std::vector<PureSet>> stack;
  std::optional<PureSet> result;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (result) throw InvalidExcursion(i, "path returns to height 0 before the end");
    if (steps[i] == Step::up) {
      stack.emplace_back();
    } else {
      if (stack.empty()) throw InvalidExcursion(i, "path goes below height 0");
      auto s = PureSet::from_elements(std::move(stack.back()));
      stack.pop_back();
      if (stack.empty())
        result = std::move(s);
      else
        stack.back().push_back(std::move(s));
    }
  }
  if (!result) throw InvalidExcursion(steps.size(), "path does not return to height 0");
  return *result;
}

}  // namespace puresets
