#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace puresets {

using Code = mpz_class;

// Hereditarily finite set with its Ackermann code memoized. Elements are kept
// in strictly decreasing code order, which makes the representation canonical.
class PureSet {
 public:
  PureSet();  // the empty set

  // Sorts and deduplicates; throws CapacityError if the code would exceed the bit budget.
  static PureSet from_elements(std::vector<PureSet> elements);

  const Code& code() const { return node_->code; }
  std::span<const PureSet> elements() const { return node_->elements; }
  std::size_t size() const { return node_->elements.size(); }
  bool empty() const { return node_->elements.empty(); }
  unsigned depth() const { return node_->depth; }
  bool contains(const PureSet& y) const;

  friend bool operator==(const PureSet& a, const PureSet& b) {
    return a.node_ == b.node_ || a.code() == b.code();
  }

 private:
  struct Node {
    Code code;
    std::vector<PureSet> elements;
    unsigned depth = 0;
  };
  explicit PureSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static PureSet make_trusted(std::vector<PureSet> sorted_elements, Code code);

  std::shared_ptr<const Node> node_;

  friend PureSet decode(const Code& n);
};

PureSet decode(const Code& n);
Code encode(const PureSet& x);
unsigned depth(const PureSet& x);
bool is_transitive(const PureSet& x);

PureSet matryoshka(unsigned k);   // k nested singletons around the empty set
PureSet von_neumann(unsigned k);  // k-bar = {0-bar, ..., (k-1)-bar}
// S_k as a set (code Z_{k+1} - 1); only materialized for k <= 4.
PureSet universe(unsigned k);

// Bit-index convenience for codes that fit a machine word.
std::uint64_t code_u64(const PureSet& x);

enum class BracesStyle { plain, commas, commas_empty };

std::string print_braces(const PureSet& x, BracesStyle style = BracesStyle::plain);
// Accepts `{}`, `∅` or `0` for the empty set, optional commas between
// elements and arbitrary ASCII whitespace. Throws SyntaxError with a byte offset.
PureSet parse_braces(std::string_view text);

enum class Step : std::uint8_t { up, down };

class DyckWord {
 public:
  DyckWord() = default;
  explicit DyckWord(std::vector<Step> steps) : steps_(std::move(steps)) {}

  // Accepts U/D or 1/0 letters; whitespace is ignored.
  static DyckWord parse(std::string_view text);

  std::span<const Step> steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  std::size_t max_height() const;
  bool is_strict_excursion() const;
  std::string to_string(bool binary = false) const;

  friend bool operator==(const DyckWord&, const DyckWord&) = default;

 private:
  std::vector<Step> steps_;
};

DyckWord to_dyck(const PureSet& x);
PureSet from_dyck(const DyckWord& w);

}  // namespace puresets
