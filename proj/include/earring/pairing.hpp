#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "earring/errors.hpp"
#include "earring/word.hpp"

namespace earring {

// An unordered pair of word positions, stored with first <= second.
struct PositionPair {
  std::size_t first = 0;
  std::size_t second = 0;

  static PositionPair of(std::size_t x, std::size_t y) {
    return x <= y ? PositionPair{x, y} : PositionPair{y, x};
  }

  bool contains(std::size_t p) const { return first <= p && p <= second; }

  friend auto operator<=>(const PositionPair&, const PositionPair&) = default;
};

// A set of position pairs over a word. Validity is not an invariant of the
// type; validate_pairing decides it against a concrete word.
class Pairing {
 public:
  Pairing() = default;
  Pairing(std::initializer_list<PositionPair> pairs);
  explicit Pairing(std::vector<PositionPair> pairs);

  const std::vector<PositionPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  void insert(PositionPair p);
  std::set<std::size_t> covered() const;

  friend bool operator==(const Pairing&, const Pairing&) = default;
  friend auto operator<=>(const Pairing&, const Pairing&) = default;

 private:
  std::vector<PositionPair> pairs_;  // sorted, no duplicates
};

enum class Clause {
  PairSize,     // a pair must have two distinct positions
  Disjoint,     // pairs share no position
  Coverage,     // positions between a pair's ends are all paired
  Noncrossing,  // two pairs are disjoint or nested
  Inverse,      // the two letters of a pair are mutually inverse
};

std::string_view clause_name(Clause c);

struct Violation {
  Clause clause;
  std::vector<PositionPair> witness;
  std::size_t position = 0;  // Coverage: the unpaired position
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// `strict` applies the noncrossing clause in the form that forbids nesting as
// well as crossing (any two pairs must be disjoint as intervals). The default
// is disjoint-or-nested. Throws DomainError for out-of-range positions.
ValidationReport validate_pairing(const Pairing& gamma, const Word& w, bool strict = false);

bool is_complete(const Pairing& gamma, const Word& w);

// Partial order on pairs: p ⪯ q iff q's span contains p's span.
bool nests_within(const PositionPair& p, const PositionPair& q);

// A complete noncrossing inverse pairing when w is equivalent to the empty
// word, nullopt otherwise. Generators are processed in increasing index; for
// each generator the unpaired letters sharing the same innermost enclosing
// pair are reduced with leftmost-innermost cancellation and its letters are
// paired as they cancel.
std::optional<Pairing> find_complete_pairing(const Word& w);

// Greedy stack matching of adjacent-after-removal inverse letters. Not
// extendable by any further pair; its unpaired letters spell free_reduce(w).
Pairing maximal_pairing(const Word& w);

// Letters at unpaired positions. Throws PreconditionError if gamma is not
// valid on w.
Word residual_word(const Word& w, const Pairing& gamma);

// Positions lying within the span of some pair.
std::set<std::size_t> bound_positions(const Word& w, const Pairing& gamma);

// Every pair with one end in [lo, hi] has its other end there as well.
bool is_closed_under(const Pairing& gamma, std::size_t lo, std::size_t hi);

struct Span {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  std::size_t size() const { return hi - lo + 1; }
};

class RestrictionError : public PreconditionError {
 public:
  RestrictionError(int hypothesis, const std::string& what)
      : PreconditionError(what), hypothesis_(hypothesis) {}
  int hypothesis() const noexcept { return hypothesis_; }

 private:
  int hypothesis_;
};

// Restriction of gamma to the subword u·v, re-indexed so that u occupies
// positions 0..|u|-1. Checks the three hypotheses that guarantee the result
// is again a noncrossing inverse pairing and throws RestrictionError naming
// the failing one.
Pairing restrict_pairing(const Word& w, const Pairing& gamma, Span u, Span v);

// gamma restricted to the letters whose generator lies in gens, re-indexed to
// positions of project(w, gens).
Pairing restrict_to_generators(const Word& w, const Pairing& gamma, const GenSet& gens);

// Every valid pairing on w (only complete ones if complete_only), sorted.
// Throws ResourceError when |w| > 12.
std::vector<Pairing> enumerate_pairings(const Word& w, bool complete_only);

// `{(0,3),(1,2)}`; `{}` is the empty pairing.
Pairing parse_pairing(std::string_view text);
std::string to_string(const Pairing& gamma);

}  // namespace earring
