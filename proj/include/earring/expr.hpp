#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "earring/word.hpp"

namespace earring {

// An infinitary word given intensionally. Its meaning is the family of its
// finite projections; expression order is letter order and an omega node
// concatenates family(1), family(2), ... in increasing k.
//
// Every omega node carries an occurrence bound: family(k) may use generator n
// only when k is in occurrence_bound(n), and that set must be finite. This is
// what makes projections computable.
class Expr {
 public:
  using Family = std::function<Expr(std::uint64_t k)>;
  using OccurrenceBound = std::function<std::set<std::uint64_t>(GenIndex n)>;

  struct Leaf {
    Letter letter;
  };
  struct Cat {
    std::vector<Expr> parts;
  };
  struct Omega {
    std::string description;  // printable form, e.g. "(omega letters 0)"
    Family family;
    OccurrenceBound occurrence_bound;
  };
  struct Inv {
    std::vector<Expr> inner;  // exactly one element
  };

  Expr();  // the empty word

  static Expr leaf(Letter l);
  static Expr cat(std::vector<Expr> parts);
  static Expr omega(std::string description, Family family, OccurrenceBound bound);
  static Expr inv(Expr inner);
  static Expr from_word(const Word& w);

  bool is_leaf() const;
  bool is_cat() const;
  bool is_omega() const;
  bool is_inv() const;
  const Leaf& as_leaf() const;
  const Cat& as_cat() const;
  const Omega& as_omega() const;
  const Expr& inner() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// The F-projection W_F. Throws CertificateViolation if an expanded omega term
// uses a generator of F outside its occurrence bound.
Word expr_project(const Expr& e, const GenSet& gens);

// Compares projections onto {1..n} in the free group. `true` is evidence
// only: a difference may appear at a larger index. `false` is conclusive.
bool expr_equivalent_upto(const Expr& lhs, const Expr& rhs, GenIndex n);

// Expands the top-level omega terms k = 1..max_k and checks that every letter
// with index <= max_index respects its occurrence bound. Nested omegas are
// checked only at the terms their own bounds list. Returns the first
// violation found, or an empty string.
std::string find_bound_violation(const Expr& e, GenIndex max_index, std::uint64_t max_k);

// S-expression syntax:
//   expr  := letter | ε | (cat expr*) | (inv expr) | (omega <rule> <int>*)
//   letter as in parse_word.
// Built-in rules:
//   cancel-pairs s    k ↦ d_{k+s} d_{k+s}^-
//   letters s         k ↦ d_{k+s}
//   inverse-letters s k ↦ d_{k+s}^-
//   blocks s          k ↦ d_{k+s} d_{k+s+1} d_{k+s}^- d_{k+s+1}^-
//   remark            the word read off the cone-over-earring loop
Expr parse_expr(std::string_view text);
Expr make_rule(std::string_view name, const std::vector<std::int64_t>& args);
std::vector<std::string> rule_names();
std::string to_string(const Expr& e);

}  // namespace earring
