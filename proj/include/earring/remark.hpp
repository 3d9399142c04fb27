#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "earring/expr.hpp"
#include "earring/rational.hpp"

namespace earring {

// A finite sequence of naturals. The index set used by the interval recursion
// accepts s with lh(s) >= 1 and s(i) <= i + 1; see in_sigma.
struct SeqIndex {
  std::vector<std::uint32_t> entries;

  std::size_t length() const { return entries.size(); }
  SeqIndex child(std::uint32_t i) const;
  SeqIndex parent() const;

  friend auto operator<=>(const SeqIndex&, const SeqIndex&) = default;
};

bool in_sigma(const SeqIndex& s);
// All members of length exactly n, lexicographic order. There are (n+1)! of them.
std::vector<SeqIndex> enumerate_sigma(std::size_t length);

struct ExactInterval {
  Rational a;
  Rational b;
};

// [a_s, b_s]: a_(0) = 0, a_(1) = 1/2, b_s = a_s + 2^-n / (n+1)!, and
// a_{t*(i)} = b_t + 2^-(n-1) (1/n!) (i/(n+1)) with n = lh(s). Throws
// DomainError for s outside the index set.
ExactInterval remark_interval(const SeqIndex& s);

// Members with 1 <= lh(s) <= depth sorted by a_s.
std::vector<SeqIndex> remark_blocks(std::size_t depth);

// Finite expression: for each block s of remark_blocks(depth), the letters
// d_n d_n^- with n = lh(s). depth 0 throws DomainError.
Expr build_remark_expression(std::size_t depth);

// The full infinitary word (all depths) as nested omega expressions. Its
// projection onto any F ⊆ {1..depth} equals that of
// build_remark_expression(depth).
Expr remark_expression();

std::string to_string(const SeqIndex& s);

}  // namespace earring
