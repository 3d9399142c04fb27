#include "earring/remark.hpp"

#include <algorithm>

#include "earring/errors.hpp"

namespace earring {

namespace {

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt pow2(std::size_t n) {
  return BigInt(1) << n;
}

// b_s - a_s for lh(s) = n.
Rational block_length(std::size_t n) {
  return Rational(BigInt(1), pow2(n) * factorial(n + 1));
}

ExactInterval interval_of(const SeqIndex& s) {
  const std::size_t n = s.length();
  Rational a;
  if (n == 1) {
    a = s.entries[0] == 0 ? Rational(0) : Rational(1, 2);
  } else {
    const std::uint32_t i = s.entries.back();
    ExactInterval parent = interval_of(s.parent());
    a = parent.b + Rational(BigInt(1), pow2(n - 1)) * Rational(BigInt(1), factorial(n)) *
                       Rational(BigInt(i), BigInt(n + 1));
  }
  return {a, a + block_length(n)};
}

// Block for s followed by the blocks of all its descendants, in a_s order.
Expr remark_subtree(const SeqIndex& s) {
  const auto n = static_cast<GenIndex>(s.length());
  const std::uint64_t children = n + 2;  // i = 0..n+1
  return Expr::omega(
      "(omega remark-subtree " + to_string(s) + ")",
      [s, n, children](std::uint64_t k) {
        if (k == 1) return Expr::from_word(Word{gen(n), inv(n)});
        if (k >= 2 && k < 2 + children) {
          return remark_subtree(s.child(static_cast<std::uint32_t>(k - 2)));
        }
        return Expr{};
      },
      [n, children](GenIndex m) {
        std::set<std::uint64_t> terms;
        if (m == n) {
          terms.insert(1);
        } else if (m > n) {
          for (std::uint64_t k = 2; k < 2 + children; ++k) terms.insert(k);
        }
        return terms;
      });
}

}  // namespace

SeqIndex SeqIndex::child(std::uint32_t i) const {
  SeqIndex c = *this;
  c.entries.push_back(i);
  return c;
}

SeqIndex SeqIndex::parent() const {
  SeqIndex p = *this;
  if (!p.entries.empty()) p.entries.pop_back();
  return p;
}

bool in_sigma(const SeqIndex& s) {
  if (s.entries.empty()) return false;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    if (s.entries[i] > i + 1) return false;
  }
  return true;
}

std::vector<SeqIndex> enumerate_sigma(std::size_t length) {
  std::vector<SeqIndex> level;
  if (length == 0) return level;
  level.push_back(SeqIndex{});
  for (std::size_t pos = 0; pos < length; ++pos) {
    std::vector<SeqIndex> next;
    next.reserve(level.size() * (pos + 2));
    for (const SeqIndex& t : level) {
      for (std::uint32_t i = 0; i <= pos + 1; ++i) next.push_back(t.child(i));
    }
    level = std::move(next);
  }
  return level;
}

ExactInterval remark_interval(const SeqIndex& s) {
  if (!in_sigma(s)) {
    throw DomainError("sequence " + to_string(s) + " is not in the interval index set");
  }
  return interval_of(s);
}

std::vector<SeqIndex> remark_blocks(std::size_t depth) {
  std::vector<std::pair<Rational, SeqIndex>> keyed;
  for (std::size_t n = 1; n <= depth; ++n) {
    for (SeqIndex& s : enumerate_sigma(n)) {
      keyed.emplace_back(interval_of(s).a, std::move(s));
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<SeqIndex> out;
  out.reserve(keyed.size());
  for (auto& [a, s] : keyed) out.push_back(std::move(s));
  return out;
}

Expr build_remark_expression(std::size_t depth) {
  if (depth == 0) throw DomainError("remark word needs depth >= 1");
  std::vector<Expr> parts;
  for (const SeqIndex& s : remark_blocks(depth)) {
    auto n = static_cast<GenIndex>(s.length());
    parts.push_back(Expr::leaf(gen(n)));
    parts.push_back(Expr::leaf(inv(n)));
  }
  return Expr::cat(std::move(parts));
}

Expr remark_expression() {
  return Expr::omega(
      "(omega remark)",
      [](std::uint64_t k) {
        if (k == 1 || k == 2) return remark_subtree(SeqIndex{{static_cast<std::uint32_t>(k - 1)}});
        return Expr{};
      },
      [](GenIndex m) {
        if (m >= 1) return std::set<std::uint64_t>{1, 2};
        return std::set<std::uint64_t>{};
      });
}

std::string to_string(const SeqIndex& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.entries[i]);
  }
  return out + ")";
}

}  // namespace earring
