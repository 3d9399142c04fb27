#include <doctest.h>

#include <algorithm>

#include "earring/errors.hpp"
#include "earring/remark.hpp"

using namespace earring;

namespace {

SeqIndex S(std::initializer_list<std::uint32_t> e) { return SeqIndex{std::vector<std::uint32_t>(e)}; }

Rational R(long p, long q = 1) { return Rational(p, q); }

Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Block length at level n: 2^-n / (n+1)!.
Rational L(std::size_t n) {
  Rational p = 1;
  for (std::size_t k = 0; k < n; ++k) p /= 2;
  return p / factorial(n + 1);
}

// Closed form of the left end, unrolled from the recursion by hand.
Rational closed_form_a(const SeqIndex& s) {
  Rational a = Rational(s.entries[0]) / 2;
  for (std::size_t j = 1; j < s.length(); ++j) a += L(j) + 2 * L(j + 1) * s.entries[j];
  return a;
}

}  // namespace

TEST_CASE("interval values") {
  CHECK(remark_interval(S({0})).a == 0);
  CHECK(remark_interval(S({0})).b == R(1, 4));
  CHECK(remark_interval(S({1})).a == R(1, 2));
  CHECK(remark_interval(S({1})).b == R(3, 4));
  CHECK(remark_interval(S({0, 0})).a == R(1, 4));
  CHECK(remark_interval(S({0, 0})).b == R(7, 24));
}

TEST_CASE("membership") {
  CHECK(in_sigma(S({0})));
  CHECK(in_sigma(S({1, 2})));
  CHECK(in_sigma(S({0, 0, 3})));
  CHECK_FALSE(in_sigma(S({})));
  CHECK_FALSE(in_sigma(S({2})));
  CHECK_FALSE(in_sigma(S({0, 3})));
  for (auto bad : {S({}), S({2}), S({1, 3}), S({0, 1, 4})}) {
    CHECK_THROWS_AS(remark_interval(bad), DomainError);
  }
}

TEST_CASE("enumeration counts and order") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = enumerate_sigma(n);
    CHECK(Rational(all.size()) == factorial(n + 1));
    CHECK(std::is_sorted(all.begin(), all.end()));
    for (const auto& s : all) REQUIRE(in_sigma(s));
  }
}

TEST_CASE("recursion matches the closed form and the block length") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& s : enumerate_sigma(n)) {
      const ExactInterval iv = remark_interval(s);
      REQUIRE(iv.a == closed_form_a(s));
      REQUIRE(iv.b - iv.a == L(n));
    }
  }
}

TEST_CASE("siblings are ordered and disjoint") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_sigma(n)) {
      for (std::uint32_t i = 0; i <= n; ++i) {
        const ExactInterval x = remark_interval(t.child(i));
        const ExactInterval y = remark_interval(t.child(i + 1));
        REQUIRE(x.a < x.b);
        REQUIRE(x.b <= y.a);
      }
      CHECK_THROWS_AS(remark_interval(t.child(static_cast<std::uint32_t>(n + 2))), DomainError);
    }
  }
}

TEST_CASE("blocks up to depth 5 have disjoint interiors inside [0, 1]") {
  const auto blocks = remark_blocks(5);
  std::size_t expected = 0;
  for (std::size_t n = 1; n <= 5; ++n) expected += enumerate_sigma(n).size();
  REQUIRE(blocks.size() == expected);
  Rational prev_b = 0;
  for (const auto& s : blocks) {
    const ExactInterval iv = remark_interval(s);
    REQUIRE(0 <= iv.a);
    REQUIRE(iv.b <= 1);
    REQUIRE(prev_b <= iv.a);
    prev_b = iv.b;
  }
}

TEST_CASE("finite remark words") {
  const Word w1 = expr_project(build_remark_expression(1), {1});
  CHECK(w1 == parse_word("d1 d1^- d1 d1^-"));
  CHECK_THROWS_AS(build_remark_expression(0), DomainError);
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    const Expr e = build_remark_expression(depth);
    CHECK(expr_equivalent_upto(e, Expr(), static_cast<GenIndex>(depth)));
    for (GenIndex n = 1; n <= depth; ++n) {
      const Word p = expr_project(e, {n});
      REQUIRE(p.size() == 2 * enumerate_sigma(n).size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        REQUIRE(p[i] == (i % 2 == 0 ? gen(n) : inv(n)));
      }
    }
  }
}

TEST_CASE("the infinitary remark word projects like its finite truncations") {
  const Expr full = remark_expression();
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    GenSet f;
    for (GenIndex n = 1; n <= depth; ++n) f.insert(n);
    REQUIRE(expr_project(full, f) == expr_project(build_remark_expression(depth), f));
  }
  CHECK(expr_equivalent_upto(full, Expr(), 4));
  CHECK(to_string(S({0, 1})) == "(0,1)");
}
