#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "earring/errors.hpp"
#include "earring/word.hpp"

using namespace earring;
using earring::testing::all_words;
using earring::testing::equivalent_all_subsets;
using earring::testing::naive_reduce;
using earring::testing::random_word;
using earring::testing::reduced_by_definition;

namespace {

Word W(const char* text) { return parse_word(text); }

}  // namespace

TEST_CASE("parse_word maps tokens to letters") {
  CHECK(W("d1 d2 d1^-") == Word{gen(1), gen(2), inv(1)});
  CHECK(W("").empty());
  CHECK(W("ε").empty());
  CHECK(W("d1^- d1^-") == Word{inv(1), inv(1)});
  CHECK(W("  d12\td3^-\n") == Word{gen(12), inv(3)});
}

TEST_CASE("parse_word names the offending token") {
  for (const char* bad : {"d0", "x1", "d", "d1^", "d1^+", "d-1", "d1 d2^-- d3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(W(bad), ParseError);
  }
  try {
    W("d1 d2 q7");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.token() == "q7");
    CHECK(e.position() == 2);
  }
}

TEST_CASE("to_string round-trips") {
  CHECK(to_string(Word{}) == "ε");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(rng, 10, 12);
    CHECK(parse_word(to_string(w)) == w);
  }
}

TEST_CASE("inverse") {
  CHECK(inverse(W("d1 d2")) == W("d2^- d1^-"));
  CHECK(inverse(Word{}).empty());
  CHECK(inverse(inverse(W("d1 d1 d2^-"))) == W("d1 d1 d2^-"));
  CHECK(gen(4).inverse().inverse() == gen(4));
}

TEST_CASE("concat") {
  CHECK(concat(W("d1"), W("d1^-")) == W("d1 d1^-"));
  CHECK(concat(W("d3 d2"), Word{}) == W("d3 d2"));
  CHECK(concat(concat(W("d1"), W("d2")), W("d3")) == concat(W("d1"), concat(W("d2"), W("d3"))));
}

TEST_CASE("project") {
  CHECK(project(W("d1 d2 d1^- d3"), {1}) == W("d1 d1^-"));
  CHECK(project(W("d1 d2 d1^- d3"), {}).empty());
  CHECK(project(W("d1 d2 d1^- d3"), {2, 3}) == W("d2 d3"));
}

TEST_CASE("free_reduce") {
  CHECK(free_reduce(W("d1 d1^- d2")) == W("d2"));
  CHECK(free_reduce(W("d1 d2 d2^- d1^-")).empty());
  CHECK(free_reduce(W("d1 d2 d1^-")) == W("d1 d2 d1^-"));
}

TEST_CASE("equivalent") {
  CHECK(equivalent(W("d1 d2 d2^-"), W("d1")));
  CHECK_FALSE(equivalent(W("d1 d2"), W("d2 d1")));
  CHECK(equivalent(W("d3 d1^-"), W("d3 d1^-")));
}

TEST_CASE("is_reduced") {
  CHECK(is_reduced(W("d1 d2 d1^-")));
  CHECK_FALSE(is_reduced(W("d1 d1^-")));
  CHECK(is_reduced(Word{}));
}

TEST_CASE("supp") {
  CHECK(supp(W("d1 d2 d1^-")) == GenSet{1, 2});
  CHECK(supp(Word{}).empty());
  CHECK(supp(W("d3^-")) == GenSet{3});
}

TEST_CASE("free_reduce agrees with repeated scanning, exhaustively to length 6 over 3 generators") {
  for (std::size_t len = 0; len <= 6; ++len) {
    for (const Word& w : all_words(len, 3)) {
      const Word r = free_reduce(w);
      REQUIRE(r == naive_reduce(w));
      CHECK(free_reduce(r) == r);
      CHECK(r.size() <= w.size());
      CHECK(is_reduced(r));
    }
  }
}

TEST_CASE("is_reduced matches the subword definition to length 8 over 2 generators") {
  for (std::size_t len = 0; len <= 8; ++len) {
    for (const Word& w : all_words(len, 2)) REQUIRE(is_reduced(w) == reduced_by_definition(w));
  }
}

TEST_CASE("equivalent matches the all-subsets definition and is an equivalence relation") {
  std::mt19937_64 rng(11);
  std::vector<Word> sample;
  for (int i = 0; i < 60; ++i) sample.push_back(random_word(rng, 8, 3));
  // Close the sample under reduction so that equivalent pairs occur.
  for (int i = 0; i < 60; ++i) sample.push_back(free_reduce(sample[i]));
  for (const Word& u : sample) {
    CHECK(equivalent(u, u));
    CHECK(equivalent(u, free_reduce(u)));
    for (const Word& v : sample) {
      const bool uv = equivalent(u, v);
      REQUIRE(uv == equivalent_all_subsets(u, v));
      REQUIRE(uv == equivalent(v, u));
      if (!uv) continue;
      for (const Word& x : sample) {
        if (equivalent(v, x)) REQUIRE(equivalent(u, x));
      }
    }
  }
}

TEST_CASE("projection distributes over concatenation and inverses cancel") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Word v = random_word(rng, 8, 4);
    const Word w = random_word(rng, 8, 4);
    GenSet f;
    for (GenIndex g = 1; g <= 4; ++g) {
      if (rng() & 1) f.insert(g);
    }
    CHECK(project(concat(v, w), f) == concat(project(v, f), project(w, f)));
    CHECK(free_reduce(concat(w, inverse(w))).empty());
  }
}
