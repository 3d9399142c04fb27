#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "earring/errors.hpp"
#include "earring/space.hpp"

using namespace earring;
using earring::testing::random_point;

namespace {

constexpr double kTol = 1e-12;

// The displayed metric evaluated by hand, kept apart from distance().
double oracle_distance(const EPoint& p, const EPoint& q, const SpaceModel& m) {
  auto where = [&](const EPoint& e) -> std::pair<BasePoint, double> {
    if (const auto* b = std::get_if<OnBase>(&e)) return {b->x, 0.0};
    const auto& c = std::get<OnCircle>(e);
    const double arc = std::min(c.theta, 1.0 - c.theta);
    return {m.dense_point(c.n), arc / c.n};
  };
  const auto* cp = std::get_if<OnCircle>(&p);
  const auto* cq = std::get_if<OnCircle>(&q);
  if (cp && cq && cp->n == cq->n) {
    const double d = std::abs(cp->theta - cq->theta);
    return std::min(d, 1.0 - d) / cp->n;
  }
  const auto [x, hp] = where(p);
  const auto [y, hq] = where(q);
  return m.base_distance(x, y) + hp + hq;
}

}  // namespace

TEST_CASE("circle_metric") {
  CHECK(circle_metric(0.0, 0.5) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(circle_metric(0.3, 0.3) == 0.0);
  CHECK(circle_metric(0.1, 0.9) == doctest::Approx(0.2).epsilon(kTol));
  CHECK_THROWS_AS(circle_metric(1.0, 0.2), DomainError);
  CHECK_THROWS_AS(circle_metric(-0.1, 0.2), DomainError);
}

TEST_CASE("dense enumeration of the unit square") {
  const auto sq = unit_square();
  CHECK(sq->dense_point(1) == BasePoint{0, 0});
  CHECK(sq->dense_point(2) == BasePoint{1, 0});
  CHECK(sq->dense_point(3) == BasePoint{0, 1});
  CHECK(sq->dense_point(4) == BasePoint{1, 1});
  CHECK(sq->dense_point(5) == BasePoint{0.5, 0});
  CHECK_THROWS_AS(sq->dense_point(0), DomainError);
  CHECK_THROWS_AS(sq->dense_point(static_cast<GenIndex>(sq->materialized() + 1)), DomainError);
  for (std::size_t i = 1; i <= sq->materialized(); ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      REQUIRE(sq->dense_point(static_cast<GenIndex>(i)) != sq->dense_point(static_cast<GenIndex>(j)));
    }
  }
  const auto disk = unit_disk();
  for (std::size_t i = 1; i <= disk->materialized(); ++i) {
    REQUIRE(disk->contains(disk->dense_point(static_cast<GenIndex>(i))));
  }
}

TEST_CASE("distance examples") {
  const auto sq = unit_square();
  const OnBase x{{0.3, 0.7}};
  CHECK(distance(x, x, *sq) == 0.0);
  CHECK(distance(OnCircle{3, 0.1}, OnCircle{3, 0.4}, *sq) == doctest::Approx(0.3 / 3).epsilon(kTol));
  const double d = distance(OnCircle{1, 0.5}, OnCircle{2, 0.5}, *sq);
  CHECK(std::abs(d - 1.75) <= kTol);
  CHECK(std::abs(d - oracle_distance(OnCircle{1, 0.5}, OnCircle{2, 0.5}, *sq)) <= kTol);
  // Circle(n, 0) is the attachment point.
  CHECK(distance(OnCircle{2, 0.0}, OnBase{{1, 0}}, *sq) == 0.0);
  CHECK(std::holds_alternative<OnBase>(canonical(OnCircle{2, 0.0}, *sq)));
  CHECK_THROWS_AS(distance(OnCircle{100000, 0.5}, x, *sq), DomainError);
}

TEST_CASE("distance agrees with the hand-evaluated formula") {
  std::mt19937_64 rng(31);
  for (const auto& m : {unit_square(), unit_disk()}) {
    for (int i = 0; i < 5000; ++i) {
      const EPoint p = random_point(rng, *m, 6);
      const EPoint q = random_point(rng, *m, 6);
      REQUIRE(std::abs(distance(p, q, *m) - oracle_distance(p, q, *m)) <= kTol);
    }
  }
}

TEST_CASE("retract") {
  const auto sq = unit_square();
  CHECK(retract(OnBase{{0.2, 0.9}}, *sq) == BasePoint{0.2, 0.9});
  CHECK(retract(OnCircle{3, 0.25}, *sq) == sq->dense_point(3));
  const BasePoint r = retract(OnCircle{7, 0.6}, *sq);
  CHECK(retract(OnBase{r}, *sq) == r);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 5000; ++i) {
    const EPoint p = random_point(rng, *sq, 9);
    const EPoint q = random_point(rng, *sq, 9);
    REQUIRE(sq->base_distance(retract(p, *sq), retract(q, *sq)) <= distance(p, q, *sq) + kTol);
  }
}

TEST_CASE("quotient") {
  const auto sq = unit_square();
  CHECK(std::holds_alternative<Star>(quotient(OnBase{{0.4, 0.4}})));
  CHECK(quotient_distance(Star{}, OnCircle{4, 0.5}) == doctest::Approx(0.5 / 4).epsilon(kTol));
  CHECK(std::abs(quotient_distance(OnCircle{1, 0.25}, OnCircle{2, 0.25}) - 0.375) <= kTol);
  CHECK(quotient_distance(Star{}, Star{}) == 0.0);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 3000; ++i) {
    const HPoint a = quotient(random_point(rng, *sq, 5));
    const HPoint b = quotient(random_point(rng, *sq, 5));
    const HPoint c = quotient(random_point(rng, *sq, 5));
    REQUIRE(quotient_distance(a, b) == quotient_distance(b, a));
    REQUIRE(quotient_distance(a, c) <= quotient_distance(a, b) + quotient_distance(b, c) + kTol);
    REQUIRE(quotient_distance(a, a) == 0.0);
  }
}

TEST_CASE("diam") {
  const auto sq = unit_square();
  const std::vector<EPoint> one{OnCircle{2, 0.3}};
  CHECK(diam(one, *sq) == 0.0);
  const std::vector<EPoint> anti{OnCircle{1, 0.0}, OnCircle{1, 0.5}};
  CHECK(diam(anti, *sq) == doctest::Approx(0.5).epsilon(kTol));
  CHECK_THROWS_AS(diam(std::vector<EPoint>{}, *sq), DomainError);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    std::vector<EPoint> a, ab;
    for (int k = 0; k < 4; ++k) a.push_back(random_point(rng, *sq, 5));
    ab = a;
    for (int k = 0; k < 3; ++k) ab.push_back(random_point(rng, *sq, 5));
    REQUIRE(diam(a, *sq) <= diam(ab, *sq));
  }
}

TEST_CASE("finite models") {
  const auto tri = parse_finite_model("format: 1\nname: tri\npoints: 3\n0 1 1\n1 0 1\n1 1 0\n");
  CHECK(tri->name() == "tri");
  CHECK(tri->materialized() == 3);
  CHECK(distance(OnCircle{1, 0.5}, OnCircle{3, 0.5}, *tri) == doctest::Approx(1.0 + 0.5 + 0.5 / 3));
  CHECK_FALSE(tri->is_builtin_convex());
  // Triangle inequality fails: d(0,2) = 3 > 1 + 1.
  CHECK_THROWS_AS(finite_model("bad", {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), DomainError);
  CHECK_THROWS_AS(finite_model("asym", {{0, 1}, {2, 0}}), DomainError);
  CHECK_THROWS_AS(finite_model("ident", {{0, 0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(parse_finite_model("points: 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(model_by_name("no-such-model"), DomainError);
}

TEST_CASE("point text format") {
  CHECK(parse_point("b:0.2,0.3") == EPoint{OnBase{{0.2, 0.3}}});
  CHECK(parse_point("c:1:0.5") == EPoint{OnCircle{1, 0.5}});
  for (const char* bad : {"", "x:1", "c:0:0.5", "c:1", "c:1:1.5", "b:", "b:1,a"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_point(bad), Error);
  }
  std::mt19937_64 rng(47);
  const auto sq = unit_square();
  for (int i = 0; i < 200; ++i) {
    const EPoint p = random_point(rng, *sq, 9);
    REQUIRE(parse_point(to_string(p)) == p);
  }
}
