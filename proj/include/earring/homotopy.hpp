#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "earring/pairing.hpp"
#include "earring/path.hpp"
#include "earring/rational.hpp"
#include "earring/space.hpp"

namespace earring {

// [s0, s1] x [t0, t1]. As a hole it denotes the open rectangle.
struct ParamRect {
  Rational s0, s1, t0, t1;
  friend bool operator==(const ParamRect&, const ParamRect&) = default;
};

struct BoundarySample {
  Rational s, t;
  EPoint value;
};

// Boundary data of a punctured homotopy: its values on a finite grid of the
// rectangle's and the holes' boundary curves. The top edges are free.
struct PuncturedCertificate {
  ParamRect rectangle;
  std::vector<ParamRect> holes;
  std::vector<BoundarySample> samples;
  double size = 0.0;
};

struct BoundCheck {
  bool ok = true;
  std::string witness;  // first violating sample when !ok
};

// Bottom, left and right edges of the rectangle carry one common value, and
// the same holds for each hole separately. Throws DomainError when holes
// overlap or leave the rectangle, or a required curve has no sample.
BoundCheck check_bound_for_constant(const PuncturedCertificate& c);

// A delta0 with |u - v| < delta0 => rho(f(u), f(v)) < delta / 2, from
// per-segment speed bounds. Throws DomainError for delta <= 0 or a
// degenerate segment.
Rational modulus_delta0(const ProperPath& f, const Rational& delta, const SpaceModel& model);

// epsilon / 3 on the built-in convex models.
double delta_schedule(double epsilon, const SpaceModel& model);

enum class CaseTag { BaseCase, FirstProcedure, Case0, Case1 };

std::string_view case_tag_name(CaseTag tag);
CaseTag parse_case_tag(std::string_view name);

// The selected pair: its first winding runs over [u0, v0], its second over
// [u1, v1].
struct Case0Markers {
  PositionPair pair;
  Rational u0, v0, u1, v1;
  friend bool operator==(const Case0Markers&, const Case0Markers&) = default;
};

struct Case1Markers {
  PositionPair innermost;  // candidate realizing both u* and v*
  Rational u_star, v_star;
  std::vector<std::pair<Rational, Rational>> bounds;  // maximal Γ-bounds in [u*, v*]
  friend bool operator==(const Case1Markers&, const Case1Markers&) = default;
};

struct DecompositionNode {
  Rational a, b;
  CaseTag tag = CaseTag::BaseCase;
  std::optional<PositionPair> witness;  // Γ-pair spanning [a, b]; none at the root
  BigInt m;                             // least m with b - a <= m * delta0
  double size = 0.0;                    // diam f([a, b])
  std::optional<Case0Markers> case0;
  std::optional<Case1Markers> case1;
  std::optional<double> hole_size;  // diam of f on the two outer strips
  std::vector<DecompositionNode> children;
};

struct DecompositionTree {
  Rational delta;
  Rational alpha;   // hole cap; leaves and holes are below min(delta, alpha)
  Rational delta0;  // computed for min(delta, alpha)
  DecompositionNode root;
};

// Throws PreconditionError when f is not a valid loop or gamma is not a
// complete valid pairing on its word, DomainError when delta <= 0.
DecompositionTree build_decomposition(const ProperPath& f, const Pairing& gamma,
                                      const Rational& delta, const SpaceModel& model,
                                      std::optional<Rational> alpha = std::nullopt);

struct TreeFailure {
  std::string clause;
  std::string node;  // "root", "root/0/2", ...
  std::string message;
};

struct TreeReport {
  std::vector<TreeFailure> failures;
  bool ok() const { return failures.empty(); }
};

TreeReport verify_decomposition(const DecompositionTree& tree, const ProperPath& f,
                                const Pairing& gamma, const Rational& delta,
                                const SpaceModel& model,
                                std::optional<Rational> alpha = std::nullopt);

// Boundary certificate of one node: the rectangle [a, b] x [0, 1], one hole
// (u_i, v_i) x (1/2, 1) per child and, for Case0/Case1, the strip hole
// (a, b) x (0, 1/4). `per_edge` samples per boundary curve.
PuncturedCertificate node_certificate(const DecompositionNode& node, const ProperPath& f,
                                      const SpaceModel& model, std::size_t per_edge = 5);

std::size_t tree_depth(const DecompositionNode& node);
std::size_t tree_size(const DecompositionNode& node);

// JSON with `"format": 1`; rationals as "p/q" strings.
std::string tree_to_json(const DecompositionTree& tree, int indent = 2);
DecompositionTree tree_from_json(std::string_view text);

}  // namespace earring
