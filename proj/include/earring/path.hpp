#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "earring/pairing.hpp"
#include "earring/rational.hpp"
#include "earring/space.hpp"
#include "earring/word.hpp"

namespace earring {

// Constant-speed traversal of a polyline in X. A single waypoint is a
// constant segment.
struct BaseArc {
  std::vector<BasePoint> waypoints;
  friend bool operator==(const BaseArc&, const BaseArc&) = default;
};

// One full traversal of the circle at d_n: sign +1 runs theta 0 -> 1, sign -1
// runs it backwards.
struct Winding {
  GenIndex n = 1;
  int sign = +1;
  friend bool operator==(const Winding&, const Winding&) = default;
};

using Segment = std::variant<BaseArc, Winding>;

// A proper path, segment-encoded. Segment i runs over [breaks[i], breaks[i+1]].
struct ProperPath {
  std::vector<Segment> segments;
  std::vector<Rational> breaks;  // segments.size() + 1, nondecreasing

  const Rational& start_param() const { return breaks.front(); }
  const Rational& end_param() const { return breaks.back(); }

  friend bool operator==(const ProperPath&, const ProperPath&) = default;
};

enum class ExcursionLabel { Trivial, Positive, Negative };

// An excursion into the circle at d_n, classified by its winding number.
struct Excursion {
  GenIndex n = 1;
  ExcursionLabel label = ExcursionLabel::Trivial;
  friend bool operator==(const Excursion&, const Excursion&) = default;
};

using RawSegment = std::variant<BaseArc, Excursion>;

struct RawPath {
  std::vector<RawSegment> segments;
  std::vector<Rational> breaks;

  friend bool operator==(const RawPath&, const RawPath&) = default;
};

// 0, 1/k, ..., 1.
std::vector<Rational> uniform_breaks(std::size_t segments);
ProperPath make_path(std::vector<Segment> segments);

// Empty when f is a valid proper path in the model: breakpoints chain, every
// winding has positive duration, every zero-duration arc is constant,
// waypoints lie in X and consecutive segments meet.
std::vector<std::string> path_issues(const ProperPath& f, const SpaceModel& model);
void require_valid(const ProperPath& f, const SpaceModel& model);
std::vector<std::string> path_issues(const RawPath& g, const SpaceModel& model);

BasePoint start_point(const ProperPath& f, const SpaceModel& model);
BasePoint end_point(const ProperPath& f, const SpaceModel& model);
bool is_loop(const ProperPath& f, const SpaceModel& model);

EPoint evaluate(const ProperPath& f, const Rational& t, const SpaceModel& model);

// Segment index of each letter of word_of_path(f).
std::vector<std::size_t> winding_segments(const ProperPath& f);

Word word_of_path(const ProperPath& f);

// f^-(s) = f(a + b - s).
ProperPath reverse(const ProperPath& f);
// f followed by g, with g's parameters shifted to start where f ends.
ProperPath concat(const ProperPath& f, const ProperPath& g, const SpaceModel& model);

// Trivial excursions collapse to their attachment point and merge with the
// neighbouring arcs; +1/-1 excursions become windings.
ProperPath properize(const RawPath& g, const SpaceModel& model);

struct NullLoopResult {
  bool null = false;
  std::optional<Pairing> certificate;  // complete pairing when null
  Word refutation;                     // reduced word when not null
};

// Decides null-homotopy of a proper loop by its word. Only the built-in
// convex models are accepted (UnsupportedModel otherwise); a non-loop throws
// PreconditionError.
NullLoopResult is_null_loop(const ProperPath& f, const SpaceModel& model);

// An open parameter interval <u, v> whose ends are the start of the first
// winding and the end of the second winding of the witnessing pair.
struct GammaBound {
  Rational u;
  Rational v;
  PositionPair witness;  // positions in word_of_path(f)
  friend bool operator==(const GammaBound&, const GammaBound&) = default;
};

// Maximal Γ-bound intervals: one per pair not nested inside another pair,
// in parameter order. They are pairwise disjoint. Throws PreconditionError if
// gamma is not valid on word_of_path(f).
std::vector<GammaBound> gamma_bound_intervals(const ProperPath& f, const Pairing& gamma);

// Maximal Γ-bounds among the pairs lying strictly inside positions (lo, hi)
// of the word, or all of them when lo/hi are absent.
std::vector<GammaBound> gamma_bounds_within(const ProperPath& f, const Pairing& gamma,
                                            std::optional<std::size_t> lo,
                                            std::optional<std::size_t> hi);

// Each maximal block of the maximal pairing is replaced by a constant arc at
// f(u_i) = f(v_i); everything else is unchanged. The result's word is
// free_reduce(word_of_path(f)).
ProperPath reduce_path(const ProperPath& f, const SpaceModel& model);

// Diameter of f([u, v]). u and v must be breakpoints.
double piece_diameter(const ProperPath& f, const Rational& u, const Rational& v,
                      const SpaceModel& model);

// Diameter of the union of f([u_i, v_i]) over the given breakpoint intervals.
double pieces_diameter(const ProperPath& f,
                       const std::vector<std::pair<Rational, Rational>>& intervals,
                       const SpaceModel& model);

// Upper bound on the Lipschitz constant of each segment (image distance over
// parameter distance), as exact rationals. Throws DomainError for a
// zero-duration segment that moves.
std::vector<Rational> segment_speeds(const ProperPath& f, const SpaceModel& model);

// --- text formats ---------------------------------------------------------
//   format: 1
//   breaks 0 1/4 1/2 1        (optional; uniform on [0,1] otherwise)
//   arc 0,0 0.5,0
//   wind 2 +
//   wind 2 -
// Raw paths additionally accept `exc <n> trivial|+|-` in place of `wind`.
ProperPath parse_path(std::string_view text);
RawPath parse_raw_path(std::string_view text);
std::string to_string(const ProperPath& f);
std::string to_string(const RawPath& g);

}  // namespace earring
