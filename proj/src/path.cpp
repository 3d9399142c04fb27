#include "earring/path.hpp"

#include <algorithm>
#include <cmath>

#include "earring/errors.hpp"

namespace earring {

namespace {

constexpr double kMeetTolerance = 1e-12;

BasePoint segment_start(const Segment& s, const SpaceModel& model) {
  if (const auto* arc = std::get_if<BaseArc>(&s)) return arc->waypoints.front();
  return model.dense_point(std::get<Winding>(s).n);
}

BasePoint segment_end(const Segment& s, const SpaceModel& model) {
  if (const auto* arc = std::get_if<BaseArc>(&s)) return arc->waypoints.back();
  return model.dense_point(std::get<Winding>(s).n);
}

bool same_base_point(const BasePoint& x, const BasePoint& y, const SpaceModel& model) {
  return model.base_distance(x, y) <= kMeetTolerance;
}

double arc_length(const BaseArc& arc, const SpaceModel& model) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < arc.waypoints.size(); ++i) {
    len += model.base_distance(arc.waypoints[i], arc.waypoints[i + 1]);
  }
  return len;
}

BasePoint arc_point(const BaseArc& arc, double frac, const SpaceModel& model) {
  const double total = arc_length(arc, model);
  if (total == 0.0 || frac <= 0.0) return arc.waypoints.front();
  if (frac >= 1.0) return arc.waypoints.back();
  double remaining = frac * total;
  for (std::size_t i = 0; i + 1 < arc.waypoints.size(); ++i) {
    const BasePoint& p = arc.waypoints[i];
    const BasePoint& q = arc.waypoints[i + 1];
    double len = model.base_distance(p, q);
    if (remaining <= len && len > 0.0) {
      double s = remaining / len;
      BasePoint out(p.size());
      for (std::size_t c = 0; c < p.size(); ++c) out[c] = p[c] + s * (q[c] - p[c]);
      return out;
    }
    remaining -= len;
  }
  return arc.waypoints.back();
}

// Rational upper bound on the arc's length. Axis-parallel pieces in the
// Euclidean plane models are exact.
Rational arc_length_bound(const BaseArc& arc, const SpaceModel& model) {
  Rational total = 0;
  double inexact = 0.0;
  for (std::size_t i = 0; i + 1 < arc.waypoints.size(); ++i) {
    const BasePoint& p = arc.waypoints[i];
    const BasePoint& q = arc.waypoints[i + 1];
    std::size_t moving = 0;
    std::size_t axis = 0;
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (p[c] != q[c]) {
        ++moving;
        axis = c;
      }
    }
    if (moving == 0) continue;
    if (model.is_builtin_convex() && moving == 1) {
      total += abs(Rational(q[axis]) - Rational(p[axis]));
    } else {
      inexact += model.base_distance(p, q);
    }
  }
  if (inexact > 0.0) total += rational_upper_bound(inexact);
  return total;
}

std::string seg_label(std::size_t i) {
  return "segment " + std::to_string(i);
}

template <class Seg>
void check_breaks(const std::vector<Seg>& segments, const std::vector<Rational>& breaks,
                  std::vector<std::string>& issues) {
  if (segments.empty()) issues.push_back("path has no segments");
  if (breaks.size() != segments.size() + 1) {
    issues.push_back("expected " + std::to_string(segments.size() + 1) + " breakpoints, got " +
                     std::to_string(breaks.size()));
    return;
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] < breaks[i]) issues.push_back("breakpoints decrease at " + seg_label(i));
  }
}

void check_arc(const BaseArc& arc, bool zero_span, std::size_t i, const SpaceModel& model,
               std::vector<std::string>& issues) {
  if (arc.waypoints.empty()) {
    issues.push_back(seg_label(i) + ": arc without waypoints");
    return;
  }
  bool constant = true;
  for (const BasePoint& x : arc.waypoints) {
    if (!model.contains(x)) issues.push_back(seg_label(i) + ": waypoint " + to_string(x) + " is not in X");
    if (!same_base_point(x, arc.waypoints.front(), model)) constant = false;
  }
  if (zero_span && !constant) issues.push_back(seg_label(i) + ": moving arc with zero duration");
  if (!constant && !model.is_builtin_convex()) {
    issues.push_back(seg_label(i) + ": model '" + model.name() + "' only admits constant arcs");
  }
}

}  // namespace

std::vector<Rational> uniform_breaks(std::size_t segments) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i <= segments; ++i) {
    out.emplace_back(BigInt(i), BigInt(std::max<std::size_t>(segments, 1)));
  }
  return out;
}

ProperPath make_path(std::vector<Segment> segments) {
  ProperPath f;
  f.breaks = uniform_breaks(segments.size());
  f.segments = std::move(segments);
  return f;
}

std::vector<std::string> path_issues(const ProperPath& f, const SpaceModel& model) {
  std::vector<std::string> issues;
  check_breaks(f.segments, f.breaks, issues);
  if (!issues.empty()) return issues;
  for (std::size_t i = 0; i < f.segments.size(); ++i) {
    const bool zero_span = f.breaks[i] == f.breaks[i + 1];
    if (const auto* arc = std::get_if<BaseArc>(&f.segments[i])) {
      check_arc(*arc, zero_span, i, model, issues);
    } else {
      const auto& w = std::get<Winding>(f.segments[i]);
      if (w.sign != 1 && w.sign != -1) issues.push_back(seg_label(i) + ": winding sign must be +1 or -1");
      if (zero_span) issues.push_back(seg_label(i) + ": winding with zero duration");
      try {
        (void)model.dense_point(w.n);
      } catch (const DomainError& e) {
        issues.push_back(seg_label(i) + ": " + e.what());
      }
    }
  }
  if (!issues.empty()) return issues;
  for (std::size_t i = 0; i + 1 < f.segments.size(); ++i) {
    if (!same_base_point(segment_end(f.segments[i], model), segment_start(f.segments[i + 1], model),
                         model)) {
      issues.push_back(seg_label(i) + " ends at " + to_string(segment_end(f.segments[i], model)) +
                       " but " + seg_label(i + 1) + " starts at " +
                       to_string(segment_start(f.segments[i + 1], model)));
    }
  }
  return issues;
}

void require_valid(const ProperPath& f, const SpaceModel& model) {
  auto issues = path_issues(f, model);
  if (!issues.empty()) throw PreconditionError("invalid proper path: " + issues.front());
}

std::vector<std::string> path_issues(const RawPath& g, const SpaceModel& model) {
  std::vector<std::string> issues;
  check_breaks(g.segments, g.breaks, issues);
  if (!issues.empty()) return issues;
  auto endpoint = [&](const RawSegment& s, bool front) -> BasePoint {
    if (const auto* arc = std::get_if<BaseArc>(&s)) {
      return front ? arc->waypoints.front() : arc->waypoints.back();
    }
    return model.dense_point(std::get<Excursion>(s).n);
  };
  for (std::size_t i = 0; i < g.segments.size(); ++i) {
    const bool zero_span = g.breaks[i] == g.breaks[i + 1];
    if (const auto* arc = std::get_if<BaseArc>(&g.segments[i])) {
      check_arc(*arc, zero_span, i, model, issues);
    } else {
      const auto& e = std::get<Excursion>(g.segments[i]);
      if (zero_span && e.label != ExcursionLabel::Trivial) {
        issues.push_back(seg_label(i) + ": winding excursion with zero duration");
      }
      try {
        (void)model.dense_point(e.n);
      } catch (const DomainError& err) {
        issues.push_back(seg_label(i) + ": " + err.what());
      }
    }
  }
  if (!issues.empty()) return issues;
  for (std::size_t i = 0; i + 1 < g.segments.size(); ++i) {
    if (!same_base_point(endpoint(g.segments[i], false), endpoint(g.segments[i + 1], true), model)) {
      issues.push_back(seg_label(i) + " and " + seg_label(i + 1) + " do not meet");
    }
  }
  return issues;
}

BasePoint start_point(const ProperPath& f, const SpaceModel& model) {
  if (f.segments.empty()) throw PreconditionError("path has no segments");
  return segment_start(f.segments.front(), model);
}

BasePoint end_point(const ProperPath& f, const SpaceModel& model) {
  if (f.segments.empty()) throw PreconditionError("path has no segments");
  return segment_end(f.segments.back(), model);
}

bool is_loop(const ProperPath& f, const SpaceModel& model) {
  return same_base_point(start_point(f, model), end_point(f, model), model);
}

EPoint evaluate(const ProperPath& f, const Rational& t, const SpaceModel& model) {
  if (f.segments.empty() || t < f.start_param() || t > f.end_param()) {
    throw DomainError("parameter " + to_string(t) + " is outside the path's domain");
  }
  std::size_t i = 0;
  while (i + 1 < f.segments.size() && f.breaks[i + 1] <= t) ++i;
  const Rational span = f.breaks[i + 1] - f.breaks[i];
  const double frac = span == 0 ? 0.0 : to_double((t - f.breaks[i]) / span);
  if (const auto* arc = std::get_if<BaseArc>(&f.segments[i])) {
    return OnBase{arc_point(*arc, frac, model)};
  }
  const auto& w = std::get<Winding>(f.segments[i]);
  double theta = w.sign > 0 ? frac : 1.0 - frac;
  if (theta >= 1.0 || theta <= 0.0) theta = 0.0;
  return canonical(OnCircle{w.n, theta}, model);
}

std::vector<std::size_t> winding_segments(const ProperPath& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.segments.size(); ++i) {
    if (std::holds_alternative<Winding>(f.segments[i])) out.push_back(i);
  }
  return out;
}

Word word_of_path(const ProperPath& f) {
  Word w;
  for (const Segment& s : f.segments) {
    if (const auto* wd = std::get_if<Winding>(&s)) w.push_back(Letter{wd->n, wd->sign});
  }
  return w;
}

ProperPath reverse(const ProperPath& f) {
  ProperPath out;
  for (auto it = f.segments.rbegin(); it != f.segments.rend(); ++it) {
    if (const auto* arc = std::get_if<BaseArc>(&*it)) {
      BaseArc r{{arc->waypoints.rbegin(), arc->waypoints.rend()}};
      out.segments.emplace_back(std::move(r));
    } else {
      auto w = std::get<Winding>(*it);
      w.sign = -w.sign;
      out.segments.emplace_back(w);
    }
  }
  const Rational total = f.start_param() + f.end_param();
  for (auto it = f.breaks.rbegin(); it != f.breaks.rend(); ++it) out.breaks.push_back(total - *it);
  return out;
}

ProperPath concat(const ProperPath& f, const ProperPath& g, const SpaceModel& model) {
  if (!same_base_point(end_point(f, model), start_point(g, model), model)) {
    throw PreconditionError("concat: first path does not end where the second starts");
  }
  ProperPath out = f;
  const Rational shift = f.end_param() - g.start_param();
  out.segments.insert(out.segments.end(), g.segments.begin(), g.segments.end());
  for (std::size_t i = 1; i < g.breaks.size(); ++i) out.breaks.push_back(g.breaks[i] + shift);
  return out;
}

ProperPath properize(const RawPath& g, const SpaceModel& model) {
  auto issues = path_issues(g, model);
  if (!issues.empty()) throw PreconditionError("invalid raw path: " + issues.front());

  struct Piece {
    Segment segment;
    bool collapsed;
  };
  std::vector<Piece> pieces;
  for (const RawSegment& s : g.segments) {
    if (const auto* arc = std::get_if<BaseArc>(&s)) {
      pieces.push_back({*arc, false});
      continue;
    }
    const auto& e = std::get<Excursion>(s);
    switch (e.label) {
      case ExcursionLabel::Trivial:
        pieces.push_back({BaseArc{{model.dense_point(e.n)}}, true});
        break;
      case ExcursionLabel::Positive:
        pieces.push_back({Winding{e.n, +1}, false});
        break;
      case ExcursionLabel::Negative:
        pieces.push_back({Winding{e.n, -1}, false});
        break;
    }
  }

  ProperPath out;
  out.breaks.push_back(g.breaks.front());
  std::size_t i = 0;
  while (i < pieces.size()) {
    if (!std::holds_alternative<BaseArc>(pieces[i].segment)) {
      out.segments.push_back(pieces[i].segment);
      out.breaks.push_back(g.breaks[i + 1]);
      ++i;
      continue;
    }
    std::size_t j = i;
    bool any_collapsed = false;
    while (j < pieces.size() && std::holds_alternative<BaseArc>(pieces[j].segment)) {
      any_collapsed = any_collapsed || pieces[j].collapsed;
      ++j;
    }
    if (!any_collapsed) {
      for (std::size_t k = i; k < j; ++k) {
        out.segments.push_back(pieces[k].segment);
        out.breaks.push_back(g.breaks[k + 1]);
      }
    } else {
      BaseArc merged;
      for (std::size_t k = i; k < j; ++k) {
        for (const BasePoint& x : std::get<BaseArc>(pieces[k].segment).waypoints) {
          if (merged.waypoints.empty() || !same_base_point(merged.waypoints.back(), x, model)) {
            merged.waypoints.push_back(x);
          }
        }
      }
      out.segments.emplace_back(std::move(merged));
      out.breaks.push_back(g.breaks[j]);
    }
    i = j;
  }
  return out;
}

NullLoopResult is_null_loop(const ProperPath& f, const SpaceModel& model) {
  if (!model.is_builtin_convex()) {
    throw UnsupportedModel("null-homotopy decision needs a built-in simply-connected model, not '" +
                           model.name() + "'");
  }
  require_valid(f, model);
  if (!is_loop(f, model)) throw PreconditionError("is_null_loop: path is not a loop");
  const Word w = word_of_path(f);
  NullLoopResult result;
  result.certificate = find_complete_pairing(w);
  result.null = result.certificate.has_value();
  if (!result.null) result.refutation = free_reduce(w);
  return result;
}

std::vector<GammaBound> gamma_bounds_within(const ProperPath& f, const Pairing& gamma,
                                            std::optional<std::size_t> lo,
                                            std::optional<std::size_t> hi) {
  const auto segs = winding_segments(f);
  std::vector<PositionPair> inside;
  for (const auto& p : gamma) {
    if (p.second >= segs.size()) throw DomainError("pair lies outside the path's word");
    if ((!lo || p.first > *lo) && (!hi || p.second < *hi)) inside.push_back(p);
  }
  std::vector<GammaBound> out;
  for (const auto& p : inside) {
    bool outermost = std::none_of(inside.begin(), inside.end(), [&](const PositionPair& q) {
      return q != p && nests_within(p, q);
    });
    if (!outermost) continue;
    out.push_back(GammaBound{f.breaks[segs[p.first]], f.breaks[segs[p.second] + 1], p});
  }
  std::sort(out.begin(), out.end(),
            [](const GammaBound& x, const GammaBound& y) { return x.witness < y.witness; });
  return out;
}

std::vector<GammaBound> gamma_bound_intervals(const ProperPath& f, const Pairing& gamma) {
  const Word w = word_of_path(f);
  if (!validate_pairing(gamma, w).ok()) {
    throw PreconditionError("gamma_bound_intervals: pairing " + to_string(gamma) +
                            " is not valid on the path's word " + to_string(w));
  }
  return gamma_bounds_within(f, gamma, std::nullopt, std::nullopt);
}

ProperPath reduce_path(const ProperPath& f, const SpaceModel& model) {
  require_valid(f, model);
  const Word w = word_of_path(f);
  const auto segs = winding_segments(f);
  const auto blocks = gamma_bounds_within(f, maximal_pairing(w), std::nullopt, std::nullopt);

  ProperPath out;
  out.breaks.push_back(f.breaks.front());
  std::size_t i = 0;
  std::size_t b = 0;
  while (i < f.segments.size()) {
    if (b < blocks.size() && i == segs[blocks[b].witness.first]) {
      const std::size_t last = segs[blocks[b].witness.second];
      const GenIndex n = w[blocks[b].witness.first].index;
      out.segments.emplace_back(BaseArc{{model.dense_point(n)}});
      out.breaks.push_back(f.breaks[last + 1]);
      i = last + 1;
      ++b;
      continue;
    }
    out.segments.push_back(f.segments[i]);
    out.breaks.push_back(f.breaks[i + 1]);
    ++i;
  }
  return out;
}

double pieces_diameter(const ProperPath& f,
                       const std::vector<std::pair<Rational, Rational>>& intervals,
                       const SpaceModel& model) {
  auto is_break = [&](const Rational& t) {
    return std::find(f.breaks.begin(), f.breaks.end(), t) != f.breaks.end();
  };
  std::vector<EPoint> extremes;
  for (const auto& [u, v] : intervals) {
    if (v < u) throw DomainError("piece_diameter: empty interval");
    if (!is_break(u) || !is_break(v)) {
      throw DomainError("piece_diameter: interval ends must be breakpoints");
    }
    // The range of a whole segment is spanned, for distance purposes, by its
    // polyline vertices, or by d_n and the antipode of its circle.
    extremes.push_back(evaluate(f, u, model));
    for (std::size_t i = 0; i < f.segments.size(); ++i) {
      if (f.breaks[i] < u || f.breaks[i + 1] > v) continue;
      if (const auto* arc = std::get_if<BaseArc>(&f.segments[i])) {
        for (const BasePoint& x : arc->waypoints) extremes.push_back(OnBase{x});
      } else {
        const auto& w = std::get<Winding>(f.segments[i]);
        extremes.push_back(OnBase{model.dense_point(w.n)});
        extremes.push_back(OnCircle{w.n, 0.5});
      }
    }
  }
  if (extremes.empty()) throw DomainError("piece_diameter: no intervals");
  return diam(extremes, model);
}

double piece_diameter(const ProperPath& f, const Rational& u, const Rational& v,
                      const SpaceModel& model) {
  return pieces_diameter(f, {{u, v}}, model);
}

std::vector<Rational> segment_speeds(const ProperPath& f, const SpaceModel& model) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < f.segments.size(); ++i) {
    const Rational span = f.breaks[i + 1] - f.breaks[i];
    if (const auto* arc = std::get_if<BaseArc>(&f.segments[i])) {
      const Rational len = arc_length_bound(*arc, model);
      if (len == 0) {
        out.emplace_back(0);
      } else if (span == 0) {
        throw DomainError(seg_label(i) + ": degenerate speed (moving arc with zero duration)");
      } else {
        out.push_back(len / span);
      }
    } else {
      const auto& w = std::get<Winding>(f.segments[i]);
      if (span == 0) throw DomainError(seg_label(i) + ": degenerate speed (winding with zero duration)");
      // theta moves at 1/span and rho_C(., .)/n is 1/n-Lipschitz in theta.
      out.push_back(Rational(BigInt(1), BigInt(w.n)) / span);
    }
  }
  return out;
}

}  // namespace earring
