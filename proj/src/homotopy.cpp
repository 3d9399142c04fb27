#include "earring/homotopy.hpp"

#include <algorithm>
#include <cmath>

#include "earring/errors.hpp"

namespace earring {
namespace {

bool same_value(const EPoint& p, const EPoint& q) {
  constexpr double kTol = 1e-12;
  if (p.index() != q.index()) return false;
  if (const auto* x = std::get_if<OnBase>(&p)) {
    const auto& y = std::get<OnBase>(q);
    if (x->x.size() != y.x.size()) return false;
    for (std::size_t i = 0; i < x->x.size(); ++i) {
      if (std::abs(x->x[i] - y.x[i]) > kTol) return false;
    }
    return true;
  }
  const auto& x = std::get<OnCircle>(p);
  const auto& y = std::get<OnCircle>(q);
  return x.n == y.n && circle_metric(x.theta, y.theta) <= kTol;
}

bool inside(const ParamRect& inner, const ParamRect& outer) {
  return outer.s0 <= inner.s0 && inner.s1 <= outer.s1 && outer.t0 <= inner.t0 &&
         inner.t1 <= outer.t1;
}

bool open_overlap(const ParamRect& x, const ParamRect& y) {
  return std::max(x.s0, y.s0) < std::min(x.s1, y.s1) &&
         std::max(x.t0, y.t0) < std::min(x.t1, y.t1);
}

std::string at(const BoundarySample& smp) {
  return "(" + to_string(smp.s) + ", " + to_string(smp.t) + ")";
}

// Checks one region's bottom, left and right curves; empty string when fine.
std::string check_region(const ParamRect& r, const std::string& label,
                         const std::vector<BoundarySample>& samples) {
  struct Curve {
    const char* name;
    bool (*on)(const ParamRect&, const BoundarySample&);
  };
  static const Curve curves[] = {
      {"bottom", [](const ParamRect& r, const BoundarySample& p) {
         return p.t == r.t0 && r.s0 <= p.s && p.s <= r.s1;
       }},
      {"left", [](const ParamRect& r, const BoundarySample& p) {
         return p.s == r.s0 && r.t0 <= p.t && p.t <= r.t1;
       }},
      {"right", [](const ParamRect& r, const BoundarySample& p) {
         return p.s == r.s1 && r.t0 <= p.t && p.t <= r.t1;
       }},
  };
  const BoundarySample* first = nullptr;
  for (const Curve& c : curves) {
    bool any = false;
    for (const BoundarySample& smp : samples) {
      if (!c.on(r, smp)) continue;
      any = true;
      if (first == nullptr) {
        first = &smp;
      } else if (!same_value(first->value, smp.value)) {
        return label + " " + c.name + " sample " + at(smp) + " = " + to_string(smp.value) +
               ", expected " + to_string(first->value) + " from " + at(*first);
      }
    }
    if (!any) throw DomainError(label + ": no sample on the " + c.name + " curve");
  }
  return {};
}

const Rational& win_start(const ProperPath& f, const std::vector<std::size_t>& segs,
                          std::size_t pos) {
  return f.breaks[segs[pos]];
}
const Rational& win_end(const ProperPath& f, const std::vector<std::size_t>& segs,
                        std::size_t pos) {
  return f.breaks[segs[pos] + 1];
}

BigInt budget(const Rational& len, const Rational& delta0) {
  BigInt m = ceil(len / delta0);
  return m < 1 ? BigInt(1) : m;
}

Rational effective(const Rational& delta, const std::optional<Rational>& alpha) {
  return alpha && *alpha < delta ? *alpha : delta;
}

// Pairs nested in `outer` whose first winding starts before a + delta0 and
// whose second ends after b - delta0.
std::vector<PositionPair> candidates(const ProperPath& f, const std::vector<std::size_t>& segs,
                                     const Pairing& gamma, const PositionPair& outer,
                                     const Rational& a, const Rational& b,
                                     const Rational& delta0) {
  std::vector<PositionPair> out;
  for (const PositionPair& q : gamma) {
    if (!nests_within(q, outer)) continue;
    if (win_start(f, segs, q.first) < a + delta0 && win_end(f, segs, q.second) > b - delta0) {
      out.push_back(q);
    }
  }
  return out;
}

bool case0_condition(const ProperPath& f, const std::vector<std::size_t>& segs,
                     const PositionPair& q, const Rational& a, const Rational& b,
                     const Rational& delta0) {
  return a + delta0 <= win_end(f, segs, q.first) || win_start(f, segs, q.second) <= b - delta0;
}

struct Builder {
  const ProperPath& f;
  const Pairing& gamma;
  const SpaceModel& model;
  std::vector<std::size_t> segs;
  Rational threshold;
  Rational delta0;

  DecompositionNode bound_node(const GammaBound& g) {
    DecompositionNode node;
    node.a = g.u;
    node.b = g.v;
    node.witness = g.witness;
    node.m = budget(g.v - g.u, delta0);
    node.size = piece_diameter(f, g.u, g.v, model);
    if (node.size < to_double(threshold)) {
      node.tag = CaseTag::BaseCase;
      return node;
    }
    second_procedure(node);
    return node;
  }

  void second_procedure(DecompositionNode& node) {
    const auto cands = candidates(f, segs, gamma, *node.witness, node.a, node.b, delta0);
    std::optional<PositionPair> chosen;
    for (const PositionPair& q : cands) {
      if (!case0_condition(f, segs, q, node.a, node.b, delta0)) continue;
      // Minimal u0, then maximal v1.
      if (!chosen || q.first < chosen->first ||
          (q.first == chosen->first && q.second > chosen->second)) {
        chosen = q;
      }
    }
    std::vector<GammaBound> inner;
    if (chosen) {
      node.tag = CaseTag::Case0;
      Case0Markers mk{*chosen, win_start(f, segs, chosen->first), win_end(f, segs, chosen->first),
                      win_start(f, segs, chosen->second), win_end(f, segs, chosen->second)};
      node.hole_size = pieces_diameter(f, {{node.a, mk.u0}, {mk.v1, node.b}}, model);
      inner = gamma_bounds_within(f, gamma, chosen->first, chosen->second);
      node.case0 = std::move(mk);
    } else {
      node.tag = CaseTag::Case1;
      // The candidates form a chain under nesting; the innermost one carries
      // both the largest v0 and the smallest u1.
      PositionPair k = cands.front();
      for (const PositionPair& q : cands) {
        if (nests_within(q, k)) k = q;
      }
      Case1Markers mk;
      mk.innermost = k;
      mk.u_star = win_end(f, segs, k.first);
      mk.v_star = win_start(f, segs, k.second);
      node.hole_size = pieces_diameter(
          f, {{node.a, win_start(f, segs, k.first)}, {win_end(f, segs, k.second), node.b}},
          model);
      inner = gamma_bounds_within(f, gamma, k.first, k.second);
      for (const GammaBound& g : inner) mk.bounds.emplace_back(g.u, g.v);
      node.case1 = std::move(mk);
    }
    for (const GammaBound& g : inner) node.children.push_back(bound_node(g));
  }
};

}  // namespace

BoundCheck check_bound_for_constant(const PuncturedCertificate& c) {
  const ParamRect& r = c.rectangle;
  if (!(r.s0 <= r.s1 && r.t0 <= r.t1)) throw DomainError("certificate: empty rectangle");
  for (std::size_t i = 0; i < c.holes.size(); ++i) {
    const ParamRect& h = c.holes[i];
    if (!(h.s0 < h.s1 && h.t0 < h.t1)) {
      throw DomainError("certificate: hole " + std::to_string(i) + " is empty");
    }
    if (!inside(h, r)) {
      throw DomainError("certificate: hole " + std::to_string(i) + " leaves the rectangle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (open_overlap(h, c.holes[j])) {
        throw DomainError("certificate: holes " + std::to_string(j) + " and " +
                          std::to_string(i) + " overlap");
      }
    }
  }
  BoundCheck out;
  out.witness = check_region(r, "rectangle", c.samples);
  for (std::size_t i = 0; out.witness.empty() && i < c.holes.size(); ++i) {
    out.witness = check_region(c.holes[i], "hole " + std::to_string(i), c.samples);
  }
  out.ok = out.witness.empty();
  return out;
}

Rational modulus_delta0(const ProperPath& f, const Rational& delta, const SpaceModel& model) {
  if (delta <= 0) throw DomainError("modulus_delta0: delta must be positive");
  Rational lmax = 0;
  for (const Rational& s : segment_speeds(f, model)) lmax = std::max(lmax, s);
  if (lmax == 0) {
    const Rational len = f.end_param() - f.start_param();
    return len > 0 ? len : Rational(1);
  }
  return delta / 2 / lmax;
}

double delta_schedule(double epsilon, const SpaceModel& model) {
  if (!(epsilon > 0)) throw DomainError("delta_schedule: epsilon must be positive");
  if (!model.is_builtin_convex()) {
    throw UnsupportedModel("delta_schedule: no contraction modulus known for '" +
                           model.name() + "'");
  }
  return epsilon / 3.0;
}

std::string_view case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::BaseCase: return "BaseCase";
    case CaseTag::FirstProcedure: return "FirstProcedure";
    case CaseTag::Case0: return "Case0";
    case CaseTag::Case1: return "Case1";
  }
  return "?";
}

CaseTag parse_case_tag(std::string_view name) {
  for (CaseTag t : {CaseTag::BaseCase, CaseTag::FirstProcedure, CaseTag::Case0, CaseTag::Case1}) {
    if (case_tag_name(t) == name) return t;
  }
  throw ParseError("unknown case tag '" + std::string(name) + "'", std::string(name), 0);
}

DecompositionTree build_decomposition(const ProperPath& f, const Pairing& gamma,
                                      const Rational& delta, const SpaceModel& model,
                                      std::optional<Rational> alpha) {
  if (delta <= 0) throw DomainError("build_decomposition: delta must be positive");
  if (alpha && *alpha <= 0) throw DomainError("build_decomposition: alpha must be positive");
  if (!path_issues(f, model).empty() || !is_loop(f, model)) {
    throw PreconditionError("build_decomposition: path is not a valid loop");
  }
  const Word w = word_of_path(f);
  if (!validate_pairing(gamma, w).ok() || !is_complete(gamma, w)) {
    throw PreconditionError("build_decomposition: " + to_string(gamma) +
                            " is not a complete pairing on " + to_string(w));
  }

  DecompositionTree tree;
  tree.delta = delta;
  tree.alpha = alpha.value_or(delta);
  Builder b{f, gamma, model, winding_segments(f), effective(delta, alpha), {}};
  b.delta0 = modulus_delta0(f, b.threshold, model);
  tree.delta0 = b.delta0;

  DecompositionNode& root = tree.root;
  root.a = f.start_param();
  root.b = f.end_param();
  root.m = budget(root.b - root.a, b.delta0);
  root.size = piece_diameter(f, root.a, root.b, model);
  if (w.size() == 0 && root.size < to_double(b.threshold)) {
    root.tag = CaseTag::BaseCase;
    return tree;
  }
  root.tag = CaseTag::FirstProcedure;
  for (const GammaBound& g : gamma_bounds_within(f, gamma, std::nullopt, std::nullopt)) {
    root.children.push_back(b.bound_node(g));
  }
  return tree;
}

namespace {

struct Verifier {
  const ProperPath& f;
  const Pairing& gamma;
  const SpaceModel& model;
  std::vector<std::size_t> segs;
  Rational threshold;
  Rational delta0;
  BigInt depth_limit;
  TreeReport report;

  void fail(const std::string& clause, const std::string& node, const std::string& message) {
    report.failures.push_back({clause, node, message});
  }

  // Recomputed children list for comparison against the recorded one.
  void check_children(const DecompositionNode& n, const std::string& path,
                      const std::vector<GammaBound>& expected) {
    bool same = expected.size() == n.children.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      const auto& c = n.children[i];
      same = c.a == expected[i].u && c.b == expected[i].v && c.witness == expected[i].witness;
    }
    if (!same) {
      fail("children", path,
           "children are not the " + std::to_string(expected.size()) + " maximal Γ-bounds");
    }
  }

  void check_intervals(const DecompositionNode& n, const std::string& path) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const auto& c = n.children[i];
      if (!(c.a <= c.b) || c.a < n.a || c.b > n.b) {
        fail("interval", path + "/" + std::to_string(i),
             "child [" + to_string(c.a) + ", " + to_string(c.b) + "] is not inside [" +
                 to_string(n.a) + ", " + to_string(n.b) + "]");
      }
      for (std::size_t j = 0; j < i; ++j) {
        const auto& d = n.children[j];
        if (!(c.b <= d.a || d.b <= c.a)) {
          fail("interval", path + "/" + std::to_string(i),
               "child overlaps sibling " + std::to_string(j));
        }
      }
    }
  }

  void check_closure(const PositionPair& around, const std::string& path) {
    if (around.second < around.first + 2) return;
    if (!is_closed_under(gamma, around.first + 1, around.second - 1)) {
      fail("gamma-closure", path, "middle block is not closed under Γ");
    }
  }

  void check_child_budgets(const DecompositionNode& n, const std::string& path, bool strict) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const BigInt& cm = n.children[i].m;
      if (strict ? !(cm <= n.m - 1) : !(cm <= n.m)) {
        fail("budget", path + "/" + std::to_string(i),
             "child budget " + cm.str() + " does not drop below parent budget " + n.m.str());
      }
    }
  }

  void visit(const DecompositionNode& n, const std::string& path, std::size_t depth, bool root) {
    if (BigInt(depth) > depth_limit) {
      fail("depth", path, "depth " + std::to_string(depth) + " exceeds " + depth_limit.str());
    }
    if (n.m != budget(n.b - n.a, delta0)) {
      fail("budget", path, "recorded m = " + n.m.str() + ", expected " +
                               budget(n.b - n.a, delta0).str());
    }
    double size = 0;
    try {
      size = piece_diameter(f, n.a, n.b, model);
    } catch (const Error& e) {
      fail("interval", path, e.what());
      return;
    }
    if (std::abs(size - n.size) > 1e-12) {
      fail("size", path, "recorded size " + std::to_string(n.size) + ", recomputed " +
                             std::to_string(size));
    }
    const double thr = to_double(threshold);
    check_intervals(n, path);

    if (root) {
      if (n.a != f.start_param() || n.b != f.end_param()) {
        fail("root", path, "root interval is not the loop's domain");
      }
      if (n.witness) fail("root", path, "root carries a Γ-pair");
    } else {
      const bool bound = n.witness && gamma_has(*n.witness) &&
                         n.witness->second < segs.size() &&
                         n.a == win_start(f, segs, n.witness->first) &&
                         n.b == win_end(f, segs, n.witness->second);
      if (!bound) {
        fail("gamma-bound", path, "interval is not spanned by a Γ-pair");
        return;
      }
    }

    switch (n.tag) {
      case CaseTag::BaseCase:
        if (!n.children.empty()) fail("leaf", path, "BaseCase node has children");
        if (!(size < thr)) {
          fail("leaf-size", path, "leaf diameter " + std::to_string(size) + " is not below " +
                                      to_string(threshold));
        }
        if (root && !word_of_path(f).empty()) fail("root", path, "BaseCase root on a nonempty word");
        break;
      case CaseTag::FirstProcedure:
        if (!root) fail("case", path, "FirstProcedure below the root");
        check_children(n, path, gamma_bounds_within(f, gamma, std::nullopt, std::nullopt));
        check_child_budgets(n, path, false);
        break;
      case CaseTag::Case0:
      case CaseTag::Case1:
        if (root) {
          fail("case", path, "second procedure at the root");
          break;
        }
        if (size < thr) {
          fail("case", path, "piece below the threshold should be a leaf");
        }
        second(n, path, thr);
        check_child_budgets(n, path, true);
        break;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      visit(n.children[i], path + "/" + std::to_string(i), depth + 1, false);
    }
  }

  bool gamma_has(const PositionPair& p) const {
    return std::find(gamma.begin(), gamma.end(), p) != gamma.end();
  }

  void check_hole(const DecompositionNode& n, const std::string& path, const Rational& u,
                  const Rational& v, double thr) {
    const double hole = pieces_diameter(f, {{n.a, u}, {v, n.b}}, model);
    if (!n.hole_size || std::abs(*n.hole_size - hole) > 1e-12) {
      fail("hole-size", path, "recorded hole size differs from " + std::to_string(hole));
    }
    if (!(hole < thr)) {
      fail("hole-size", path, "hole diameter " + std::to_string(hole) + " is not below " +
                                  to_string(threshold));
    }
  }

  void second(const DecompositionNode& n, const std::string& path, double thr) {
    const auto cands = candidates(f, segs, gamma, *n.witness, n.a, n.b, delta0);
    std::vector<PositionPair> ok0;
    for (const auto& q : cands) {
      if (case0_condition(f, segs, q, n.a, n.b, delta0)) ok0.push_back(q);
    }
    const Rational limit = Rational(n.m - 1) * delta0;
    if (n.tag == CaseTag::Case0) {
      if (!n.case0 || n.case1) {
        fail("markers", path, "Case0 node without exactly Case0 markers");
        return;
      }
      const Case0Markers& mk = *n.case0;
      if (std::find(ok0.begin(), ok0.end(), mk.pair) == ok0.end()) {
        fail("case0-selection", path, "pair does not satisfy the Case0 condition");
        return;
      }
      for (const auto& q : ok0) {
        if (q.first < mk.pair.first || (q.first == mk.pair.first && q.second > mk.pair.second)) {
          fail("case0-selection", path, "tie-break prefers another pair");
          break;
        }
      }
      if (mk.u0 != win_start(f, segs, mk.pair.first) || mk.v0 != win_end(f, segs, mk.pair.first) ||
          mk.u1 != win_start(f, segs, mk.pair.second) || mk.v1 != win_end(f, segs, mk.pair.second)) {
        fail("markers", path, "u0, v0, u1, v1 do not match the pair's windings");
        return;
      }
      if (!(mk.u1 - mk.v0 <= limit)) {
        fail("case0-inequality", path, "u1 - v0 = " + to_string(mk.u1 - mk.v0) + " > " +
                                           to_string(limit));
      }
      check_closure(mk.pair, path);
      check_hole(n, path, mk.u0, mk.v1, thr);
      check_children(n, path, gamma_bounds_within(f, gamma, mk.pair.first, mk.pair.second));
      return;
    }
    if (!n.case1 || n.case0) {
      fail("markers", path, "Case1 node without exactly Case1 markers");
      return;
    }
    if (!ok0.empty()) fail("case1-selection", path, "a pair satisfies the Case0 condition");
    const Case1Markers& mk = *n.case1;
    Rational us = win_end(f, segs, cands.front().first);
    Rational vs = win_start(f, segs, cands.front().second);
    for (const auto& q : cands) {
      us = std::max(us, win_end(f, segs, q.first));
      vs = std::min(vs, win_start(f, segs, q.second));
    }
    if (mk.u_star != us || mk.v_star != vs) {
      fail("case1-markers", path, "u*, v* differ from " + to_string(us) + ", " + to_string(vs));
      return;
    }
    if (std::find(cands.begin(), cands.end(), mk.innermost) == cands.end() ||
        win_end(f, segs, mk.innermost.first) != us || win_start(f, segs, mk.innermost.second) != vs) {
      fail("case1-markers", path, "innermost candidate does not realize u*, v*");
      return;
    }
    if (!(mk.u_star <= mk.v_star)) fail("case1-markers", path, "u* > v*");
    check_closure(mk.innermost, path);
    check_hole(n, path, win_start(f, segs, mk.innermost.first),
               win_end(f, segs, mk.innermost.second), thr);
    const auto expected = gamma_bounds_within(f, gamma, mk.innermost.first, mk.innermost.second);
    bool same = expected.size() == mk.bounds.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      same = mk.bounds[i] == std::pair{expected[i].u, expected[i].v};
    }
    if (!same) fail("case1-markers", path, "Γ-bound list is not the maximal one in [u*, v*]");
    for (const auto& [u, v] : mk.bounds) {
      if (u < mk.u_star || v > mk.v_star) {
        fail("case1-markers", path, "Γ-bound <" + to_string(u) + ", " + to_string(v) +
                                        "> leaves [u*, v*]");
      }
      if (!(v - u <= limit)) {
        fail("case1-inequality", path, "Γ-bound <" + to_string(u) + ", " + to_string(v) +
                                           "> is longer than " + to_string(limit));
      }
    }
    check_children(n, path, expected);
  }
};

}  // namespace

TreeReport verify_decomposition(const DecompositionTree& tree, const ProperPath& f,
                                const Pairing& gamma, const Rational& delta,
                                const SpaceModel& model, std::optional<Rational> alpha) {
  TreeReport bad;
  auto fatal = [&](const std::string& clause, const std::string& msg) {
    bad.failures.push_back({clause, "root", msg});
    return bad;
  };
  if (!path_issues(f, model).empty() || !is_loop(f, model)) {
    return fatal("input", "path is not a valid loop");
  }
  const Word w = word_of_path(f);
  if (!validate_pairing(gamma, w).ok() || !is_complete(gamma, w)) {
    return fatal("input", "pairing is not a complete valid pairing on the word");
  }
  if (!(delta > 0)) return fatal("input", "delta must be positive");
  const Rational thr = effective(delta, alpha);
  if (tree.delta != delta || tree.alpha != alpha.value_or(delta)) {
    bad.failures.push_back({"parameters", "root", "tree was built for other delta/alpha"});
  }
  const Rational d0 = modulus_delta0(f, thr, model);
  if (tree.delta0 != d0) {
    bad.failures.push_back({"delta0", "root", "recorded delta0 " + to_string(tree.delta0) +
                                                  ", expected " + to_string(d0)});
  }
  Verifier v{f, gamma, model, winding_segments(f), thr, d0,
             ceil((f.end_param() - f.start_param()) / d0) + 2, std::move(bad)};
  v.visit(tree.root, "root", 0, true);
  return std::move(v.report);
}

PuncturedCertificate node_certificate(const DecompositionNode& node, const ProperPath& f,
                                      const SpaceModel& model, std::size_t per_edge) {
  if (per_edge < 2) throw DomainError("node_certificate: need at least 2 samples per edge");
  PuncturedCertificate c;
  c.rectangle = {node.a, node.b, 0, 1};
  const Rational half(1, 2);
  const Rational quarter(1, 4);
  for (const auto& ch : node.children) c.holes.push_back({ch.a, ch.b, half, 1});
  if (node.tag == CaseTag::Case0 || node.tag == CaseTag::Case1) {
    c.holes.push_back({node.a, node.b, 0, quarter});
  }
  std::vector<EPoint> values;
  auto add = [&](const Rational& s, const Rational& t, const EPoint& v) {
    c.samples.push_back({s, t, v});
    values.push_back(v);
  };
  auto edges = [&](const ParamRect& r, const EPoint& v) {
    const auto k = static_cast<long>(per_edge - 1);
    for (long i = 0; i <= k; ++i) {
      const Rational x = r.s0 + (r.s1 - r.s0) * Rational(i, k);
      const Rational y = r.t0 + (r.t1 - r.t0) * Rational(i, k);
      add(x, r.t0, v);
      add(r.s0, y, v);
      add(r.s1, y, v);
    }
  };
  edges(c.rectangle, evaluate(f, node.a, model));
  for (const auto& h : c.holes) edges(h, evaluate(f, h.s0, model));
  for (std::size_t i = 0; i < f.breaks.size(); ++i) {
    if (node.a <= f.breaks[i] && f.breaks[i] <= node.b) {
      add(f.breaks[i], 1, evaluate(f, f.breaks[i], model));
    }
  }
  c.size = diam(values, model);
  return c;
}

std::size_t tree_depth(const DecompositionNode& node) {
  std::size_t d = 0;
  for (const auto& c : node.children) d = std::max(d, tree_depth(c) + 1);
  return d;
}

std::size_t tree_size(const DecompositionNode& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += tree_size(c);
  return n;
}

}  // namespace earring
