#include "corpus.hpp"

#include <algorithm>

#include "earring/rational.hpp"

namespace earring::testing {

Word naive_reduce(const Word& w) {
  std::vector<Letter> v(w.begin(), w.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].index == v[i + 1].index && v[i].sign == -v[i + 1].sign) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  Word out;
  for (const Letter& l : v) out.push_back(l);
  return out;
}

bool equivalent_all_subsets(const Word& v, const Word& w) {
  std::vector<GenIndex> gens;
  for (const Letter& l : v) gens.push_back(l.index);
  for (const Letter& l : w) gens.push_back(l.index);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    GenSet f;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mask >> i & 1) f.insert(gens[i]);
    }
    if (naive_reduce(project(v, f)) != naive_reduce(project(w, f))) return false;
  }
  return true;
}

bool reduced_by_definition(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      Word sub;
      for (std::size_t k = i; k < j; ++k) sub.push_back(w[k]);
      if (naive_reduce(sub).empty()) return false;
    }
  }
  return true;
}

std::vector<Word> all_words(std::size_t len, GenIndex gens) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const Word& w : out) {
      for (GenIndex g = 1; g <= gens; ++g) {
        for (int s : {+1, -1}) {
          Word x = w;
          x.push_back(Letter{g, s});
          next.push_back(std::move(x));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

Letter random_letter(std::mt19937_64& rng, GenIndex gens) {
  std::uniform_int_distribution<GenIndex> g(1, gens);
  std::bernoulli_distribution s(0.5);
  return Letter{g(rng), s(rng) ? +1 : -1};
}

void grow_trivial(std::mt19937_64& rng, std::size_t budget, GenIndex gens, Word& out) {
  std::bernoulli_distribution stop(0.3);
  while (budget >= 2 && !stop(rng)) {
    const Letter x = random_letter(rng, gens);
    std::uniform_int_distribution<std::size_t> inner(0, (budget - 2) / 2);
    const std::size_t k = inner(rng) * 2;
    out.push_back(x);
    grow_trivial(rng, k, gens, out);
    out.push_back(x.inverse());
    budget -= k + 2;
  }
}

}  // namespace

Word random_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  Word w;
  for (std::size_t i = len(rng); i > 0; --i) w.push_back(random_letter(rng, gens));
  return w;
}

Word random_trivial_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens) {
  Word w;
  grow_trivial(rng, max_len, gens, w);
  return w;
}

Word random_reduced_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens) {
  std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(1, max_len));
  Word w;
  const std::size_t n = len(rng);
  while (w.size() < n) {
    const Letter x = random_letter(rng, gens);
    if (w.size() > 0 && w[w.size() - 1].index == x.index && w[w.size() - 1].sign == -x.sign) continue;
    w.push_back(x);
  }
  return w;
}

ProperPath loop_for_word(const Word& w, const SpaceModel& model, std::mt19937_64& rng,
                         int max_weight) {
  std::vector<Segment> segs;
  const BasePoint home = model.dense_point(1);
  BasePoint at = home;
  for (const Letter& l : w) {
    const BasePoint& d = model.dense_point(l.index);
    if (d != at) segs.emplace_back(BaseArc{{at, d}});
    segs.emplace_back(Winding{l.index, l.sign});
    at = d;
  }
  segs.emplace_back(BaseArc{{at, home}});
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<int> ws;
  int total = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    ws.push_back(weight(rng));
    total += ws.back();
  }
  ProperPath f;
  f.segments = std::move(segs);
  f.breaks.emplace_back(0);
  int acc = 0;
  for (int x : ws) {
    acc += x;
    f.breaks.emplace_back(Rational(acc, total));
  }
  return f;
}

EPoint random_point(std::mt19937_64& rng, const SpaceModel& model, GenIndex max_circle) {
  std::bernoulli_distribution on_base(0.3);
  if (on_base(rng)) return OnBase{model.sample(rng)};
  std::uniform_int_distribution<GenIndex> n(1, max_circle);
  std::uniform_real_distribution<double> theta(0.0, 1.0);
  return canonical(OnCircle{n(rng), theta(rng)}, model);
}

}  // namespace earring::testing

namespace earring::testing {
namespace {

void collect(DecompositionNode& n, std::vector<DecompositionNode*>& out) {
  out.push_back(&n);
  for (auto& c : n.children) collect(c, out);
}

template <class Pred>
DecompositionNode* pick(DecompositionTree& t, std::mt19937_64& rng, Pred pred) {
  std::vector<DecompositionNode*> all, ok;
  collect(t.root, all);
  for (auto* n : all) {
    if (pred(*n)) ok.push_back(n);
  }
  if (ok.empty()) return nullptr;
  return ok[rng() % ok.size()];
}

}  // namespace

bool mutate_tree(DecompositionTree& tree, int kind, std::mt19937_64& rng) {
  using T = CaseTag;
  auto second = [](const DecompositionNode& n) { return n.tag == T::Case0 || n.tag == T::Case1; };
  DecompositionNode* n = nullptr;
  switch (kind) {
    case 0:  // a large piece declared a leaf
      if (!(n = pick(tree, rng, second))) return false;
      n->tag = T::BaseCase;
      n->children.clear();
      n->case0.reset();
      n->case1.reset();
      n->hole_size.reset();
      return true;
    case 1:  // a child listed twice
      if (!(n = pick(tree, rng, [](const auto& x) { return !x.children.empty(); }))) return false;
      n->children.push_back(n->children.front());
      return true;
    case 2:  // a child dropped
      if (!(n = pick(tree, rng, [](const auto& x) { return !x.children.empty(); }))) return false;
      n->children.erase(n->children.begin() + static_cast<std::ptrdiff_t>(rng() % n->children.size()));
      return true;
    case 3:  // an interval end moved
      if (!(n = pick(tree, rng, [](const auto&) { return true; }))) return false;
      n->b += Rational(1, 1024);
      return true;
    case 4:  // a budget inflated
      if (!(n = pick(tree, rng, [](const auto&) { return true; }))) return false;
      n->m += 1;
      return true;
    case 5:  // markers disturbed
      if (!(n = pick(tree, rng, second))) return false;
      if (n->case0) {
        n->case0->v0 += Rational(1, 4096);
      } else {
        std::swap(n->case1->u_star, n->case1->v_star);
        if (n->case1->u_star == n->case1->v_star) n->case1->v_star += Rational(1, 4096);
      }
      return true;
    case 6:  // case tag flipped
      if (!(n = pick(tree, rng, second))) return false;
      n->tag = n->tag == T::Case0 ? T::Case1 : T::Case0;
      return true;
    case 7:  // delta0 misreported
      tree.delta0 *= 2;
      return true;
    default:
      return false;
  }
}

}  // namespace earring::testing
