#include "earring/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace earring {

Pairing::Pairing(std::initializer_list<PositionPair> pairs) {
  for (const auto& p : pairs) insert(p);
}

Pairing::Pairing(std::vector<PositionPair> pairs) {
  for (const auto& p : pairs) insert(p);
}

void Pairing::insert(PositionPair p) {
  p = PositionPair::of(p.first, p.second);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) pairs_.insert(it, p);
}

std::set<std::size_t> Pairing::covered() const {
  std::set<std::size_t> out;
  for (const auto& p : pairs_) {
    out.insert(p.first);
    out.insert(p.second);
  }
  return out;
}

std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::PairSize: return "pair-size";
    case Clause::Disjoint: return "disjoint";
    case Clause::Coverage: return "coverage";
    case Clause::Noncrossing: return "noncrossing";
    case Clause::Inverse: return "inverse";
  }
  return "?";
}

ValidationReport validate_pairing(const Pairing& gamma, const Word& w, bool strict) {
  for (const auto& p : gamma) {
    if (p.second >= w.size()) {
      throw DomainError("pair (" + std::to_string(p.first) + "," + std::to_string(p.second) +
                        ") lies outside a word of length " + std::to_string(w.size()));
    }
  }

  ValidationReport report;
  auto add = [&](Clause c, std::vector<PositionPair> witness, std::size_t pos = 0) {
    report.violations.push_back(Violation{c, std::move(witness), pos});
  };

  std::map<std::size_t, PositionPair> owner;
  for (const auto& p : gamma) {
    if (p.first == p.second) add(Clause::PairSize, {p}, p.first);
    for (std::size_t end : {p.first, p.second}) {
      auto [it, fresh] = owner.emplace(end, p);
      if (!fresh && it->second != p) add(Clause::Disjoint, {it->second, p}, end);
    }
  }

  for (const auto& p : gamma) {
    for (std::size_t g = p.first; g <= p.second; ++g) {
      if (!owner.contains(g)) {
        add(Clause::Coverage, {p}, g);
        break;
      }
    }
  }

  const auto& ps = gamma.pairs();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const auto& p = ps[i];
      const auto& q = ps[j];  // p.first <= q.first
      if (p.first == q.first || p.second == q.second || p.second == q.first) continue;
      bool crossing = q.first < p.second && p.second < q.second;
      bool nested = q.second < p.second;
      if (crossing || (strict && nested)) add(Clause::Noncrossing, {p, q});
    }
  }

  for (const auto& p : gamma) {
    if (p.first != p.second && !w[p.first].cancels(w[p.second])) add(Clause::Inverse, {p});
  }
  return report;
}

bool is_complete(const Pairing& gamma, const Word& w) {
  return gamma.covered().size() == w.size() && 2 * gamma.size() == w.size();
}

bool nests_within(const PositionPair& p, const PositionPair& q) {
  return q.first <= p.first && p.second <= q.second;
}

std::optional<Pairing> find_complete_pairing(const Word& w) {
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  Pairing gamma;
  std::vector<std::size_t> partner(w.size(), kRoot);

  for (GenIndex g : supp(w)) {
    // Innermost already-made pair enclosing each unpaired position; pairs are
    // noncrossing, so the one with the largest left end is innermost.
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t z = 0; z < w.size(); ++z) {
      if (partner[z] != kRoot) continue;
      std::size_t enclosing = kRoot;
      for (const auto& p : gamma) {
        if (p.first < z && z < p.second && (enclosing == kRoot || p.first > enclosing)) {
          enclosing = p.first;
        }
      }
      groups[enclosing].push_back(z);
    }

    for (const auto& [enclosing, members] : groups) {
      std::vector<std::size_t> stack;
      for (std::size_t z : members) {
        if (!stack.empty() && w[stack.back()].cancels(w[z])) {
          if (w[z].index == g) {
            partner[z] = stack.back();
            partner[stack.back()] = z;
            gamma.insert(PositionPair::of(stack.back(), z));
          }
          stack.pop_back();
        } else {
          stack.push_back(z);
        }
      }
    }

    for (std::size_t z = 0; z < w.size(); ++z) {
      if (w[z].index == g && partner[z] == kRoot) return std::nullopt;
    }
  }
  return gamma;
}

Pairing maximal_pairing(const Word& w) {
  Pairing gamma;
  std::vector<std::size_t> stack;
  for (std::size_t z = 0; z < w.size(); ++z) {
    if (!stack.empty() && w[stack.back()].cancels(w[z])) {
      gamma.insert(PositionPair::of(stack.back(), z));
      stack.pop_back();
    } else {
      stack.push_back(z);
    }
  }
  return gamma;
}

Word residual_word(const Word& w, const Pairing& gamma) {
  if (!validate_pairing(gamma, w).ok()) {
    throw PreconditionError("residual_word: pairing " + to_string(gamma) +
                            " is not a noncrossing inverse pairing on " + to_string(w));
  }
  auto covered = gamma.covered();
  Word out;
  for (std::size_t z = 0; z < w.size(); ++z) {
    if (!covered.contains(z)) out.push_back(w[z]);
  }
  return out;
}

std::set<std::size_t> bound_positions(const Word& w, const Pairing& gamma) {
  std::set<std::size_t> out;
  for (const auto& p : gamma) {
    if (p.second >= w.size()) throw DomainError("pair lies outside the word");
    for (std::size_t z = p.first; z <= p.second; ++z) out.insert(z);
  }
  return out;
}

bool is_closed_under(const Pairing& gamma, std::size_t lo, std::size_t hi) {
  for (const auto& p : gamma) {
    bool a = lo <= p.first && p.first <= hi;
    bool b = lo <= p.second && p.second <= hi;
    if (a != b) return false;
  }
  return true;
}

Pairing restrict_pairing(const Word& w, const Pairing& gamma, Span u, Span v) {
  if (u.lo > u.hi || v.lo > v.hi || v.hi >= w.size()) {
    throw DomainError("restrict_pairing: spans must be nonempty and inside the word");
  }
  if (!validate_pairing(gamma, w).ok()) {
    throw RestrictionError(0, "restrict_pairing: pairing is not valid on the word");
  }
  if (!(u.hi < v.lo)) {
    throw RestrictionError(1, "hypothesis (1): every position of U must precede V");
  }
  auto bound = bound_positions(w, gamma);
  for (std::size_t z = u.lo; z <= v.hi; ++z) {
    if (!bound.contains(z)) {
      throw RestrictionError(2, "hypothesis (2): position " + std::to_string(z) +
                                    " between U and V is not bound");
    }
  }

  std::map<std::size_t, std::size_t> partner;
  for (const auto& p : gamma) {
    partner[p.first] = p.second;
    partner[p.second] = p.first;
  }
  auto in = [](Span s, std::size_t z) { return s.lo <= z && z <= s.hi; };
  auto crosses = [&](std::size_t z, Span to) {
    auto it = partner.find(z);
    return it != partner.end() && in(to, it->second);
  };
  for (std::size_t a = u.lo; a <= u.hi; ++a) {
    bool found = false;
    for (std::size_t a2 = a; a2 <= u.hi && !found; ++a2) found = crosses(a2, v);
    if (!found) {
      throw RestrictionError(3, "hypothesis (3): no pair from U into V at or after position " +
                                    std::to_string(a));
    }
  }
  for (std::size_t b = v.lo; b <= v.hi; ++b) {
    bool found = false;
    for (std::size_t b2 = v.lo; b2 <= b && !found; ++b2) found = crosses(b2, u);
    if (!found) {
      throw RestrictionError(3, "hypothesis (3): no pair from V into U at or before position " +
                                    std::to_string(b));
    }
  }

  auto reindex = [&](std::size_t z) {
    return in(u, z) ? z - u.lo : u.size() + (z - v.lo);
  };
  Pairing out;
  for (const auto& p : gamma) {
    bool first_in = in(u, p.first) || in(v, p.first);
    bool second_in = in(u, p.second) || in(v, p.second);
    if (first_in && second_in) out.insert(PositionPair::of(reindex(p.first), reindex(p.second)));
  }

  Word uv;
  for (std::size_t z = u.lo; z <= u.hi; ++z) uv.push_back(w[z]);
  for (std::size_t z = v.lo; z <= v.hi; ++z) uv.push_back(w[z]);
  if (!validate_pairing(out, uv).ok()) {
    throw Error("restrict_pairing: restriction " + to_string(out) + " is not valid on " +
                to_string(uv));
  }
  return out;
}

Pairing restrict_to_generators(const Word& w, const Pairing& gamma, const GenSet& gens) {
  std::vector<std::size_t> index(w.size(), 0);
  std::size_t next = 0;
  for (std::size_t z = 0; z < w.size(); ++z) {
    if (gens.contains(w[z].index)) index[z] = next++;
  }
  Pairing out;
  for (const auto& p : gamma) {
    if (p.second >= w.size()) throw DomainError("pair lies outside the word");
    if (gens.contains(w[p.first].index) && gens.contains(w[p.second].index)) {
      out.insert(PositionPair::of(index[p.first], index[p.second]));
    }
  }
  return out;
}

namespace {

void enumerate_from(const Word& w, bool complete_only, std::size_t z,
                    std::vector<bool>& used, std::vector<PositionPair>& chosen,
                    std::vector<Pairing>& out) {
  while (z < w.size() && used[z]) ++z;
  if (z == w.size()) {
    Pairing gamma(chosen);
    if (validate_pairing(gamma, w).ok()) out.push_back(std::move(gamma));
    return;
  }
  if (!complete_only) enumerate_from(w, complete_only, z + 1, used, chosen, out);
  used[z] = true;
  for (std::size_t y = z + 1; y < w.size(); ++y) {
    if (used[y] || !w[z].cancels(w[y])) continue;
    used[y] = true;
    chosen.push_back({z, y});
    enumerate_from(w, complete_only, z + 1, used, chosen, out);
    chosen.pop_back();
    used[y] = false;
  }
  used[z] = false;
}

}  // namespace

std::vector<Pairing> enumerate_pairings(const Word& w, bool complete_only) {
  constexpr std::size_t kMaxLength = 12;
  if (w.size() > kMaxLength) {
    throw ResourceError("enumerate_pairings: word length " + std::to_string(w.size()) +
                        " exceeds " + std::to_string(kMaxLength));
  }
  std::vector<Pairing> out;
  std::vector<bool> used(w.size(), false);
  std::vector<PositionPair> chosen;
  enumerate_from(w, complete_only, 0, used, chosen, out);
  std::sort(out.begin(), out.end());
  return out;
}

Pairing parse_pairing(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("pairing: " + why + " at offset " + std::to_string(pos),
                     std::string(text.substr(std::min(pos, text.size()))), pos);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto number = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a position");
    return static_cast<std::size_t>(std::stoull(std::string(text.substr(start, pos - start))));
  };

  Pairing gamma;
  expect('{');
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      expect('(');
      std::size_t x = number();
      expect(',');
      std::size_t y = number();
      expect(')');
      gamma.insert(PositionPair::of(x, y));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip();
  if (pos != text.size()) fail("trailing input");
  return gamma;
}

std::string to_string(const Pairing& gamma) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : gamma) {
    if (!first) out += ",";
    first = false;
    out += "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
  }
  return out + "}";
}

}  // namespace earring
