#include "earring/expr.hpp"

#include <cctype>
#include <variant>

#include "earring/errors.hpp"
#include "earring/remark.hpp"

namespace earring {

struct Expr::Node {
  std::variant<Leaf, Cat, Omega, Inv> value;
};

Expr::Expr() : node_(std::make_shared<const Node>(Node{Cat{}})) {}

Expr Expr::leaf(Letter l) {
  return Expr(std::make_shared<const Node>(Node{Leaf{l}}));
}

Expr Expr::cat(std::vector<Expr> parts) {
  return Expr(std::make_shared<const Node>(Node{Cat{std::move(parts)}}));
}

Expr Expr::omega(std::string description, Family family, OccurrenceBound bound) {
  return Expr(std::make_shared<const Node>(
      Node{Omega{std::move(description), std::move(family), std::move(bound)}}));
}

Expr Expr::inv(Expr inner) {
  return Expr(std::make_shared<const Node>(Node{Inv{{std::move(inner)}}}));
}

Expr Expr::from_word(const Word& w) {
  std::vector<Expr> parts;
  parts.reserve(w.size());
  for (const Letter& l : w) parts.push_back(leaf(l));
  return cat(std::move(parts));
}

bool Expr::is_leaf() const { return std::holds_alternative<Leaf>(node_->value); }
bool Expr::is_cat() const { return std::holds_alternative<Cat>(node_->value); }
bool Expr::is_omega() const { return std::holds_alternative<Omega>(node_->value); }
bool Expr::is_inv() const { return std::holds_alternative<Inv>(node_->value); }
const Expr::Leaf& Expr::as_leaf() const { return std::get<Leaf>(node_->value); }
const Expr::Cat& Expr::as_cat() const { return std::get<Cat>(node_->value); }
const Expr::Omega& Expr::as_omega() const { return std::get<Omega>(node_->value); }
const Expr& Expr::inner() const { return std::get<Inv>(node_->value).inner.front(); }

namespace {

void project_into(const Expr& e, const GenSet& gens, Word& out);

Word project_node(const Expr& e, const GenSet& gens) {
  Word w;
  project_into(e, gens, w);
  return w;
}

void project_into(const Expr& e, const GenSet& gens, Word& out) {
  if (gens.empty()) return;
  if (e.is_leaf()) {
    if (gens.contains(e.as_leaf().letter.index)) out.push_back(e.as_leaf().letter);
  } else if (e.is_cat()) {
    for (const Expr& part : e.as_cat().parts) project_into(part, gens, out);
  } else if (e.is_inv()) {
    out.append(inverse(project_node(e.inner(), gens)));
  } else {
    const auto& om = e.as_omega();
    std::set<std::uint64_t> terms;
    for (GenIndex n : gens) terms.merge(om.occurrence_bound(n));
    for (std::uint64_t k : terms) {
      if (k == 0) throw CertificateViolation(om.description + ": occurrence bound lists term 0");
      Word part = project_node(om.family(k), gens);
      for (const Letter& l : part) {
        if (!om.occurrence_bound(l.index).contains(k)) {
          throw CertificateViolation(om.description + ": term " + std::to_string(k) +
                                     " uses " + to_string(l) + " outside its occurrence bound");
        }
      }
      out.append(part);
    }
  }
}

std::string violation_in(const Expr& e, GenIndex max_index, std::uint64_t max_k) {
  if (e.is_leaf()) return {};
  if (e.is_inv()) return violation_in(e.inner(), max_index, max_k);
  if (e.is_cat()) {
    for (const Expr& part : e.as_cat().parts) {
      if (auto v = violation_in(part, max_index, max_k); !v.empty()) return v;
    }
    return {};
  }
  const auto& om = e.as_omega();
  GenSet all;
  for (GenIndex n = 1; n <= max_index; ++n) all.insert(n);
  for (std::uint64_t k = 1; k <= max_k; ++k) {
    // Nested families are checked by the projection itself; walking into
    // them term by term does not terminate for self-similar families.
    Expr term = om.family(k);
    Word part;
    try {
      part = project_node(term, all);
    } catch (const CertificateViolation& cv) {
      return cv.what();
    }
    for (const Letter& l : part) {
      if (!om.occurrence_bound(l.index).contains(k)) {
        return om.description + ": term " + std::to_string(k) + " uses " + to_string(l) +
               " outside its occurrence bound";
      }
    }
  }
  return {};
}

// --- rules -----------------------------------------------------------------

std::set<std::uint64_t> single_term(std::int64_t k) {
  if (k >= 1) return {static_cast<std::uint64_t>(k)};
  return {};
}

GenIndex shifted(std::uint64_t k, std::int64_t s) {
  std::int64_t n = static_cast<std::int64_t>(k) + s;
  if (n < 1) throw DomainError("rule produced generator index " + std::to_string(n));
  return static_cast<GenIndex>(n);
}

std::string describe(std::string_view name, const std::vector<std::int64_t>& args) {
  std::string s = "(omega " + std::string(name);
  for (auto a : args) s += " " + std::to_string(a);
  return s + ")";
}

std::int64_t shift_arg(std::string_view name, const std::vector<std::int64_t>& args) {
  if (args.size() != 1) {
    throw DomainError("rule '" + std::string(name) + "' takes one integer argument");
  }
  if (args[0] < 0) throw DomainError("rule '" + std::string(name) + "' needs a shift >= 0");
  return args[0];
}

// --- parsing ---------------------------------------------------------------

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_one();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
    throw ParseError("expression: " + why + " at offset " + std::to_string(pos_),
                     std::string(text_.substr(pos_, end - pos_)), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view atom() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected an atom");
    return text_.substr(start, pos_ - start);
  }

  bool at_close() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  Expr parse_one() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] != '(') {
      std::size_t start = pos_;
      std::string_view tok = atom();
      if (tok == "ε") return Expr{};
      Word w;
      try {
        w = parse_word(tok);
      } catch (const ParseError&) {
        pos_ = start;
        fail("malformed letter");
      }
      return Expr::leaf(w[0]);
    }
    ++pos_;
    std::string_view head = atom();
    if (head == "cat") {
      std::vector<Expr> parts;
      while (!at_close()) {
        if (pos_ >= text_.size()) fail("unterminated (cat");
        parts.push_back(parse_one());
      }
      ++pos_;
      return Expr::cat(std::move(parts));
    }
    if (head == "inv") {
      Expr inner = parse_one();
      if (!at_close()) fail("(inv takes exactly one expression");
      ++pos_;
      return Expr::inv(std::move(inner));
    }
    if (head == "omega") {
      std::size_t name_pos = pos_;
      std::string name(atom());
      std::vector<std::int64_t> args;
      while (!at_close()) {
        if (pos_ >= text_.size()) fail("unterminated (omega");
        std::size_t arg_pos = pos_;
        std::string_view a = atom();
        try {
          std::size_t used = 0;
          args.push_back(std::stoll(std::string(a), &used));
          if (used != a.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
          pos_ = arg_pos;
          skip_space();
          fail("expected an integer rule argument");
        }
      }
      ++pos_;
      try {
        return make_rule(name, args);
      } catch (const DomainError& e) {
        pos_ = name_pos;
        skip_space();
        fail(e.what());
      }
    }
    fail("unknown form '" + std::string(head) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out) {
  if (e.is_leaf()) {
    out += to_string(e.as_leaf().letter);
  } else if (e.is_inv()) {
    out += "(inv ";
    print(e.inner(), out);
    out += ")";
  } else if (e.is_omega()) {
    out += e.as_omega().description;
  } else {
    const auto& parts = e.as_cat().parts;
    if (parts.empty()) {
      out += "ε";
      return;
    }
    out += "(cat";
    for (const Expr& p : parts) {
      out += ' ';
      print(p, out);
    }
    out += ")";
  }
}

}  // namespace

Word expr_project(const Expr& e, const GenSet& gens) {
  return project_node(e, gens);
}

bool expr_equivalent_upto(const Expr& lhs, const Expr& rhs, GenIndex n) {
  GenSet gens;
  for (GenIndex i = 1; i <= n; ++i) gens.insert(i);
  return free_reduce(expr_project(lhs, gens)) == free_reduce(expr_project(rhs, gens));
}

std::string find_bound_violation(const Expr& e, GenIndex max_index, std::uint64_t max_k) {
  return violation_in(e, max_index, max_k);
}

Expr make_rule(std::string_view name, const std::vector<std::int64_t>& args) {
  std::string description = describe(name, args);
  if (name == "cancel-pairs") {
    std::int64_t s = shift_arg(name, args);
    return Expr::omega(
        description,
        [s](std::uint64_t k) {
          GenIndex n = shifted(k, s);
          return Expr::from_word(Word{gen(n), inv(n)});
        },
        [s](GenIndex n) { return single_term(static_cast<std::int64_t>(n) - s); });
  }
  if (name == "letters" || name == "inverse-letters") {
    std::int64_t s = shift_arg(name, args);
    int sign = name == "letters" ? +1 : -1;
    return Expr::omega(
        description,
        [s, sign](std::uint64_t k) { return Expr::leaf(Letter{shifted(k, s), sign}); },
        [s](GenIndex n) { return single_term(static_cast<std::int64_t>(n) - s); });
  }
  if (name == "blocks") {
    std::int64_t s = shift_arg(name, args);
    return Expr::omega(
        description,
        [s](std::uint64_t k) {
          GenIndex n = shifted(k, s);
          return Expr::from_word(Word{gen(n), gen(n + 1), inv(n), inv(n + 1)});
        },
        [s](GenIndex n) {
          auto terms = single_term(static_cast<std::int64_t>(n) - s);
          terms.merge(single_term(static_cast<std::int64_t>(n) - s - 1));
          return terms;
        });
  }
  if (name == "remark") {
    if (!args.empty()) throw DomainError("rule 'remark' takes no arguments");
    return remark_expression();
  }
  throw DomainError("unknown rule '" + std::string(name) + "'");
}

std::vector<std::string> rule_names() {
  return {"cancel-pairs", "letters", "inverse-letters", "blocks", "remark"};
}

Expr parse_expr(std::string_view text) {
  return ExprParser(text).parse();
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace earring
