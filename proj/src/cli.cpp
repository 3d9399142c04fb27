#include "earring/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "earring/errors.hpp"
#include "earring/expr.hpp"
#include "earring/homotopy.hpp"
#include "earring/pairing.hpp"
#include "earring/path.hpp"
#include "earring/remark.hpp"
#include "earring/space.hpp"
#include "earring/word.hpp"

namespace earring::cli {
namespace {

using nlohmann::json;
using Items = std::vector<std::string>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? p : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read '" + file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A file's contents when `arg` names a file, else `arg` itself with ';' as
// line separator.
std::string source(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  std::string text = arg;
  std::replace(text.begin(), text.end(), ';', '\n');
  return text;
}

GenSet parse_gens(const std::string& text) {
  GenSet out;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long n = std::stoul(tok, &used);
      if (used != tok.size() || n == 0) throw std::invalid_argument(tok);
      out.insert(static_cast<GenIndex>(n));
    } catch (const std::logic_error&) {
      throw ParseError("bad generator index '" + tok + "'", tok, 0);
    }
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::string& need(const Items& items, std::size_t i, const std::string& what) {
  if (i >= items.size() || items[i].empty()) throw Error("missing " + what);
  return items[i];
}

CommandResult ok(std::string text, json payload) {
  return {Status::Ok, std::move(text), std::move(payload), {}};
}
CommandResult refuted(std::string text, json payload) {
  return {Status::Refuted, std::move(text), std::move(payload), {}};
}

json violations_json(const ValidationReport& r) {
  json out = json::array();
  for (const Violation& v : r.violations) {
    json pairs = json::array();
    for (const auto& p : v.witness) pairs.push_back(json::array({p.first, p.second}));
    json e = {{"clause", std::string(clause_name(v.clause))}, {"pairs", pairs}};
    if (v.clause == Clause::Coverage) e["position"] = v.position;
    out.push_back(std::move(e));
  }
  return out;
}

std::string violations_text(const ValidationReport& r) {
  std::string out;
  for (const Violation& v : r.violations) {
    if (!out.empty()) out += "; ";
    out += clause_name(v.clause);
    for (const auto& p : v.witness) {
      out += " (" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
    }
    if (v.clause == Clause::Coverage) out += " position " + std::to_string(v.position);
  }
  return out;
}

struct Options {
  std::string gens;
  GenIndex n = 1;
  std::size_t depth = 1;
  bool strict = false;
  bool complete = false;
  std::string model = "unit-square";
  std::string p, q;
  std::string pairing;
  std::string delta;
  std::string alpha;
  std::string tree;
  std::string out;
};

using Handler = std::function<CommandResult(const Items&)>;

struct Command {
  std::size_t arity;  // positional items per input; batch lines split on '|'
  Handler fn;
};

ProperPath load_path(const std::string& arg, const SpaceModel& model) {
  ProperPath f = parse_path(source(arg));
  require_valid(f, model);
  return f;
}

Pairing gamma_for(const Options& o, const Word& w) {
  if (!o.pairing.empty()) return parse_pairing(trim(source(o.pairing)));
  auto found = find_complete_pairing(w);
  if (!found) throw PreconditionError("no complete pairing: word reduces to " + to_string(free_reduce(w)));
  return *found;
}

json path_json(const ProperPath& f) {
  return {{"path", to_string(f)}, {"word", to_string(word_of_path(f))}};
}

std::map<std::string, std::map<std::string, Command>> commands(const Options& o) {
  std::map<std::string, std::map<std::string, Command>> c;
  auto& word = c["word"];
  word["reduce"] = {1, [](const Items& it) {
                      const Word r = free_reduce(parse_word(need(it, 0, "word")));
                      return ok(to_string(r), {{"word", to_string(r)}, {"length", r.size()}});
                    }};
  word["equiv"] = {2, [](const Items& it) {
                     const Word v = parse_word(need(it, 0, "first word"));
                     const Word w = parse_word(need(it, 1, "second word"));
                     const Word diff = free_reduce(concat(v, inverse(w)));
                     json p = {{"equivalent", diff.empty()}, {"difference", to_string(diff)}};
                     if (diff.empty()) return ok("equivalent", p);
                     return refuted("not equivalent: v w^- reduces to " + to_string(diff), p);
                   }};
  word["project"] = {1, [&o](const Items& it) {
                       const Word w = project(parse_word(need(it, 0, "word")), parse_gens(o.gens));
                       return ok(to_string(w), {{"word", to_string(w)}});
                     }};
  word["inverse"] = {1, [](const Items& it) {
                       const Word w = inverse(parse_word(need(it, 0, "word")));
                       return ok(to_string(w), {{"word", to_string(w)}});
                     }};
  word["supp"] = {1, [](const Items& it) {
                    const GenSet s = supp(parse_word(need(it, 0, "word")));
                    std::string text;
                    for (GenIndex g : s) text += (text.empty() ? "" : ",") + std::to_string(g);
                    return ok(text.empty() ? "{}" : text, {{"support", s}});
                  }};
  word["is-reduced"] = {1, [](const Items& it) {
                          const Word w = parse_word(need(it, 0, "word"));
                          const Word r = free_reduce(w);
                          json p = {{"reduced", is_reduced(w)}, {"word", to_string(r)}};
                          if (is_reduced(w)) return ok("reduced", p);
                          return refuted("not reduced; reduces to " + to_string(r), p);
                        }};

  auto& expr = c["expr"];
  expr["project"] = {1, [&o](const Items& it) {
                       const Word w = expr_project(parse_expr(need(it, 0, "expression")),
                                                   parse_gens(o.gens));
                       return ok(to_string(w), {{"word", to_string(w)}});
                     }};
  expr["equiv-upto"] = {2, [&o](const Items& it) {
                          const Expr e1 = parse_expr(need(it, 0, "first expression"));
                          const Expr e2 = parse_expr(need(it, 1, "second expression"));
                          GenSet f;
                          for (GenIndex k = 1; k <= o.n; ++k) f.insert(k);
                          const Word p1 = free_reduce(expr_project(e1, f));
                          const Word p2 = free_reduce(expr_project(e2, f));
                          json p = {{"equivalent", p1 == p2}, {"n", o.n},
                                    {"lhs", to_string(p1)}, {"rhs", to_string(p2)}};
                          if (p1 == p2) return ok("equivalent up to " + std::to_string(o.n), p);
                          return refuted("projections differ: " + to_string(p1) + " vs " +
                                             to_string(p2), p);
                        }};

  auto& remark = c["remark"];
  remark["interval"] = {1, [](const Items& it) {
                          SeqIndex s;
                          for (const std::string& tok : split(need(it, 0, "sequence"), ' ')) {
                            for (const std::string& t : split(tok, ',')) {
                              if (t.empty()) continue;
                              try {
                                std::size_t used = 0;
                                const unsigned long v = std::stoul(t, &used);
                                if (used != t.size()) throw std::invalid_argument(t);
                                s.entries.push_back(static_cast<std::uint32_t>(v));
                              } catch (const std::logic_error&) {
                                throw ParseError("bad sequence entry '" + t + "'", t, 0);
                              }
                            }
                          }
                          const ExactInterval r = remark_interval(s);
                          return ok("a=" + to_string(r.a) + " b=" + to_string(r.b),
                                    {{"s", to_string(s)}, {"a", to_string(r.a)},
                                     {"b", to_string(r.b)}});
                        }};
  remark["word"] = {0, [&o](const Items&) {
                      GenSet f;
                      for (GenIndex k = 1; k <= o.depth; ++k) f.insert(k);
                      const Word w = expr_project(build_remark_expression(o.depth), f);
                      return ok(to_string(w), {{"word", to_string(w)}, {"depth", o.depth},
                                               {"length", w.size()}});
                    }};

  auto& pairing = c["pairing"];
  pairing["find"] = {1, [](const Items& it) {
                       const Word w = parse_word(need(it, 0, "word"));
                       if (auto g = find_complete_pairing(w)) {
                         return ok(to_string(*g), {{"word", to_string(w)}, {"pairing", to_string(*g)}});
                       }
                       const Word r = free_reduce(w);
                       return refuted("no complete pairing; reduces to " + to_string(r),
                                      {{"word", to_string(w)}, {"reduced", to_string(r)}});
                     }};
  pairing["check"] = {2, [&o](const Items& it) {
                        const Word w = parse_word(need(it, 0, "word"));
                        const Pairing g = parse_pairing(need(it, 1, "pairing"));
                        const ValidationReport r = validate_pairing(g, w, o.strict);
                        json p = {{"word", to_string(w)}, {"pairing", to_string(g)},
                                  {"valid", r.ok()}, {"violations", violations_json(r)}};
                        if (!r.ok()) return refuted("invalid: " + violations_text(r), p);
                        p["complete"] = is_complete(g, w);
                        return ok(is_complete(g, w) ? "valid, complete" : "valid, partial", p);
                      }};
  pairing["maximal"] = {1, [](const Items& it) {
                          const Word w = parse_word(need(it, 0, "word"));
                          const Pairing g = maximal_pairing(w);
                          return ok(to_string(g), {{"word", to_string(w)}, {"pairing", to_string(g)},
                                                   {"residual", to_string(residual_word(w, g))}});
                        }};
  pairing["residual"] = {2, [](const Items& it) {
                           const Word w = parse_word(need(it, 0, "word"));
                           const Word r = residual_word(w, parse_pairing(need(it, 1, "pairing")));
                           return ok(to_string(r), {{"word", to_string(r)}});
                         }};
  pairing["enumerate"] = {1, [&o](const Items& it) {
                            const Word w = parse_word(need(it, 0, "word"));
                            const auto all = enumerate_pairings(w, o.complete);
                            json list = json::array();
                            std::string text;
                            for (const Pairing& g : all) {
                              list.push_back(to_string(g));
                              text += (text.empty() ? "" : " ") + to_string(g);
                            }
                            json p = {{"word", to_string(w)}, {"count", all.size()}, {"pairings", list}};
                            if (all.empty()) return refuted("no complete pairing", p);
                            return ok(text, p);
                          }};

  auto& space = c["space"];
  space["dist"] = {2, [&o](const Items& it) {
                     const ModelPtr m = model_by_name(o.model);
                     const EPoint p = parse_point(it.size() > 0 && !it[0].empty() ? it[0] : o.p);
                     const EPoint q = parse_point(it.size() > 1 && !it[1].empty() ? it[1] : o.q);
                     const double d = distance(p, q, *m);
                     const double h = quotient_distance(quotient(canonical(p, *m)),
                                                        quotient(canonical(q, *m)));
                     return ok(fmt(d), {{"distance", d}, {"quotient_distance", h},
                                        {"p", to_string(p)}, {"q", to_string(q)}});
                   }};
  space["retract"] = {1, [&o](const Items& it) {
                        const ModelPtr m = model_by_name(o.model);
                        const BasePoint x = retract(parse_point(need(it, 0, "point")), *m);
                        return ok(to_string(x), {{"point", to_string(x)}});
                      }};
  space["quotient"] = {1, [&o](const Items& it) {
                         const ModelPtr m = model_by_name(o.model);
                         const HPoint h = quotient(canonical(parse_point(need(it, 0, "point")), *m));
                         return ok(to_string(h), {{"point", to_string(h)}});
                       }};
  space["diam"] = {1, [&o](const Items& it) {
                     const ModelPtr m = model_by_name(o.model);
                     std::vector<EPoint> pts;
                     for (const std::string& s : split(need(it, 0, "points"), ';')) {
                       if (!s.empty()) pts.push_back(parse_point(s));
                     }
                     const double d = diam(pts, *m);
                     return ok(fmt(d), {{"diameter", d}, {"points", pts.size()}});
                   }};

  auto& path = c["path"];
  path["word"] = {1, [&o](const Items& it) {
                    const ModelPtr m = model_by_name(o.model);
                    const ProperPath f = load_path(need(it, 0, "path"), *m);
                    return ok(to_string(word_of_path(f)), path_json(f));
                  }};
  path["null"] = {1, [&o](const Items& it) {
                    const ModelPtr m = model_by_name(o.model);
                    const ProperPath f = load_path(need(it, 0, "path"), *m);
                    const NullLoopResult r = is_null_loop(f, *m);
                    json p = path_json(f);
                    p["null"] = r.null;
                    if (r.null) {
                      p["certificate"] = to_string(*r.certificate);
                      return ok("null; certificate " + to_string(*r.certificate), p);
                    }
                    p["reduced"] = to_string(r.refutation);
                    return refuted("not null; word reduces to " + to_string(r.refutation), p);
                  }};
  path["reduce"] = {1, [&o](const Items& it) {
                      const ModelPtr m = model_by_name(o.model);
                      const ProperPath g = reduce_path(load_path(need(it, 0, "path"), *m), *m);
                      return ok(to_string(g), path_json(g));
                    }};
  path["gbounds"] = {1, [&o](const Items& it) {
                       const ModelPtr m = model_by_name(o.model);
                       const ProperPath f = load_path(need(it, 0, "path"), *m);
                       const Pairing g = o.pairing.empty() ? maximal_pairing(word_of_path(f))
                                                           : parse_pairing(trim(source(o.pairing)));
                       json list = json::array();
                       std::string text;
                       for (const GammaBound& b : gamma_bound_intervals(f, g)) {
                         list.push_back({{"u", to_string(b.u)}, {"v", to_string(b.v)},
                                         {"pair", json::array({b.witness.first, b.witness.second})}});
                         text += (text.empty() ? "" : " ") + ("<" + to_string(b.u) + ", " +
                                                              to_string(b.v) + ">");
                       }
                       return ok(text.empty() ? "none" : text,
                                 {{"pairing", to_string(g)}, {"bounds", list}});
                     }};
  path["properize"] = {1, [&o](const Items& it) {
                         const ModelPtr m = model_by_name(o.model);
                         const ProperPath f = properize(parse_raw_path(source(need(it, 0, "raw path"))), *m);
                         return ok(to_string(f), path_json(f));
                       }};

  auto& homotopy = c["homotopy"];
  homotopy["build"] = {1, [&o](const Items& it) {
                         const ModelPtr m = model_by_name(o.model);
                         const ProperPath f = load_path(need(it, 0, "path"), *m);
                         const Word w = word_of_path(f);
                         if (o.pairing.empty() && !find_complete_pairing(w)) {
                           return refuted("not null; word reduces to " + to_string(free_reduce(w)),
                                          {{"word", to_string(w)}, {"reduced", to_string(free_reduce(w))}});
                         }
                         if (o.delta.empty()) throw Error("missing --delta");
                         std::optional<Rational> alpha;
                         if (!o.alpha.empty()) alpha = parse_rational(o.alpha);
                         const DecompositionTree t =
                             build_decomposition(f, gamma_for(o, w), parse_rational(o.delta), *m, alpha);
                         const std::string js = tree_to_json(t);
                         if (!o.out.empty()) {
                           std::ofstream outf(o.out);
                           if (!(outf << js << '\n')) throw Error("cannot write '" + o.out + "'");
                         }
                         return ok("tree: " + std::to_string(tree_size(t.root)) + " nodes, depth " +
                                       std::to_string(tree_depth(t.root)) + ", delta0 " +
                                       to_string(t.delta0),
                                   {{"tree", json::parse(js)}});
                       }};
  homotopy["verify"] = {2, [&o](const Items& it) {
                          const ModelPtr m = model_by_name(o.model);
                          const ProperPath f = load_path(need(it, 0, "path"), *m);
                          const std::string tree_arg = it.size() > 1 && !it[1].empty() ? it[1] : o.tree;
                          if (tree_arg.empty()) throw Error("missing tree");
                          const DecompositionTree t = tree_from_json(source(tree_arg));
                          const Rational delta = o.delta.empty() ? t.delta : parse_rational(o.delta);
                          std::optional<Rational> alpha;
                          if (!o.alpha.empty()) alpha = parse_rational(o.alpha);
                          else if (t.alpha != t.delta) alpha = t.alpha;
                          const TreeReport r =
                              verify_decomposition(t, f, gamma_for(o, word_of_path(f)), delta, *m, alpha);
                          json list = json::array();
                          std::string text;
                          for (const TreeFailure& e : r.failures) {
                            list.push_back({{"clause", e.clause}, {"node", e.node}, {"message", e.message}});
                            text += (text.empty() ? "" : "; ") + e.clause + " at " + e.node + ": " + e.message;
                          }
                          json p = {{"ok", r.ok()}, {"failures", list}};
                          if (r.ok()) return ok("all clauses pass", p);
                          return refuted(std::to_string(r.failures.size()) + " failure(s): " + text, p);
                        }};
  return c;
}

CommandResult run_one(const Handler& fn, const Items& items) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandResult r;
  try {
    r = fn(items);
  } catch (const std::exception& e) {
    r = {Status::Error, e.what(), json{{"error", e.what()}}, {}};
  }
  r.elapsed = std::chrono::steady_clock::now() - t0;
  return r;
}

std::vector<CommandResult> run_all(const Handler& fn, const std::vector<Items>& inputs) {
  std::vector<CommandResult> results(inputs.size());
  const std::size_t workers =
      std::min<std::size_t>({inputs.size(), std::max(1u, std::thread::hardware_concurrency()), 8});
  if (workers <= 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i) results[i] = run_one(fn, inputs[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < inputs.size(); i = next++) results[i] = run_one(fn, inputs[i]);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

void emit(std::ostream& out, const std::string& format, const std::string& command,
          const Items& input, const CommandResult& r) {
  if (format == "json") {
    json j = {{"command", command}, {"input", input}, {"status", std::string(status_name(r.status))},
              {"result", r.payload}, {"elapsed_s", r.elapsed.count()}};
    out << j.dump() << '\n';
    return;
  }
  switch (r.status) {
    case Status::Ok: out << trim(r.text) << '\n'; break;
    case Status::Refuted: out << "refuted: " << r.text << '\n'; break;
    case Status::Error: out << "error: " << r.text << '\n'; break;
  }
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Refuted: return "refuted";
    case Status::Error: return "error";
  }
  return "?";
}

int exit_code(const std::vector<CommandResult>& results) {
  int code = 0;
  for (const auto& r : results) {
    if (r.status == Status::Error) return 2;
    if (r.status == Status::Refuted) code = 1;
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string format = "text";
  std::string batch;
  Items positional;

  CLI::App app{"Word calculus and earring-space tools", "earring"};
  app.require_subcommand(1);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--batch", batch, "File with one input per line; '|' separates arguments");

  const auto table = commands(o);
  std::vector<std::pair<CLI::App*, std::map<std::string, CLI::App*>>> subs;
  for (const auto& [group, cmds] : table) {
    CLI::App* g = app.add_subcommand(group, group + " operations");
    g->require_subcommand(1);
    std::map<std::string, CLI::App*> leaves;
    for (const auto& [name, cmd] : cmds) {
      CLI::App* s = g->add_subcommand(name);
      if (cmd.arity > 0) s->add_option("items", positional, "Inputs")->expected(0, -1);
      if (group == "word" || group == "expr") s->add_option("--gens", o.gens, "Generator set, e.g. 1,3");
      if (group == "expr") s->add_option("--n", o.n, "Compare projections onto {1..n}");
      if (group == "remark") s->add_option("--depth", o.depth, "Block depth");
      if (group == "pairing") {
        s->add_flag("--strict", o.strict, "Forbid nesting as well as crossing");
        s->add_flag("--complete", o.complete, "Only complete pairings");
      }
      if (group == "space" || group == "path" || group == "homotopy") {
        s->add_option("--model", o.model, "Base space model");
      }
      if (group == "space") {
        s->add_option("--p", o.p, "First point");
        s->add_option("--q", o.q, "Second point");
      }
      if (group == "path" || group == "homotopy") {
        s->add_option("--pairing", o.pairing, "Pairing literal or file");
      }
      if (group == "homotopy") {
        s->add_option("--delta", o.delta, "Leaf size threshold (rational)");
        s->add_option("--alpha", o.alpha, "Hole size cap (rational)");
        s->add_option("--tree", o.tree, "Tree JSON file");
        s->add_option("--out", o.out, "Write the tree JSON here");
      }
      leaves[name] = s;
    }
    subs.emplace_back(g, std::move(leaves));
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string group, name;
  for (const auto& [g, leaves] : subs) {
    if (!g->parsed()) continue;
    group = g->get_name();
    for (const auto& [n, s] : leaves) {
      if (s->parsed()) name = n;
    }
  }
  const Command& cmd = table.at(group).at(name);

  std::vector<Items> inputs;
  if (!batch.empty()) {
    if (cmd.arity == 0) {
      err << "error: " << group << ' ' << name << " takes no batch input\n";
      return 2;
    }
    std::string text;
    try {
      text = read_file(batch);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      inputs.push_back(cmd.arity == 1 ? Items{t} : split(t, '|'));
    }
  } else if (cmd.arity == 1 && positional.size() > 1) {
    std::string joined;
    for (const auto& p : positional) joined += (joined.empty() ? "" : " ") + p;
    inputs.push_back({joined});
  } else {
    inputs.push_back(positional);
  }

  const auto results = run_all(cmd.fn, inputs);
  const std::string command = group + " " + name;
  for (std::size_t i = 0; i < results.size(); ++i) emit(out, format, command, inputs[i], results[i]);
  return exit_code(results);
}

}  // namespace earring::cli
