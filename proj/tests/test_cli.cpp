#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "earring/cli.hpp"
#include "earring/homotopy.hpp"

using namespace earring;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("earring_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

const char* kLoop = "arc 0,0 1,0; wind 2 +; wind 2 -; arc 1,0 0,0";

}  // namespace

TEST_CASE("word commands") {
  CHECK(run({"word", "reduce", "d1 d1^- d2"}).out == "d2\n");
  CHECK(run({"word", "reduce", "d1", "d1^-"}).out == "ε\n");
  CHECK(run({"word", "equiv", "d1 d2 d2^-", "d1"}).code == 0);
  const auto ne = run({"word", "equiv", "d1", "d2"});
  CHECK(ne.code == 1);
  CHECK(ne.out.rfind("refuted: ", 0) == 0);
  CHECK(run({"word", "project", "--gens", "1", "d1 d2 d1^-"}).out == "d1 d1^-\n");
  CHECK(run({"word", "inverse", "d1 d2^-"}).out == "d2 d1^-\n");
  CHECK(run({"word", "supp", "d3 d1 d3"}).out == "1,3\n");
  CHECK(run({"word", "is-reduced", "d1 d1^-"}).code == 1);
  const auto bad = run({"word", "reduce", "d1 q7"});
  CHECK(bad.code == 2);
  CHECK(bad.out.rfind("error: ", 0) == 0);
}

TEST_CASE("expr, remark and pairing commands") {
  CHECK(run({"expr", "project", "--gens", "2", "(omega cancel-pairs 1)"}).out == "d2 d2^-\n");
  CHECK(run({"expr", "equiv-upto", "--n", "3", "(omega cancel-pairs 0)", "ε"}).code == 0);
  CHECK(run({"expr", "equiv-upto", "--n", "1", "(omega letters 0)", "ε"}).code == 1);
  CHECK(run({"remark", "interval", "0 0"}).out == "a=1/4 b=7/24\n");
  CHECK(run({"remark", "interval", "2"}).code == 2);
  CHECK(run({"remark", "word", "--depth", "1"}).out == "d1 d1^- d1 d1^-\n");
  CHECK(run({"pairing", "find", "d1 d2 d1^- d2^-"}).code == 1);
  CHECK(run({"pairing", "find", "d1 d2 d2^- d1^-"}).out == "{(0,3),(1,2)}\n");
  CHECK(run({"pairing", "check", "d1 d2 d2^- d1^-", "{(0,3),(1,2)}"}).out == "valid, complete\n");
  CHECK(run({"pairing", "check", "--strict", "d1 d2 d2^- d1^-", "{(0,3),(1,2)}"}).code == 1);
  CHECK(run({"pairing", "maximal", "d1 d1^- d2"}).out == "{(0,1)}\n");
  CHECK(run({"pairing", "residual", "d1 d1^- d2", "{(0,1)}"}).out == "d2\n");
  CHECK(run({"pairing", "enumerate", "--complete", "d1 d1^- d1 d1^-"}).code == 0);
  CHECK(run({"pairing", "enumerate", "--complete", "d1 d2"}).code == 1);
}

TEST_CASE("space commands") {
  CHECK(run({"space", "dist", "--p", "b:0,0", "--q", "b:1,0"}).out == "1\n");
  CHECK(run({"space", "dist", "c:2:0.25", "b:0,0"}).code == 0);
  CHECK(run({"space", "retract", "c:2:0.5"}).out == "1,0\n");
  CHECK(run({"space", "quotient", "b:0.3,0.3"}).out == "*\n");
  CHECK(run({"space", "diam", "b:0,0;b:1,0"}).out == "1\n");
  CHECK(run({"space", "dist", "--model", "nowhere", "b:0,0", "b:1,0"}).code == 2);
}

TEST_CASE("named finite models resolve through EARRING_MODEL_DIR") {
  const auto r = run({"space", "dist", "--model", "triangle", "b:0", "b:2"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  // No contraction modulus is known for finite models.
  CHECK(run({"path", "null", "--model", "triangle", "arc 0; wind 1 +; wind 1 -"}).code == 2);
}

TEST_CASE("path and homotopy commands") {
  CHECK(run({"path", "word", kLoop}).out == "d2 d2^-\n");
  CHECK(run({"path", "null", kLoop}).code == 0);
  CHECK(run({"path", "null", "arc 0,0 1,0; wind 2 +; arc 1,0 0,0"}).code == 1);
  CHECK(run({"path", "gbounds", kLoop}).out == "<1/4, 3/4>\n");
  const auto reduced = run({"path", "reduce", kLoop});
  CHECK(reduced.code == 0);
  CHECK(run({"path", "word", reduced.out}).out == "ε\n");
  CHECK(run({"path", "properize", "arc 0,0 1,0; exc 2 trivial; exc 2 +; arc 1,0 0,0"}).code == 0);

  const auto tree = std::filesystem::temp_directory_path() / "earring_cli_tree.json";
  const auto built = run({"homotopy", "build", "--delta", "1/8", "--out", tree.string(), kLoop});
  CHECK(built.code == 0);
  CHECK(built.out.find("delta0 1/64") != std::string::npos);
  CHECK(run({"homotopy", "verify", kLoop, tree.string()}).out == "all clauses pass\n");
  CHECK(run({"homotopy", "verify", "--tree", tree.string(), kLoop}).code == 0);

  std::ifstream in(tree);
  std::stringstream buf;
  buf << in.rdbuf();
  DecompositionTree t = tree_from_json(buf.str());
  t.root.children.clear();
  const auto broken = temp_file("broken.json", tree_to_json(t));
  const auto r = run({"homotopy", "verify", kLoop, broken.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("children") != std::string::npos);

  CHECK(run({"homotopy", "build", "--delta", "1/8", "arc 0,0 1,0; wind 2 +; arc 1,0 0,0"}).code == 1);
  CHECK(run({"homotopy", "build", kLoop}).code == 2);
}

TEST_CASE("batch mode keeps input order and aggregates exit codes") {
  std::string lines;
  std::vector<std::string> expected;
  for (int i = 1; i <= 40; ++i) {
    const std::string d = "d" + std::to_string(i);
    lines += d + " " + d + " " + d + "^-\n";
    expected.push_back(d);
  }
  const auto file = temp_file("batch.txt", "# comment\n\n" + lines);
  const auto r = run({"--batch", file.string(), "word", "reduce"});
  CHECK(r.code == 0);
  std::istringstream out(r.out);
  for (const std::string& e : expected) {
    std::string line;
    REQUIRE(std::getline(out, line));
    CHECK(line == e);
  }

  const auto pairs = temp_file("pairs.txt", "d1 d2 | d2 d1\nd1 d1^- | ε\nd1 q | d1\n");
  CHECK(run({"--batch", pairs.string(), "word", "equiv"}).code == 2);
  const auto two = temp_file("two.txt", "d1 d2 | d2 d1\nd1 d1^- | ε\n");
  const auto refuted = run({"--batch", two.string(), "word", "equiv"});
  CHECK(refuted.code == 1);
  CHECK(refuted.out.rfind("refuted: ", 0) == 0);
  CHECK(refuted.out.find("\nequivalent\n") != std::string::npos);

  CHECK(run({"--batch", "/nonexistent/file", "word", "reduce"}).code == 2);
  CHECK(run({"--batch", file.string(), "remark", "word"}).code == 2);
}

TEST_CASE("json output round-trips through the parsers") {
  const auto file = temp_file("json.txt", "d1 d2 d2^- d3\nd1 d1^-\n");
  const auto r = run({"--format", "json", "--batch", file.string(), "word", "reduce"});
  const auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["command"] == "word reduce");
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[0]["input"][0] == "d1 d2 d2^- d3");
  CHECK(parse_word(rows[0]["result"]["word"].get<std::string>()) == parse_word("d1 d3"));
  CHECK(rows[1]["result"]["length"] == 0);
  CHECK(rows[0]["elapsed_s"].get<double>() >= 0.0);

  const auto p = json_lines(run({"--format", "json", "pairing", "find", "d1 d2 d2^- d1^-"}).out);
  CHECK(parse_pairing(p.at(0)["result"]["pairing"].get<std::string>()) == Pairing{{0, 3}, {1, 2}});

  const auto f = json_lines(run({"--format", "json", "path", "reduce", kLoop}).out);
  const ProperPath g = parse_path(f.at(0)["result"]["path"].get<std::string>());
  CHECK(word_of_path(g).empty());

  const auto e = json_lines(run({"--format", "json", "word", "reduce", "x"}).out);
  CHECK(e.at(0)["status"] == "error");
  CHECK(e.at(0)["result"].contains("error"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"word"}).code == 2);
  CHECK(run({"word", "frobnicate"}).code == 2);
  CHECK(run({"nope"}).code == 2);
  CHECK(run({"--format", "xml", "word", "reduce", "d1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
