#include <json.hpp>

#include "earring/errors.hpp"
#include "earring/homotopy.hpp"

namespace earring {
namespace {

using nlohmann::json;

json rat(const Rational& r) { return to_string(r); }

json pair_json(const PositionPair& p) { return json::array({p.first, p.second}); }

json node_json(const DecompositionNode& n) {
  json j;
  j["interval"] = json::array({rat(n.a), rat(n.b)});
  j["case"] = std::string(case_tag_name(n.tag));
  j["m"] = n.m.str();
  j["size"] = n.size;
  if (n.witness) j["pair"] = pair_json(*n.witness);
  if (n.case0) {
    const auto& mk = *n.case0;
    j["case0"] = {{"pair", pair_json(mk.pair)},
                  {"u0", rat(mk.u0)}, {"v0", rat(mk.v0)},
                  {"u1", rat(mk.u1)}, {"v1", rat(mk.v1)}};
  }
  if (n.case1) {
    const auto& mk = *n.case1;
    json bounds = json::array();
    for (const auto& [u, v] : mk.bounds) bounds.push_back(json::array({rat(u), rat(v)}));
    j["case1"] = {{"innermost", pair_json(mk.innermost)},
                  {"u_star", rat(mk.u_star)}, {"v_star", rat(mk.v_star)},
                  {"bounds", bounds}};
  }
  if (n.hole_size) j["hole_size"] = *n.hole_size;
  json kids = json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c));
  j["children"] = std::move(kids);
  return j;
}

Rational get_rat(const json& j) { return parse_rational(j.get<std::string>()); }

PositionPair get_pair(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("pair must be [i, j]", j.dump(), 0);
  return PositionPair::of(j[0].get<std::size_t>(), j[1].get<std::size_t>());
}

DecompositionNode node_from(const json& j) {
  DecompositionNode n;
  const json& iv = j.at("interval");
  n.a = get_rat(iv.at(0));
  n.b = get_rat(iv.at(1));
  n.tag = parse_case_tag(j.at("case").get<std::string>());
  n.m = BigInt(j.at("m").get<std::string>());
  n.size = j.at("size").get<double>();
  if (j.contains("pair")) n.witness = get_pair(j["pair"]);
  if (j.contains("case0")) {
    const json& c = j["case0"];
    n.case0 = Case0Markers{get_pair(c.at("pair")), get_rat(c.at("u0")), get_rat(c.at("v0")),
                           get_rat(c.at("u1")), get_rat(c.at("v1"))};
  }
  if (j.contains("case1")) {
    const json& c = j["case1"];
    Case1Markers mk;
    mk.innermost = get_pair(c.at("innermost"));
    mk.u_star = get_rat(c.at("u_star"));
    mk.v_star = get_rat(c.at("v_star"));
    for (const json& b : c.at("bounds")) mk.bounds.emplace_back(get_rat(b.at(0)), get_rat(b.at(1)));
    n.case1 = std::move(mk);
  }
  if (j.contains("hole_size")) n.hole_size = j["hole_size"].get<double>();
  for (const json& c : j.at("children")) n.children.push_back(node_from(c));
  return n;
}

}  // namespace

std::string tree_to_json(const DecompositionTree& tree, int indent) {
  json j;
  j["format"] = 1;
  j["delta"] = rat(tree.delta);
  j["alpha"] = rat(tree.alpha);
  j["delta0"] = rat(tree.delta0);
  j["root"] = node_json(tree.root);
  return j.dump(indent);
}

DecompositionTree tree_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree: ") + e.what(), "", e.byte);
  }
  try {
    if (j.at("format").get<int>() != 1) throw ParseError("tree: unsupported format", "format", 0);
    DecompositionTree t;
    t.delta = get_rat(j.at("delta"));
    t.alpha = get_rat(j.at("alpha"));
    t.delta0 = get_rat(j.at("delta0"));
    t.root = node_from(j.at("root"));
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("tree: ") + e.what(), "", 0);
  }
}

}  // namespace earring
