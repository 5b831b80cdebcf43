#include "leafbridge/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "leafbridge/error.hpp"

namespace leafbridge::io {

namespace {

const std::vector<std::pair<Kind, std::string>>& kind_names() {
  static const std::vector<std::pair<Kind, std::string>> k = {
      {Kind::kTree, "tree"},
      {Kind::kOForest, "oforest"},
      {Kind::kLeafStructure, "leaf_structure"},
      {Kind::kQuasiTree, "quasi_tree"},
      {Kind::kUnrootedTree, "unrooted_tree"},
      {Kind::kSeparation, "separation"},
      {Kind::kGraph, "graph"},
      {Kind::kLaminar, "laminar"},
      {Kind::kWeights, "weights"},
  };
  return k;
}

Json header(Kind k) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = kind_name(k);
  return j;
}

[[noreturn]] void fail(const std::string& what, const std::string& msg) { throw InputError(what + ": " + msg); }

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) fail(what, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(what, std::string("missing field '") + key + "'");
  return *it;
}

NodeId id_of(const Json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(what, "identifiers must be strings or integers, got " + v.dump());
}

std::vector<NodeId> ids(const Json& v, const std::string& what) {
  if (!v.is_array()) fail(what, "expected an array of identifiers, got " + v.dump());
  std::vector<NodeId> out;
  for (const auto& e : v) out.push_back(id_of(e, what));
  return out;
}

template <std::size_t N>
std::vector<std::array<NodeId, N>> tuples(const Json& v, const std::string& what) {
  if (!v.is_array()) fail(what, "expected an array of tuples");
  std::vector<std::array<NodeId, N>> out;
  for (const auto& t : v) {
    if (!t.is_array() || t.size() != N)
      fail(what, "expected tuples of length " + std::to_string(N) + ", got " + t.dump());
    std::array<NodeId, N> a;
    for (std::size_t i = 0; i < N; ++i) a[i] = id_of(t[i], what);
    out.push_back(a);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> pairs(const Json& v, const std::string& what) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& t : tuples<2>(v, what)) out.emplace_back(t[0], t[1]);
  return out;
}

void check_format(const Json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object at top level");
  if (auto it = j.find("format"); it != j.end() && *it != kFormat)
    throw InputError("unsupported format tag " + it->dump() + " (expected \"" + kFormat + "\")");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string kind_name(Kind k) {
  for (const auto& [kk, n] : kind_names())
    if (kk == k) return n;
  return "?";
}

Kind detect_kind(const Json& j) {
  check_format(j);
  if (auto it = j.find("kind"); it != j.end()) {
    for (const auto& [k, n] : kind_names())
      if (*it == n) return k;
    throw InputError("unknown kind " + it->dump());
  }
  if (j.contains("root") && j.contains("children")) return Kind::kTree;
  if (j.contains("lt")) return Kind::kOForest;
  if (j.contains("R")) return Kind::kLeafStructure;
  if (j.contains("B")) return Kind::kQuasiTree;
  if (j.contains("S")) return Kind::kSeparation;
  if (j.contains("vertices")) return Kind::kGraph;
  if (j.contains("edges") && j.contains("nodes")) return Kind::kUnrootedTree;
  if (j.contains("members")) return Kind::kLaminar;
  if (j.contains("sigma")) return Kind::kWeights;
  throw InputError("cannot tell which structure this JSON object describes");
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": malformed JSON: " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    buf << in.rdbuf();
  }
  return parse(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Writers

Json to_json(const RootedTree& t) {
  Json j = header(Kind::kTree);
  j["root"] = t.name(t.root());
  Json children = Json::object();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.is_leaf(i)) continue;
    Json cs = Json::array();
    for (auto c : t.children(i)) cs.push_back(t.name(c));
    children[t.name(i)] = cs;
  }
  j["children"] = children;
  return j;
}

Json to_json(const OForest& f) {
  Json j = header(Kind::kOForest);
  j["nodes"] = f.names();
  Json lt = Json::array();
  for (const auto& [x, y] : f.lt_pairs()) lt.push_back({x, y});
  j["lt"] = lt;
  return j;
}

Json to_json(const LeafStructure& ls) {
  Json j = header(Kind::kLeafStructure);
  j["leaves"] = ls.leaves();
  Json r = Json::array();
  for (const auto& [x, y, z] : ls.triples()) r.push_back({ls.name(x), ls.name(y), ls.name(z)});
  j["R"] = r;
  return j;
}

Json to_json(const QuasiTree& q) {
  Json j = header(Kind::kQuasiTree);
  j["nodes"] = q.names();
  Json b = Json::array();
  for (const auto& [x, y, z] : q.triples()) b.push_back({q.name(x), q.name(y), q.name(z)});
  j["B"] = b;
  return j;
}

Json to_json(const UnrootedTree& t) {
  Json j = header(Kind::kUnrootedTree);
  j["nodes"] = t.names();
  Json e = Json::array();
  for (const auto& [u, v] : t.edge_names()) e.push_back({u, v});
  j["edges"] = e;
  return j;
}

Json to_json(const SeparationStructure& ss) {
  Json j = header(Kind::kSeparation);
  j["leaves"] = ss.leaves();
  const auto all = ss.tuples();
  const std::set<Quad> present(all.begin(), all.end());
  bool closed = true;
  for (const auto& [x, y, z, u] : all)
    closed = closed && present.count({z, u, x, y}) && present.count({y, x, z, u});
  Json s = Json::array();
  for (const auto& t : all) {
    const auto [x, y, z, u] = t;
    if (closed) {
      const std::array<Quad, 8> images = {{{x, y, z, u}, {y, x, z, u}, {x, y, u, z}, {y, x, u, z},
                                           {z, u, x, y}, {u, z, x, y}, {z, u, y, x}, {u, z, y, x}}};
      if (*std::min_element(images.begin(), images.end()) != t) continue;
    }
    s.push_back({ss.name(x), ss.name(y), ss.name(z), ss.name(u)});
  }
  j["S"] = s;
  return j;
}

Json to_json(const SimpleGraph& g) {
  Json j = header(Kind::kGraph);
  j["vertices"] = g.names();
  Json e = Json::array();
  for (const auto& [u, v] : g.edge_names()) e.push_back({u, v});
  j["edges"] = e;
  return j;
}

Json to_json(const LaminarFamily& f) {
  Json j = header(Kind::kLaminar);
  j["ground"] = f.ground;
  j["members"] = f.members;
  return j;
}

Json to_json(const WeightAssignment& w) {
  Json j = header(Kind::kWeights);
  Json s = Json::object();
  for (const auto& [leaf, v] : w.sigma) s[leaf] = v;
  j["sigma"] = s;
  return j;
}

Json to_json(const AxiomReport& r) {
  Json a = Json::array();
  for (const auto& res : r.results) {
    Json e;
    e["axiom"] = res.axiom;
    e["pass"] = res.pass;
    if (!res.pass) e["witness"] = res.witness;
    a.push_back(e);
  }
  return a;
}

Json to_json(const Countermodel& c) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = "countermodel";
  j["size"] = c.model.size();
  const std::string& last = c.table.results.empty() ? std::string("A1") : c.table.results.back().axiom;
  if (c.model.arity() == 4)
    j["structure"] = to_json(to_separation_structure(c.model));
  else if (last[0] == 'B')
    j["structure"] = to_json(to_quasi_tree(c.model));
  else
    j["structure"] = to_json(to_leaf_structure(c.model));
  j["axioms"] = to_json(c.table);
  return j;
}

Json rep_to_json(const std::map<NodeId, NodeId>& rep) {
  Json j = Json::object();
  for (const auto& [u, leaf] : rep) j[u] = leaf;
  Json out;
  out["rep"] = j;
  return out;
}

// ---------------------------------------------------------------------------
// Readers

RootedTree tree_from_json(const Json& j) {
  check_format(j);
  const std::string what = "tree";
  const NodeId root = id_of(field(j, "root", what), what);
  const Json& ch = field(j, "children", what);
  if (!ch.is_object()) fail(what, "'children' must be an object");
  std::map<NodeId, std::vector<NodeId>> children;
  for (const auto& [k, v] : ch.items()) children[k] = ids(v, what);
  return RootedTree::from_children(root, children);
}

OForest oforest_from_json(const Json& j) {
  check_format(j);
  return OForest::from_pairs(ids(field(j, "nodes", "oforest"), "oforest"), pairs(field(j, "lt", "oforest"), "oforest"));
}

LeafStructure leaf_structure_from_json(const Json& j, bool close) {
  check_format(j);
  auto ls = LeafStructure::from_triples(ids(field(j, "leaves", "leaf structure"), "leaf structure"),
                                        tuples<3>(field(j, "R", "leaf structure"), "leaf structure"));
  if (close) ls.close_a1_a2();
  return ls;
}

QuasiTree quasi_tree_from_json(const Json& j, bool close) {
  check_format(j);
  auto q = QuasiTree::from_triples(ids(field(j, "nodes", "quasi-tree"), "quasi-tree"),
                                   tuples<3>(field(j, "B", "quasi-tree"), "quasi-tree"));
  if (close)
    for (const auto& [x, y, z] : q.triples()) q.set(z, y, x);
  return q;
}

UnrootedTree unrooted_tree_from_json(const Json& j) {
  check_format(j);
  return UnrootedTree::from_edges(ids(field(j, "nodes", "unrooted tree"), "unrooted tree"),
                                  pairs(field(j, "edges", "unrooted tree"), "unrooted tree"));
}

SeparationStructure separation_from_json(const Json& j) {
  check_format(j);
  return SeparationStructure::from_tuples(ids(field(j, "leaves", "separation"), "separation"),
                                          tuples<4>(field(j, "S", "separation"), "separation"));
}

SimpleGraph graph_from_json(const Json& j) {
  check_format(j);
  return SimpleGraph::from_edges(ids(field(j, "vertices", "graph"), "graph"), pairs(field(j, "edges", "graph"), "graph"));
}

LaminarFamily laminar_from_json(const Json& j) {
  check_format(j);
  LaminarFamily f;
  f.ground = ids(field(j, "ground", "laminar"), "laminar");
  const Json& m = field(j, "members", "laminar");
  if (!m.is_array()) fail("laminar", "'members' must be an array");
  for (const auto& s : m) f.members.push_back(ids(s, "laminar"));
  return f;
}

WeightAssignment weights_from_json(const Json& j) {
  check_format(j);
  const Json& s = field(j, "sigma", "weights");
  if (!s.is_object()) fail("weights", "'sigma' must be an object");
  WeightAssignment w;
  for (const auto& [k, v] : s.items()) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 2)
      fail("weights", "weight of " + k + " must be 0, 1 or 2");
    w.sigma[k] = v.get<int>();
  }
  return w;
}

// ---------------------------------------------------------------------------
// DOT

std::string to_dot(const RootedTree& t) {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << "  " << quote(t.name(i)) << (t.is_leaf(i) ? " [shape=box];\n" : " [shape=circle];\n");
  for (std::size_t i = 0; i < t.size(); ++i)
    for (auto c : t.children(i)) os << "  " << quote(t.name(i)) << " -> " << quote(t.name(c)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const UnrootedTree& t, const std::map<std::pair<NodeId, NodeId>, std::string>& edge_labels) {
  std::ostringstream os;
  os << "graph tree {\n";
  const auto leaves = t.leaves();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const bool leaf = std::find(leaves.begin(), leaves.end(), i) != leaves.end();
    os << "  " << quote(t.name(i)) << (leaf ? " [shape=box];\n" : " [shape=circle];\n");
  }
  for (const auto& [u, v] : t.edge_names()) {
    os << "  " << quote(u) << " -- " << quote(v);
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    if (auto it = edge_labels.find(key); it != edge_labels.end()) os << " [label=" << quote(it->second) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const QuasiTree& q) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [x, y, z] : q.triples())
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, z}, std::pair{x, z}})
      if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  std::ostringstream os;
  os << "graph gaifman {\n";
  for (std::size_t i = 0; i < q.size(); ++i) os << "  " << quote(q.name(i)) << ";\n";
  for (const auto& [a, b] : edges) os << "  " << quote(q.name(a)) << " -- " << quote(q.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const SimpleGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (const auto& v : g.names()) os << "  " << quote(v) << ";\n";
  for (const auto& [u, v] : g.edge_names()) os << "  " << quote(u) << " -- " << quote(v) << ";\n";
  os << "}\n";
  return os.str();
}

std::string layout_dot(const SimpleGraph& g, const Layout& t) {
  const auto cuts = cuts_of_layout(t);
  const auto ranks = cut_ranks(g, t);
  std::map<std::pair<NodeId, NodeId>, std::string> labels;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    NodeId a = t.name(cuts[i].x), b = t.name(cuts[i].y);
    if (b < a) std::swap(a, b);
    labels[{a, b}] = std::to_string(ranks[i]);
  }
  return to_dot(t, labels);
}

}  // namespace leafbridge::io
