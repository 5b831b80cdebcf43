#include "leafbridge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "leafbridge/error.hpp"
#include "leafbridge/io.hpp"

namespace leafbridge::cli {

namespace {

using io::Json;
using io::Kind;

constexpr std::size_t kDefaultMaxLeaves = 8;
constexpr std::size_t kMaxOForestLeaves = 5;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInput = 2;

std::optional<std::size_t> env_max_enum() {
  const char* v = std::getenv("LEAFBRIDGE_MAX_ENUM");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw InputError("LEAFBRIDGE_MAX_ENUM must be a positive integer");
  return static_cast<std::size_t>(n);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Loaders that accept the natural neighbouring kinds as well.
LeafStructure load_leaf_structure(const Json& j, bool close) {
  switch (io::detect_kind(j)) {
    case Kind::kLeafStructure: return io::leaf_structure_from_json(j, close);
    case Kind::kTree: return leaf_structure(io::tree_from_json(j));
    default: throw InputError("expected a leaf structure or a tree");
  }
}

QuasiTree load_quasi_tree(const Json& j, bool close) {
  switch (io::detect_kind(j)) {
    case Kind::kQuasiTree: return io::quasi_tree_from_json(j, close);
    case Kind::kUnrootedTree: return betweenness_of_tree(io::unrooted_tree_from_json(j));
    case Kind::kTree: return unroot(io::tree_from_json(j));
    default: throw InputError("expected a quasi-tree or a tree");
  }
}

SeparationStructure load_separation(const Json& j, bool close) {
  switch (io::detect_kind(j)) {
    case Kind::kSeparation: return io::separation_from_json(j);
    case Kind::kQuasiTree:
    case Kind::kUnrootedTree:
    case Kind::kTree: return separation_structure(load_quasi_tree(j, close));
    default: throw InputError("expected a separation structure or a quasi-tree");
  }
}

std::string oforest_dot(const OForest& f) {
  std::ostringstream os;
  os << "digraph oforest {\n";
  for (const auto& n : f.names()) os << "  \"" << n << "\";\n";
  // Cover relation, drawn from the upper node down.
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (!f.less(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < f.size() && cover; ++z) cover = !(f.less(x, z) && f.less(z, y));
      if (cover) os << "  \"" << f.name(y) << "\" -> \"" << f.name(x) << "\";\n";
    }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Round trips

struct RoundTrip {
  std::map<std::string, std::size_t> checked;
  std::vector<std::string> failures;

  void check(const std::string& what, bool ok, const std::string& subject) {
    ++checked[what];
    if (!ok && failures.size() < 20) failures.push_back(what + " failed on " + subject);
  }
};

void rooted_round_trips(const RootedTree& t, RoundTrip& rt) {
  const std::string subject = canonical_encoding(t);
  const auto ls = leaf_structure(t);
  rt.check("A1-A10", check_axioms(ls).all_pass(), subject);
  rt.check("quotient", isomorphic(reconstruct_quotient(ls), t), subject);
  auto rep = reconstruct_rep(ls).tree.relabel(
      [](const NodeId& v) { return v.ends_with(",1)") ? v.substr(1, v.size() - 4) : v; });
  rt.check("rep", isomorphic(rep, t), subject);
  rt.check("laminar", isomorphic(from_laminar(to_laminar(t)), t), subject);
}

void unrooted_round_trips(const UnrootedTree& t, RoundTrip& rt) {
  const std::string subject = canonical_encoding(t);
  const auto q = betweenness_of_tree(t);
  rt.check("B1-B7", check_B_axioms(q).all_pass(), subject);
  if (q.size() >= 3) {
    bool ok = true;
    for (const auto& r : q.names()) ok = ok && unroot(root_at(q, r)) == q;
    rt.check("root/unroot", ok, subject);
  }
  const auto ss = separation_structure(q);
  rt.check("S1-S5,EQ", check_S_axioms(ss).all_pass(), subject);
  if (ss.size() >= 2) {
    rt.check("c54", isomorphic(reconstruct_c54(ss), q), subject);
    rt.check("rooting", isomorphic(reconstruct_via_rooting(ss), q), subject);
  }
}

// Random leafy unrooted tree: a random rooted tree on all labels but the
// last, with the last label hung at the root.
UnrootedTree random_unrooted(const std::vector<NodeId>& labels, std::mt19937_64& rng) {
  if (labels.size() <= 2) {
    std::vector<std::pair<NodeId, NodeId>> e;
    if (labels.size() == 2) e.emplace_back(labels[0], labels[1]);
    return UnrootedTree::from_edges(labels, e);
  }
  std::vector<NodeId> rest(labels.begin(), labels.end() - 1);
  const auto t = random_leafy_tree(rest, rng);
  auto nodes = t.names();
  nodes.push_back(labels.back());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [c, p] : t.parent_map()) edges.emplace_back(p, c);
  edges.emplace_back(t.name(t.root()), labels.back());
  return UnrootedTree::from_edges(nodes, edges);
}

Json round_trips(std::size_t leaves, std::optional<std::size_t> samples, std::uint64_t seed) {
  RoundTrip rt;
  const auto labels = default_labels(leaves);
  if (samples) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < *samples; ++i) {
      rooted_round_trips(random_leafy_tree(labels, rng), rt);
      unrooted_round_trips(random_unrooted(labels, rng), rt);
    }
  } else {
    for_each_leafy_tree(labels, [&](const RootedTree& t) { rooted_round_trips(t, rt); });
    for_each_leafy_unrooted_tree(labels, [&](const UnrootedTree& t) { unrooted_round_trips(t, rt); });
    if (leaves <= kMaxOForestLeaves)
      for_each_leafy_oforest(labels, [&](const OForest& f) {
        const auto e = extended_structure(f);
        rt.check("oforest", canonical_encoding(reconstruct_forest(e)) == canonical_encoding(f), canonical_encoding(f));
      });
  }
  Json j;
  j["format"] = io::kFormat;
  j["kind"] = "roundtrip";
  j["leaves"] = leaves;
  j["mode"] = samples ? "sampled" : "exhaustive";
  if (samples) {
    j["samples"] = *samples;
    j["seed"] = seed;
  }
  Json checked = Json::object();
  for (const auto& [k, v] : rt.checked) checked[k] = v;
  j["checked"] = checked;
  j["failures"] = rt.failures;
  j["pass"] = rt.failures.empty();
  return j;
}

// ---------------------------------------------------------------------------

struct Options {
  std::string input;
  std::string input2;
  std::string out;
  std::string dot;
  std::string algo = "quotient";
  std::string mode;
  bool partial = false;
  bool close = false;
  bool table = false;
  std::optional<std::size_t> exact_bound;
  std::size_t k = 0;
  std::string satisfy;
  std::string violate;
  std::optional<std::size_t> size;
  std::size_t max_size = kMaxSearchDomain;
  std::string interval;
  std::optional<std::size_t> leaves;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::string root;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int leaf_encode() {
    emit(io::to_json(leaf_structure(io::tree_from_json(io::read_file(o_.input)))));
    return kOk;
  }

  int check_axioms_cmd() {
    const Json j = io::read_file(o_.input);
    std::string mode = o_.mode;
    if (mode.empty()) {
      switch (io::detect_kind(j)) {
        case Kind::kLeafStructure:
        case Kind::kTree: mode = "A"; break;
        case Kind::kSeparation: mode = "S"; break;
        default: mode = "B";
      }
    }
    AxiomReport r;
    if (mode == "A") {
      r = check_axioms(load_leaf_structure(j, o_.close));
    } else if (mode == "B") {
      r = check_B_axioms(load_quasi_tree(j, o_.close), o_.partial ? BMode::kPartial : BMode::kFull);
    } else {
      r = check_S_axioms(load_separation(j, o_.close));
    }
    Json res;
    res["format"] = io::kFormat;
    res["kind"] = "axiom_report";
    res["mode"] = mode;
    res["pass"] = r.all_pass();
    res["axioms"] = io::to_json(r);
    emit(res);
    return r.all_pass() ? kOk : kFailed;
  }

  int reconstruct() {
    const Json j = io::read_file(o_.input);
    if (o_.algo == "quotient" || o_.algo == "rep") {
      const auto ls = load_leaf_structure(j, o_.close);
      if (o_.algo == "quotient") {
        const auto t = reconstruct_quotient(ls);
        emit_with_dot(io::to_json(t), io::to_dot(t));
      } else {
        const auto r = reconstruct_rep(ls);
        Json tj = io::to_json(r.tree);
        tj["rep"] = io::rep_to_json(r.rep)["rep"];
        emit_with_dot(tj, io::to_dot(r.tree));
      }
      return kOk;
    }
    const auto ss = load_separation(j, o_.close);
    const auto q = o_.algo == "c54" ? reconstruct_c54(ss) : reconstruct_via_rooting(ss);
    Json qj = io::to_json(q);
    qj["tree"] = io::to_json(underlying_tree(q));
    emit_with_dot(qj, io::to_dot(underlying_tree(q)));
    return kOk;
  }

  int betweenness() {
    const Json j = io::read_file(o_.input);
    if (!o_.root.empty()) {
      const auto t = root_at(load_quasi_tree(j, o_.close), o_.root);
      emit_with_dot(io::to_json(t), io::to_dot(t));
      return kOk;
    }
    const auto q = load_quasi_tree(j, o_.close);
    emit_with_dot(io::to_json(q), io::to_dot(q));
    return kOk;
  }

  int separation() {
    emit(io::to_json(load_separation(io::read_file(o_.input), o_.close)));
    return kOk;
  }

  int rankwidth() {
    const auto g = io::graph_from_json(io::read_file(o_.input));
    const std::size_t bound = o_.exact_bound.value_or(env_max_enum().value_or(kDefaultExactBound));
    const auto rw = rank_width(g, bound);
    const auto cuts = cuts_of_layout(rw.layout);
    const auto ranks = cut_ranks(g, rw.layout);
    if (!o_.dot.empty()) write_file(o_.dot, io::layout_dot(g, rw.layout));
    if (o_.table) {
      out_ << "rank-width " << rw.rwd << "\n";
      for (std::size_t i = 0; i < cuts.size(); ++i)
        out_ << std::left << std::setw(12) << rw.layout.name(cuts[i].x) << " -- " << std::setw(12)
             << rw.layout.name(cuts[i].y) << " rank " << ranks[i] << "\n";
      return kOk;
    }
    Json j;
    j["format"] = io::kFormat;
    j["kind"] = "rankwidth";
    j["rwd"] = rw.rwd;
    j["layout"] = io::to_json(rw.layout);
    Json cj = Json::array();
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      Json c;
      c["edge"] = {rw.layout.name(cuts[i].x), rw.layout.name(cuts[i].y)};
      c["rank"] = ranks[i];
      cj.push_back(c);
    }
    j["cuts"] = cj;
    emit(j);
    return kOk;
  }

  int rwd_leq() {
    const auto g = io::graph_from_json(io::read_file(o_.input));
    const Json lj = io::read_file(o_.input2);
    Json j;
    j["format"] = io::kFormat;
    j["kind"] = "rwd_leq";
    j["k"] = o_.k;
    bool holds = false;
    if (io::detect_kind(lj) == Kind::kUnrootedTree) {
      const auto t = io::unrooted_tree_from_json(lj);
      holds = check_rwd_leq(g, separation_structure(betweenness_of_tree(t)), o_.k);
      j["rwd"] = rwd_relative(g, t);
    } else {
      holds = check_rwd_leq(g, load_separation(lj, o_.close), o_.k);
    }
    j["holds"] = holds;
    emit(j);
    return holds ? kOk : kFailed;
  }

  int countermodel() {
    if (!o_.interval.empty()) {
      std::vector<double> pts;
      for (const auto& p : split_list(o_.interval)) {
        try {
          std::size_t used = 0;
          pts.push_back(std::stod(p, &used));
          if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::logic_error&) {
          throw InputError("--interval: not a number: " + p);
        }
      }
      const auto ls = interval_model(pts);
      Json j;
      j["format"] = io::kFormat;
      j["kind"] = "interval_model";
      j["structure"] = io::to_json(ls);
      j["axioms"] = io::to_json(check_axioms(ls));
      emit(j);
      return kOk;
    }
    if (o_.violate.empty()) throw InputError("countermodel: --violate is required (or --interval)");
    const auto satisfy = split_list(o_.satisfy);
    std::optional<Countermodel> cm;
    std::size_t searched = 0;
    if (o_.size) {
      cm = find_countermodel(*o_.size, satisfy, o_.violate, axiom_arity(o_.violate));
      searched = *o_.size;
    } else {
      auto s = find_minimal_countermodel(satisfy, o_.violate, o_.max_size);
      cm = std::move(s.countermodel);
      searched = s.searched_up_to;
    }
    if (cm) {
      emit(io::to_json(*cm));
      return kOk;
    }
    Json j;
    j["format"] = io::kFormat;
    j["kind"] = "countermodel";
    j["found"] = false;
    j[o_.size ? "searched_size" : "searched_up_to"] = searched;
    emit(j);
    return kFailed;
  }

  int roundtrip() {
    if (!o_.leaves) throw InputError("roundtrip: --leaves is required");
    const std::size_t n = *o_.leaves;
    if (n == 0) throw InputError("roundtrip: --leaves must be positive");
    const std::size_t ceiling = env_max_enum().value_or(kDefaultMaxLeaves);
    if (!o_.samples && n > ceiling)
      throw InputError("roundtrip: " + std::to_string(n) + " leaves exceeds the enumeration ceiling " +
                       std::to_string(ceiling) + " (set LEAFBRIDGE_MAX_ENUM or use --samples)");
    const Json j = round_trips(n, o_.samples, o_.seed);
    emit(j);
    return j["pass"].get<bool>() ? kOk : kFailed;
  }

  int laminar() {
    const Json j = io::read_file(o_.input);
    if (io::detect_kind(j) == Kind::kLaminar) {
      const auto t = from_laminar(io::laminar_from_json(j));
      emit_with_dot(io::to_json(t), io::to_dot(t));
    } else {
      emit(io::to_json(to_laminar(io::tree_from_json(j))));
    }
    return kOk;
  }

  int dot() {
    const Json j = io::read_file(o_.input);
    std::string text;
    switch (io::detect_kind(j)) {
      case Kind::kTree: text = io::to_dot(io::tree_from_json(j)); break;
      case Kind::kUnrootedTree: text = io::to_dot(io::unrooted_tree_from_json(j)); break;
      case Kind::kQuasiTree: text = io::to_dot(io::quasi_tree_from_json(j, o_.close)); break;
      case Kind::kGraph: text = io::to_dot(io::graph_from_json(j)); break;
      case Kind::kOForest: text = oforest_dot(io::oforest_from_json(j)); break;
      case Kind::kLeafStructure: text = io::to_dot(reconstruct_quotient(io::leaf_structure_from_json(j, o_.close))); break;
      case Kind::kSeparation: text = io::to_dot(underlying_tree(reconstruct_c54(io::separation_from_json(j)))); break;
      case Kind::kLaminar: text = io::to_dot(from_laminar(io::laminar_from_json(j))); break;
      case Kind::kWeights: throw InputError("dot: weight assignments have no drawing");
    }
    if (!o_.dot.empty())
      write_file(o_.dot, text);
    else
      out_ << text;
    return kOk;
  }

 private:
  void emit(const Json& j) {
    if (o_.out.empty())
      leafbridge::cli::emit(out_, j);
    else
      write_file(o_.out, j.dump(2) + "\n");
  }
  void emit_with_dot(const Json& j, const std::string& dot_text) {
    emit(j);
    if (!o_.dot.empty()) write_file(o_.dot, dot_text);
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Leaf structures, quasi-trees, separation structures and rank-width"};
  app.name("leafbridge");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto add_input = [&](CLI::App* s) { s->add_option("input", o.input, "Input JSON file ('-' for stdin)")->required(); };
  auto add_out = [&](CLI::App* s) { s->add_option("-o,--out", o.out, "Write JSON here instead of stdout"); };
  auto add_close = [&](CLI::App* s) { s->add_flag("--close", o.close, "Apply the symmetry closure on load"); };
  auto add_dot = [&](CLI::App* s) { s->add_option("--dot", o.dot, "Also write a DOT drawing to this path"); };

  std::map<std::string, std::function<int(Runner&)>> actions;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int(Runner&)> f) {
    actions[name] = std::move(f);
    return app.add_subcommand(name, help);
  };

  auto* le = sub("leaf-encode", "Tree to its leaf structure (L,R)", &Runner::leaf_encode);
  add_input(le);
  add_out(le);

  auto* ca = sub("check-axioms", "Check A1-A10, B1-B7 (or B8) or S1-S5 with witnesses", &Runner::check_axioms_cmd);
  add_input(ca);
  add_out(ca);
  add_close(ca);
  ca->add_option("--mode", o.mode, "Axiom suite")->check(CLI::IsMember({"A", "B", "S"}));
  ca->add_flag("--partial", o.partial, "With --mode B: B1-B6 and B8");

  auto* rc = sub("reconstruct", "Rebuild a tree or quasi-tree from its relation", &Runner::reconstruct);
  add_input(rc);
  add_out(rc);
  add_close(rc);
  add_dot(rc);
  rc->add_option("--algo", o.algo, "quotient|rep (leaf structure) or c54|rooting (separation)")
      ->check(CLI::IsMember({"quotient", "rep", "c54", "rooting"}));

  auto* bt = sub("betweenness", "Betweenness of a tree, or with --root the rooted tree of a quasi-tree",
                 &Runner::betweenness);
  add_input(bt);
  add_out(bt);
  add_close(bt);
  add_dot(bt);
  bt->add_option("--root", o.root, "Root the quasi-tree at this node");

  auto* sp = sub("separation", "Separation structure of a quasi-tree or tree", &Runner::separation);
  add_input(sp);
  add_out(sp);
  add_close(sp);

  auto* rw = sub("rankwidth", "Exact rank-width with an optimal layout", &Runner::rankwidth);
  add_input(rw);
  add_out(rw);
  add_dot(rw);
  rw->add_option("--exact-bound", o.exact_bound, "Largest vertex count for the exact search");
  rw->add_flag("--table", o.table, "Print a cut-rank table instead of JSON");

  auto* rl = sub("rwd-leq", "Decide rwd(G,layout) <= k from the layout's separation structure", &Runner::rwd_leq);
  rl->add_option("k", o.k, "Bound")->required();
  rl->add_option("graph", o.input, "Graph JSON")->required();
  rl->add_option("layout", o.input2, "Layout as unrooted tree or separation JSON")->required();
  add_out(rl);
  add_close(rl);

  auto* cm = sub("countermodel", "Search a structure satisfying some axioms and violating another",
                 &Runner::countermodel);
  add_out(cm);
  cm->add_option("--satisfy", o.satisfy, "Comma-separated axioms, e.g. A1,A2,A3,A6");
  cm->add_option("--violate", o.violate, "Axiom to violate");
  cm->add_option("--size", o.size, "Search exactly this domain size");
  cm->add_option("--max-size", o.max_size, "Smallest countermodel up to this size (default 5)");
  cm->add_option("--interval", o.interval, "Emit the interval model on these comma-separated points");

  auto* rt = sub("roundtrip", "Run every module round trip over all trees with n leaves", &Runner::roundtrip);
  add_out(rt);
  rt->add_option("--leaves", o.leaves, "Leaf count");
  rt->add_option("--samples", o.samples, "Random trees instead of exhaustive enumeration");
  rt->add_option("--seed", o.seed, "Seed for --samples");

  auto* lm = sub("laminar", "Tree to laminar family or back", &Runner::laminar);
  add_input(lm);
  add_out(lm);
  add_dot(lm);

  auto* dt = sub("dot", "Graphviz drawing of any structure", &Runner::dot);
  add_input(dt);
  add_close(dt);
  add_dot(dt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }

  try {
    Runner r(o, out);
    for (auto* s : app.get_subcommands()) return actions.at(s->get_name())(r);
    return kInput;
  } catch (const AxiomViolation& e) {
    Json j;
    j["format"] = io::kFormat;
    j["kind"] = "failure";
    j["error"] = e.what();
    j["axiom"] = e.axiom();
    j["witness"] = e.witness();
    emit(out, j);
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace leafbridge::cli
