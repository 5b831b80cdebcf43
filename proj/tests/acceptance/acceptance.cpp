// Acceptance driver: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "leafbridge/bits.hpp"
#include "leafbridge/error.hpp"
#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/model_search.hpp"
#include "leafbridge/oforest.hpp"
#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/rankwidth.hpp"
#include "leafbridge/separation.hpp"
#include "leafbridge/tree.hpp"
#include "leafbridge/weights.hpp"
#include "rankwidth_dp.hpp"

using namespace leafbridge;
using Names = std::vector<NodeId>;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string show(const Names& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s + "}";
}

Names pick(const std::vector<NodeId>& from, Mask m) {
  Names out;
  for (auto i : bits_of(m)) out.push_back(from[i]);
  return out;
}

void each_leafy_rooted(std::size_t max_leaves, const std::function<void(const RootedTree&)>& f) {
  for (std::size_t n = 1; n <= max_leaves; ++n) for_each_leafy_tree(default_labels(n), f);
}

void each_leafy_quasi(std::size_t max_leaves, const std::function<void(const QuasiTree&)>& f) {
  for (std::size_t n = 1; n <= max_leaves; ++n)
    for_each_leafy_unrooted_tree(default_labels(n), [&](const UnrootedTree& t) { f(betweenness_of_tree(t)); });
}

// Criteria 1 and 2 share this corpus.
void each_round_trip_tree(const std::function<void(const RootedTree&)>& f) {
  each_leafy_rooted(7, f);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int i = 0; i < 1000; ++i) f(random_leafy_tree(default_labels(size(rng)), rng));
}

std::size_t c1() {
  std::size_t cases = 0;
  each_round_trip_tree([&](const RootedTree& t) {
    ++cases;
    expect(isomorphic(reconstruct_quotient(leaf_structure(t)), t), "quotient round trip " + canonical_encoding(t));
  });
  return cases;
}

std::size_t c2() {
  std::size_t cases = 0;
  each_round_trip_tree([&](const RootedTree& t) {
    ++cases;
    const auto ls = leaf_structure(t);
    const auto r = reconstruct_rep(ls);
    const auto q = reconstruct_quotient(ls);
    const auto strip = r.tree.relabel([&](const NodeId& id) {
      for (const auto& x : ls.leaves())
        if (id == pair_name(x, 1)) return x;
      return id;
    });
    expect(isomorphic(strip, q), "rep disagrees with quotient on " + canonical_encoding(t));
    std::set<NodeId> allowed;
    for (const auto& x : ls.leaves()) {
      allowed.insert(pair_name(x, 1));
      allowed.insert(pair_name(x, 2));
    }
    for (const auto& id : r.tree.names()) expect(allowed.count(id) == 1, "node outside L x {1,2}: " + id);
    std::set<NodeId> images;
    for (const auto& [node, leaf] : r.rep) {
      expect(ls.find(leaf).has_value(), "rep value is not a leaf: " + leaf);
      expect(images.insert(leaf).second, "rep not injective at " + leaf);
    }
  });
  return cases;
}

bool good_weights_case(const RootedTree& t, const std::map<NodeId, NodeId>& pref, int i) {
  const auto w = build_good_weights(t, pref, i);
  const auto g = is_good(t, w);
  return g.good && g.son == pref && node_weight(t, w, t.root()) == i;
}

std::vector<std::size_t> internal_nodes(const RootedTree& t) {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < t.size(); ++u)
    if (!t.is_leaf(u)) out.push_back(u);
  return out;
}

std::size_t c3() {
  std::size_t cases = 0;
  each_leafy_rooted(5, [&](const RootedTree& t) {
    const auto internal = internal_nodes(t);
    std::vector<std::size_t> choice(internal.size(), 0);
    while (true) {
      std::map<NodeId, NodeId> pref;
      for (std::size_t k = 0; k < internal.size(); ++k)
        pref.emplace(t.name(internal[k]), t.name(t.children(internal[k])[choice[k]]));
      for (int i = 0; i <= 2; ++i) {
        ++cases;
        expect(good_weights_case(t, pref, i), "exhaustive case on " + canonical_encoding(t));
      }
      std::size_t k = 0;
      while (k < internal.size() && ++choice[k] == t.children(internal[k]).size()) choice[k++] = 0;
      if (k == internal.size()) break;
    }
  });
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 9);
  for (int s = 0; s < 1000; ++s) {
    const auto t = random_leafy_tree(default_labels(size(rng)), rng);
    std::map<NodeId, NodeId> pref;
    for (auto u : internal_nodes(t)) {
      const auto& kids = t.children(u);
      pref.emplace(t.name(u), t.name(kids[rng() % kids.size()]));
    }
    const int i = static_cast<int>(rng() % 3);
    ++cases;
    expect(good_weights_case(t, pref, i), "sampled case on " + canonical_encoding(t));
  }
  return cases;
}

std::size_t c4() {
  std::size_t cases = 0;
  each_leafy_rooted(7, [&](const RootedTree& t) {
    ++cases;
    const auto r = check_axioms(leaf_structure(t));
    for (int a = 1; a <= 9; ++a) {
      const auto* res = r.find("A" + std::to_string(a));
      expect(res && res->pass, "A" + std::to_string(a) + " fails on " + canonical_encoding(t));
    }
  });
  for (std::size_t n = 1; n <= 8; ++n)
    for_each_labelled_tree(default_labels(n), [&](const UnrootedTree& t) {
      ++cases;
      const auto r = check_B_axioms(betweenness_of_tree(t));
      for (int a = 1; a <= 7; ++a) {
        const auto* res = r.find("B" + std::to_string(a));
        expect(res && res->pass, "B" + std::to_string(a) + " fails on " + canonical_encoding(t));
      }
    });
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_labelled_tree(default_labels(n), [&](const UnrootedTree& t) {
      const auto q = betweenness_of_tree(t);
      for (Mask keep = 1; keep < (Mask{1} << n); ++keep) {
        ++cases;
        const auto r = check_B_axioms(induced(q, pick(q.names(), keep)), BMode::kPartial);
        for (const char* a : {"B1", "B2", "B3", "B4", "B5", "B6", "B8"}) {
          const auto* res = r.find(a);
          expect(res && res->pass, std::string(a) + " fails on an induced substructure of " + canonical_encoding(t));
        }
      }
    });
  each_leafy_quasi(8, [&](const QuasiTree& q) {
    ++cases;
    expect(check_S_axioms(separation_structure(q)).all_pass(), "S axioms fail on " + canonical_encoding(q));
  });
  return cases;
}

std::size_t c5() {
  struct Case {
    AxiomSet satisfy;
    std::string violate;
  };
  const std::vector<Case> found = {
      {{"A1", "A2", "A3", "A6"}, "A4"}, {{"A1", "A2", "A3", "A7"}, "A4"}, {{"A1", "A2", "A3", "A7"}, "A5"},
      {{"A1", "A2", "A3", "A4", "A9"}, "A5"}, {{"S1", "S2", "S3", "S4"}, "S5"},
  };
  for (const auto& c : found) {
    const auto out = find_minimal_countermodel(c.satisfy, c.violate, 5);
    expect(out.countermodel.has_value(), "no countermodel for " + show(c.satisfy) + " / " + c.violate);
    const auto report = check_named_axioms(out.countermodel->model, c.satisfy);
    expect(report.all_pass(), "countermodel breaks an assumed axiom for " + c.violate);
    expect(!check_named_axioms(out.countermodel->model, {c.violate}).all_pass(),
           "countermodel satisfies " + c.violate);
  }
  const auto none = find_minimal_countermodel({"A1", "A2", "A3", "A4", "A7"}, "A5", 4);
  expect(!none.countermodel && none.searched_up_to == 4, "{A1..A4,A7} / A5 should have no model up to 4");
  const auto iv = check_axioms(interval_model({1, 2, 3, 4}));
  for (const char* a : {"A1", "A2", "A3", "A4"}) expect(iv.find(a)->pass, std::string("interval model fails ") + a);
  expect(!iv.find("A5")->pass, "interval model passes A5");
  return found.size() + 2;
}

std::size_t c6() {
  std::size_t cases = 0;
  // unroot is defined from three nodes on.
  for (std::size_t n = 3; n <= 8; ++n)
    for_each_labelled_tree(default_labels(n), [&](const UnrootedTree& t) {
      const auto q = betweenness_of_tree(t);
      for (const auto& r : q.names()) {
        ++cases;
        expect(unroot(root_at(q, r)) == q, "unroot(root_at) differs at " + r + " on " + canonical_encoding(t));
      }
    });
  each_leafy_quasi(8, [&](const QuasiTree& q) {
    ++cases;
    const auto ss = separation_structure(q);
    expect(isomorphic(reconstruct_c54(ss), q), "c54 differs on " + canonical_encoding(q));
    expect(isomorphic(reconstruct_via_rooting(ss), q), "via rooting differs on " + canonical_encoding(q));
  });
  return cases;
}

std::size_t c7() {
  std::size_t cases = 0;
  each_leafy_quasi(6, [&](const QuasiTree& q) {
    const auto leaves = q.leaf_names();
    for (Mask m = 1; m < (Mask{1} << leaves.size()); ++m) {
      ++cases;
      expect(heredity_check(q, pick(leaves, m)), "heredity fails on " + canonical_encoding(q));
    }
  });
  each_leafy_rooted(6, [&](const RootedTree& t) {
    const auto ls = leaf_structure(t);
    for (Mask m = 1; m < (Mask{1} << ls.size()); ++m) {
      ++cases;
      const auto xs = pick(ls.leaves(), m);
      const auto sub = ls.induced(xs);
      const auto r = check_axioms(sub);
      for (const char* a : {"A1", "A2", "A3", "A4", "A5"})
        expect(r.find(a)->pass, std::string(a) + " fails on an induced leaf structure of " + canonical_encoding(t));
      expect(sub == leaf_structure(join_closure(t, xs)), "induced leaf structure differs from its closure");
    }
  });
  return cases;
}

std::size_t c8() {
  std::size_t cases = 0;
  each_leafy_quasi(8, [&](const QuasiTree& q) {
    const auto ss = separation_structure(q);
    const auto core = reconstruct_c54(ss);
    const Mask internal = low_bits(q.size()) & ~q.leaf_mask();
    // Every subset of internal nodes to delete.
    for (Mask del = internal;; del = (del - 1) & internal) {
      ++cases;
      const auto partial = induced(q, pick(q.names(), low_bits(q.size()) & ~del));
      expect(isomorphic(complete_partial(partial, ss, core), q), "completion differs on " + canonical_encoding(q));
      if (del == 0) break;
    }
  });

  const auto full = betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "b", "c", "d", "e", "f", "g", "h"},
      {{"a", "b"}, {"b", "c"}, {"c", "e"}, {"e", "g"}, {"g", "h"}, {"c", "d"}, {"e", "f"}}));
  const auto fused = betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "b", "ce", "d", "f", "g", "h"},
      {{"a", "b"}, {"b", "ce"}, {"ce", "g"}, {"g", "h"}, {"ce", "d"}, {"ce", "f"}}));
  const auto q = induced(full, {"a", "b", "d", "f", "g", "h"});
  expect(induced(fused, q.names()) == q, "fused-path fixture: both trees should induce the same partial structure");
  const auto s1 = separation_relation(full);
  const auto s2 = separation_relation(fused);
  expect(s1.S(s1.index("a"), s1.index("d"), s1.index("f"), s1.index("h")), "fused-path fixture: expected Sadfh in Q'");
  expect(s2.E(s2.index("a"), s2.index("d"), s2.index("f"), s2.index("h")), "fused-path fixture: expected Eadfh in Q''");
  const auto q1 = complete_partial(q, s1);
  const auto q2 = complete_partial(q, s2);
  expect(isomorphic(q1, full), "fused-path fixture: completion from S_Q' is not Q'");
  expect(isomorphic(q2, fused), "fused-path fixture: completion from S_Q'' is not Q''");
  expect(!isomorphic(q1, q2), "fused-path fixture: Q' and Q'' coincide");
  return cases + 1;
}

SimpleGraph graph_from_mask(std::size_t n, std::uint64_t bits) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto names = default_labels(n);
  std::size_t k = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++k)
      if ((bits >> k) & 1U) edges.emplace_back(names[u], names[v]);
  return SimpleGraph::from_edges(names, edges);
}

std::size_t c9() {
  std::size_t cases = 0;
  auto want = [&](const SimpleGraph& g, std::size_t rwd, const std::string& label) {
    ++cases;
    const auto oracle_value = oracle::rank_width_dp(g);
    expect(oracle_value == rwd, label + ": oracle gives " + std::to_string(oracle_value));
    expect(rank_width(g).rwd == rwd, label + ": rank_width disagrees");
  };
  for (std::size_t n = 2; n <= 6; ++n) want(complete_graph(n), 1, "K" + std::to_string(n));
  want(path_graph(4), 1, "P4");
  want(cycle_graph(5), 2, "C5");
  want(cycle_graph(6), 2, "C6");
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<Layout> layouts;
    for_each_cubic_layout(default_labels(n), [&](const Layout& t) { layouts.push_back(t); });
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * (n - 1) / 2)); ++bits) {
      const auto g = graph_from_mask(n, bits);
      for (const auto& t : layouts) {
        ++cases;
        expect(rwd_relative_via_S(g, t, bits) == rwd_relative(g, t), "via S disagrees on a graph with " +
                                                                          std::to_string(n) + " vertices");
      }
    }
  }
  return cases;
}

std::size_t c10() {
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<Layout> layouts;
    for_each_cubic_layout(default_labels(n), [&](const Layout& t) { layouts.push_back(t); });
    std::vector<SeparationStructure> seps;
    for (const auto& t : layouts) seps.push_back(separation_structure(betweenness_of_tree(t)));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * (n - 1) / 2)); ++bits) {
      const auto g = graph_from_mask(n, bits);
      for (std::size_t i = 0; i < layouts.size(); ++i) {
        const auto direct = rwd_relative(g, layouts[i]);
        for (std::size_t k = 0; k <= n; ++k) {
          ++cases;
          expect(check_rwd_leq(g, seps[i], k) == (direct <= k), "check_rwd_leq disagrees at k=" + std::to_string(k));
        }
      }
    }
  }
  return cases;
}

std::size_t c11() {
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_leafy_oforest(default_labels(n), [&](const OForest& f) {
      ++cases;
      const auto e = extended_structure(f);
      expect(leaf_structure(join_completion(f).tree) == e.ls, "R not preserved on " + canonical_encoding(f));
      expect(canonical_encoding(reconstruct_forest(e)) == canonical_encoding(f),
             "reconstruction does not invert on " + canonical_encoding(f));
    });
  return cases;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::size_t (*run)();
  };
  const Criterion criteria[] = {
      {"1 join-tree round trip", c1},
      {"2 rep agrees with quotient", c2},
      {"3 good weights for every preferred-son choice", c3},
      {"4 axiom soundness", c4},
      {"5 independence countermodels and interval model", c5},
      {"6 quasi-tree round trips", c6},
      {"7 heredity", c7},
      {"8 completion of partial quasi-trees", c8},
      {"9 rank-width values and rwd via S", c9},
      {"10 rwd <= k checker coherence", c10},
      {"11 O-forest completion", c11},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t idx = 0; idx < std::size(criteria); ++idx) {
    const auto& c = criteria[idx];
    if (!only.empty() && only.count(static_cast<int>(idx) + 1) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    std::size_t cases = 0;
    try {
      cases = c.run();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verdict == "FAIL") ++failed;
    std::printf("%s criterion %s (%zu cases, %.1fs)%s%s\n", verdict.c_str(), c.name, cases, secs,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
