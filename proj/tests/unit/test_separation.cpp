#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "leafbridge/error.hpp"
#include "leafbridge/separation.hpp"

using namespace leafbridge;
using fixtures::ex67;
using fixtures::qt5;

namespace {

using Names = std::vector<NodeId>;

QuasiTree star_q(const Names& leaves, const NodeId& c = "c") {
  Names nodes = leaves;
  nodes.push_back(c);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& l : leaves) edges.emplace_back(c, l);
  return betweenness_of_tree(UnrootedTree::from_edges(nodes, edges));
}

template <typename F>
void each_leafy(std::size_t max_leaves, F&& f) {
  for (std::size_t n = 1; n <= max_leaves; ++n)
    for_each_leafy_unrooted_tree(default_labels(n), [&](const UnrootedTree& t) { f(betweenness_of_tree(t)); });
}

}  // namespace

TEST_CASE("QT5 separation facts") {
  auto q = betweenness_of_tree(qt5());
  auto ss = separation_structure(q);
  auto i = [&](const char* s) { return ss.index(s); };
  CHECK(ss.leaves() == Names{"u", "v", "x", "y", "z"});
  CHECK(ss.S(i("x"), i("y"), i("u"), i("v")));
  CHECK(ss.S(i("x"), i("z"), i("u"), i("v")));
  CHECK(ss.E(i("x"), i("y"), i("z"), i("u")));
  CHECK_FALSE(ss.E(i("y"), i("z"), i("u"), i("v")));
  // E is not transitive-like: Exyzu, Exyzv, yet not Exyuv.
  CHECK(ss.E(i("x"), i("y"), i("z"), i("v")));
  CHECK_FALSE(ss.E(i("x"), i("y"), i("u"), i("v")));
  CHECK(set_separation(ss, {"x", "y"}, {"u", "v"}));
  CHECK(set_separation(ss, {"y", "z"}, {"u", "v"}));
  CHECK_FALSE(set_separation(ss, {"x", "u"}, {"y", "v"}));
  CHECK_THROWS_AS(set_separation(ss, {"x", "u"}, {"u", "v"}), PreconditionError);
  CHECK_THROWS_AS(set_separation(ss, {"x"}, {"u", "v"}), PreconditionError);
  CHECK(set_E(ss, {"x", "y", "z", "u"}));
  CHECK_FALSE(set_E(ss, {"x", "y", "z", "u", "v"}));
  CHECK_THROWS_AS(set_E(ss, {"x", "y", "z"}), PreconditionError);
}

TEST_CASE("stars have no separation") {
  CHECK(separation_structure(star_q({"a", "b", "d"})).empty());
  auto s4 = separation_structure(star_q({"a", "b", "d", "e"}));
  CHECK(s4.empty());
  CHECK(set_E(s4, {"a", "b", "d", "e"}));
  auto path = betweenness_of_tree(UnrootedTree::from_edges({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}));
  CHECK_THROWS_AS(separation_structure(path), PreconditionError);
}

TEST_CASE("from_tuples closes under S2") {
  auto ss = SeparationStructure::from_tuples({"a", "b", "c", "d"}, {{"a", "b", "c", "d"}});
  CHECK(ss.tuples().size() == 8);
  CHECK(ss.S(ss.index("d"), ss.index("c"), ss.index("b"), ss.index("a")));
  CHECK(check_S_axioms(ss).passes(kSeparationAxioms));
}

TEST_CASE("S axiom failures") {
  auto ss = SeparationStructure::from_tuples({"a", "b", "c", "d"}, {{"a", "b", "c", "d"}, {"a", "c", "b", "d"}});
  auto r = check_S_axioms(ss);
  CHECK_FALSE(r.find("S''4")->pass);
  CHECK_FALSE(r.find("S4")->pass);
  CHECK(r.find("S1")->pass);
  CHECK(r.find("S2")->pass);

  SeparationStructure raw({"a", "b", "c", "d"});
  raw.set(0, 1, 2, 3);
  CHECK_FALSE(check_S_axioms(raw).find("S2")->pass);
  raw.set(0, 0, 2, 3);
  CHECK_FALSE(check_S_axioms(raw).find("S1")->pass);
}

TEST_CASE("separation structures satisfy S1-S5 and EQ") {
  each_leafy(7, [](const QuasiTree& q) {
    auto ss = separation_structure(q);
    REQUIRE(check_S_axioms(ss).all_pass());
    // With S non-empty every leaf occurs in a tuple.
    if (!ss.empty()) {
      Mask seen = 0;
      for (const auto& t : ss.tuples()) seen |= bit(t[0]);
      REQUIRE(seen == low_bits(ss.size()));
    }
  });
}

TEST_CASE("triple classes are the medians") {
  each_leafy(7, [](const QuasiTree& q) {
    auto ss = separation_structure(q);
    auto tc = triple_classes(ss);
    REQUIRE_FALSE(tc.eq_failure);
    const auto L = q.leaves();
    std::map<std::size_t, std::size_t> median_of_class;
    for (std::size_t s = 0; s < tc.sets.size(); ++s) {
      const auto [a, b, c] = tc.sets[s];
      const auto m = median_node(q, L[a], L[b], L[c]);
      auto [it, fresh] = median_of_class.emplace(tc.class_of[s], m);
      REQUIRE(it->second == m);
    }
    REQUIRE(tc.count == q.size() - L.size());
  });
}

TEST_CASE("the equivalence as printed is not transitive") {
  // xyz ≡ uvw iff permutation or E on every 4-subset of the union.
  auto literal = [](const SeparationStructure& ss, Triple a, Triple b) {
    std::set<std::size_t> u{a[0], a[1], a[2], b[0], b[1], b[2]};
    if (u.size() == 3) return true;
    std::vector<NodeId> names;
    for (auto i : u) names.push_back(ss.name(i));
    return set_E(ss, names);
  };
  auto ss = separation_structure(betweenness_of_tree(qt5()));
  auto i = [&](const char* s) { return ss.index(s); };
  const Triple xyu{i("x"), i("y"), i("u")}, xyz{i("x"), i("y"), i("z")}, xyv{i("x"), i("y"), i("v")};
  CHECK(literal(ss, xyu, xyz));
  CHECK(literal(ss, xyz, xyv));
  CHECK_FALSE(literal(ss, xyu, xyv));
  // All three have median a.
  auto key = [&](Triple t) {
    std::sort(t.begin(), t.end());
    for (std::size_t k = 0;; ++k)
      if (triple_classes(ss).sets[k] == t) return k;
  };
  auto tc = triple_classes(ss);
  CHECK(tc.class_of[key(xyu)] == tc.class_of[key(xyz)]);
  CHECK(tc.class_of[key(xyu)] == tc.class_of[key(xyv)]);

  // 4-leaf caterpillar ab|de: abd and abe share their median but Sabde.
  auto cat = betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "b", "d", "e", "m", "n"}, {{"a", "m"}, {"b", "m"}, {"m", "n"}, {"n", "d"}, {"n", "e"}}));
  auto cs = separation_structure(cat);
  CHECK_FALSE(literal(cs, {0, 1, 2}, {0, 1, 3}));
  auto ct = triple_classes(cs);
  CHECK(ct.count == 2);
  CHECK(ct.class_of[0] == ct.class_of[1]);  // {a,b,d}, {a,b,e}
}

TEST_CASE("reconstruct_c54 examples") {
  auto q = betweenness_of_tree(qt5());
  auto r = reconstruct_c54(separation_structure(q));
  CHECK(isomorphic(r, q));
  // Named after the least triple of each class (u < v < x < y < z).
  CHECK(r.find("[u,x,y]"));
  CHECK(r.find("[u,v,x]"));
  auto a = r.index("[u,x,y]"), b = r.index("[u,v,x]");
  CHECK(r.between(r.index("x"), a, b));
  CHECK(r.between(a, b, r.index("u")));

  SeparationStructure three({"p", "q", "s"});
  auto s3 = reconstruct_c54(three);
  CHECK(s3.size() == 4);
  CHECK(isomorphic(s3, star_q({"p", "q", "s"})));
  CHECK(reconstruct_c54(SeparationStructure({"p", "q"})).empty());
}

TEST_CASE("c54 and rooting reconstructions round-trip") {
  std::size_t count = 0;
  each_leafy(7, [&](const QuasiTree& q) {
    auto ss = separation_structure(q);
    auto a = reconstruct_c54(ss);
    REQUIRE(isomorphic(a, q));
    REQUIRE(isomorphic(reconstruct_via_rooting(ss), q));
    ++count;
  });
  CHECK(count == 1 + 1 + 1 + 4 + 26 + 236 + 2752);
}

TEST_CASE("rooting example on QT5") {
  auto ss = separation_structure(betweenness_of_tree(qt5()));
  auto ls = rooted_leaf_structure(ss, "u");
  CHECK(ls.leaves() == Names{"v", "x", "y", "z"});
  CHECK(ls.holds(ls.index("x"), ls.index("y"), ls.index("z")));
  CHECK(ls.holds(ls.index("x"), ls.index("y"), ls.index("v")));
  CHECK_FALSE(ls.holds(ls.index("v"), ls.index("x"), ls.index("y")));
  CHECK(isomorphic(reconstruct_via_rooting(ss), betweenness_of_tree(qt5())));
  auto s4 = separation_structure(star_q({"a", "b", "d", "e"}));
  CHECK(isomorphic(reconstruct_via_rooting(s4), star_q({"a", "b", "d", "e"})));
}

TEST_CASE("the rooted leaf relation: fitting the last disjunct") {
  // R'xyz read off the join-tree T(Q,r) minus r, compared with candidate
  // formulas over E and S. The printed last disjunct Sxzyz is always false.
  std::size_t literal_mismatch = 0, fixed_mismatch = 0;
  each_leafy(7, [&](const QuasiTree& q) {
    if (q.leaves().size() < 3) return;
    auto ss = separation_structure(q);
    const NodeId r = ss.name(0);
    auto rooted = root_at(q, r);
    auto below = subtree(rooted, rooted.children(rooted.root()).at(0));
    auto oracle = leaf_structure(below);
    const auto ri = ss.index(r);
    for (std::size_t x = 0; x < oracle.size(); ++x)
      for (std::size_t y = 0; y < oracle.size(); ++y)
        for (std::size_t z = 0; z < oracle.size(); ++z) {
          if (x == y || y == z || x == z) continue;
          const auto X = ss.index(oracle.name(x)), Y = ss.index(oracle.name(y)), Z = ss.index(oracle.name(z));
          const bool truth = oracle.holds(x, y, z);
          const bool literal = ss.E(X, Y, Z, ri) || ss.S(X, Y, Z, ri) || ss.S(X, Z, Y, Z);
          const bool fixed = ss.E(X, Y, Z, ri) || ss.S(X, Y, Z, ri) || ss.S(X, Z, Y, ri);
          literal_mismatch += literal != truth;
          fixed_mismatch += fixed != truth;
        }
    REQUIRE(rooted_leaf_structure(ss, r) == oracle);
  });
  CHECK(literal_mismatch > 0);
  CHECK(fixed_mismatch == 0);
}

TEST_CASE("separated pairs of leafy quasi-trees") {
  each_leafy(6, [](const QuasiTree& q) {
    auto ss = separation_structure(q);
    const auto L = q.leaves();
    const Mask inner = low_bits(q.size()) & ~q.leaf_mask();
    for (std::size_t x = 0; x < L.size(); ++x)
      for (auto a : bits_of(inner))
        for (auto b : bits_of(inner)) {
          if (a == b) continue;
          bool some = false;
          for (std::size_t u = 0; u < L.size() && !some; ++u)
            for (std::size_t v = 0; v < L.size() && !some; ++v)
              for (std::size_t w = 0; w < L.size() && !some; ++w) {
                if (u == x || v == x || w == x || u == v || v == w || u == w) continue;
                some = ss.S(x, u, v, w) && median_node(q, L[x], L[u], L[v]) == a &&
                       median_node(q, L[x], L[v], L[w]) == b;
              }
          REQUIRE(q.between(L[x], a, b) == some);
        }
  });
}

TEST_CASE("equal separation structures mean isomorphic quasi-trees") {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::map<std::vector<Quad>, std::string> seen;
    for_each_leafy_unrooted_tree(default_labels(n), [&](const UnrootedTree& t) {
      auto q = betweenness_of_tree(t);
      auto [it, fresh] = seen.emplace(separation_structure(q).tuples(), canonical_encoding(q));
      REQUIRE(it->second == canonical_encoding(q));
    });
  }
}

TEST_CASE("heredity") {
  auto q = betweenness_of_tree(qt5());
  CHECK(heredity_check(q, {"x", "y", "u", "v"}));
  CHECK(heredity_check(q, {"x", "y", "u"}));
  each_leafy(6, [](const QuasiTree& q) {
    const auto L = q.leaves();
    for (Mask m = 1; m < (Mask{1} << L.size()); ++m) {
      Names xs;
      for (auto i : bits_of(m)) xs.push_back(q.name(L[i]));
      REQUIRE(heredity_check(q, xs));
    }
  });
}

TEST_CASE("invalid structures are rejected") {
  // S1-S4 hold but the single tuple cannot come from a tree on five leaves.
  auto ss = SeparationStructure::from_tuples({"a", "b", "c", "d", "e"}, {{"a", "b", "c", "d"}});
  auto v = is_separation_structure(ss);
  CHECK_FALSE(v.valid);
  CHECK_FALSE(v.reason.empty());
  CHECK_THROWS_AS(reconstruct_c54(ss), PreconditionError);
  CHECK(is_separation_structure(separation_structure(betweenness_of_tree(qt5()))).valid);
}

TEST_CASE("complete_partial examples") {
  auto full = betweenness_of_tree(ex67());
  auto q = induced(full, {"a", "b", "d", "f", "g", "h"});
  auto s1 = separation_relation(full);
  CHECK(s1.S(s1.index("a"), s1.index("d"), s1.index("f"), s1.index("h")));
  auto q1 = complete_partial(q, s1);
  CHECK(isomorphic(q1, full));

  // Fusing c and e.
  auto fused = betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "b", "ce", "d", "f", "g", "h"},
      {{"a", "b"}, {"b", "ce"}, {"ce", "g"}, {"g", "h"}, {"ce", "d"}, {"ce", "f"}}));
  CHECK(induced(fused, q.names()) == q);
  auto s2 = separation_relation(fused);
  CHECK(s2.E(s2.index("a"), s2.index("d"), s2.index("f"), s2.index("h")));
  auto q2 = complete_partial(q, s2);
  CHECK(isomorphic(q2, fused));
  CHECK_FALSE(isomorphic(q1, q2));

  auto st = star_q({"x", "y", "z"}, "w");
  CHECK(complete_partial(st, SeparationStructure({"x", "y", "z"})) == st);
  auto bare = QuasiTree({"x", "y", "z"});
  auto c3 = complete_partial(bare, SeparationStructure({"x", "y", "z"}));
  CHECK(c3.find(kCenterName));
  CHECK(isomorphic(c3, st));
  auto clash = QuasiTree({kCenterName, "y", "z"});
  CHECK(complete_partial(clash, SeparationStructure{}).size() == 4);

  // With c and e gone every split of a,d,f,h is consistent with q.
  auto s_other = separation_structure(betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "d", "f", "h", "m", "n"}, {{"a", "m"}, {"h", "m"}, {"m", "n"}, {"n", "d"}, {"n", "f"}})));
  auto q3 = complete_partial(q, s_other);
  CHECK(induced(q3, q.names()) == q);
  CHECK_FALSE(isomorphic(q3, q1));

  auto s_wrong_leaves = SeparationStructure::from_tuples({"a", "d", "f", "x"}, {{"a", "d", "f", "x"}});
  CHECK_THROWS_WITH_AS(complete_partial(q, s_wrong_leaves), doctest::Contains("case 1"), PreconditionError);
  auto not_partial = QuasiTree::from_triples({"x", "y", "z"}, {{"x", "y", "z"}, {"x", "z", "y"}});
  CHECK_THROWS_AS(complete_partial(not_partial, SeparationStructure{}), PreconditionError);
  // A node that lies between no leaf pair of any completion.
  auto stray = QuasiTree::from_triples({"p", "q", "s", "t"}, {{"p", "t", "q"}, {"q", "t", "p"}});
  CHECK_THROWS_WITH_AS(complete_partial(stray, SeparationStructure({"p", "q", "s"})),
                       doctest::Contains("case 2"), PreconditionError);
}

TEST_CASE("complete_partial inverts internal-node deletion") {
  each_leafy(6, [](const QuasiTree& q) {
    auto ss = separation_structure(q);
    const Mask inner = low_bits(q.size()) & ~q.leaf_mask();
    const auto in = bits_of(inner);
    for (Mask d = 0; d < (Mask{1} << in.size()); ++d) {
      Names keep;
      for (std::size_t i = 0; i < q.size(); ++i) {
        bool drop = false;
        for (std::size_t k = 0; k < in.size(); ++k) drop = drop || (has(d, k) && in[k] == i);
        if (!drop) keep.push_back(q.name(i));
      }
      REQUIRE(isomorphic(complete_partial(induced(q, keep), ss), q));
    }
  });
}
