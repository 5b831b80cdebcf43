#include <numeric>
#include <random>
#include <set>

#include "../oracle/rankwidth_dp.hpp"
#include "doctest.h"
#include "leafbridge/error.hpp"
#include "leafbridge/rankwidth.hpp"

using namespace leafbridge;

namespace {

using Names = std::vector<NodeId>;

Layout two_cherries() {
  return UnrootedTree::from_edges({"a", "b", "c", "d", "m", "n"},
                                  {{"a", "m"}, {"b", "m"}, {"m", "n"}, {"n", "c"}, {"n", "d"}});
}

SimpleGraph graph_from_mask(std::size_t n, std::uint64_t bits) {
  auto vs = default_labels(n);
  std::vector<std::pair<NodeId, NodeId>> es;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k)
      if ((bits >> k) & 1U) es.emplace_back(vs[i], vs[j]);
  return SimpleGraph::from_edges(vs, es);
}

std::size_t double_factorial(std::size_t k) { return k <= 1 ? 1 : k * double_factorial(k - 2); }

}  // namespace

TEST_CASE("SimpleGraph validation") {
  CHECK_THROWS_AS(SimpleGraph::from_edges({"a", "b"}, {{"a", "a"}}), InputError);
  CHECK_THROWS_AS(SimpleGraph::from_edges({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InputError);
  CHECK_THROWS_AS(SimpleGraph::from_edges({"a", "b"}, {{"a", "c"}}), InputError);
  auto g = cycle_graph(5);
  CHECK(g.edge_names().size() == 5);
  CHECK(g.adjacent(0, 4));
  CHECK(g.submatrix(0b00011, 0b11100) == gf2::BitMatrix::from_rows({{0, 0, 1}, {1, 0, 0}}));
}

TEST_CASE("cuts of a layout") {
  auto t = two_cherries();
  auto cuts = cuts_of_layout(t);
  CHECK(cuts.size() == 5);
  bool found_center = false;
  for (const auto& c : cuts) {
    if (t.name(c.x) == "m" && t.name(c.y) == "n") {
      found_center = true;
      CHECK(c.cx == (bit(t.index("a")) | bit(t.index("b")) | bit(t.index("m"))));
    }
    if (t.degree(c.y) == 1) CHECK(popcount(c.cy) == 1);
  }
  CHECK(found_center);
}

TEST_CASE("cubic layout counts") {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t count = 0;
    std::set<std::string> codes;
    for_each_cubic_layout(default_labels(n), [&](const Layout& t) {
      ++count;
      REQUIRE(is_cubic_layout(t));
      REQUIRE(cuts_of_layout(t).size() == (n == 1 ? 0 : 2 * n - 3));
      if (n <= 7) codes.insert(canonical_encoding(t));
    });
    CHECK(count == (n < 3 ? 1 : double_factorial(2 * n - 5)));
    if (n <= 7) CHECK(codes.size() == count);
  }
}

TEST_CASE("rwd_relative examples") {
  auto k2 = complete_graph(2);
  CHECK(rwd_relative(k2, UnrootedTree::from_edges({"a", "b"}, {{"a", "b"}})) == 1);
  auto empty = SimpleGraph::from_edges({"a", "b", "c", "d"}, {});
  CHECK(rwd_relative(empty, two_cherries()) == 0);
  auto c5 = cycle_graph(5);
  std::size_t lo = 99, hi = 0;
  for_each_cubic_layout(c5.names(), [&](const Layout& t) {
    auto r = rwd_relative(c5, t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  });
  CHECK(lo == 2);
  CHECK(hi >= 2);
  CHECK_THROWS_AS(rwd_relative(complete_graph(3), two_cherries()), PreconditionError);
}

TEST_CASE("rank_width named graphs") {
  for (std::size_t n = 2; n <= 6; ++n) CHECK(rank_width(complete_graph(n)).rwd == 1);
  CHECK(rank_width(path_graph(4)).rwd == 1);
  CHECK(rank_width(cycle_graph(5)).rwd == 2);
  CHECK(rank_width(cycle_graph(6)).rwd == 2);
  CHECK(rank_width(complete_graph(1)).rwd == 0);
  CHECK(rank_width(SimpleGraph::from_edges({"a", "b"}, {})).rwd == 0);
  auto r = rank_width(cycle_graph(5));
  CHECK(rwd_relative(cycle_graph(5), r.layout) == 2);
  CHECK_THROWS_AS(rank_width(complete_graph(9)), PreconditionError);
  CHECK(rank_width(complete_graph(9), 9).rwd == 1);
}

TEST_CASE("rank_width matches the subset oracle") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * (n - 1) / 2)); ++bits) {
      auto g = graph_from_mask(n, bits);
      REQUIRE(rank_width(g).rwd == oracle::rank_width_dp(g));
    }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 6 + rng() % 2;
    auto g = graph_from_mask(n, rng());
    REQUIRE(rank_width(g).rwd == oracle::rank_width_dp(g));
  }
}

TEST_CASE("rwd via S agrees and separated pairs have cuts") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<Layout> layouts;
    for_each_cubic_layout(default_labels(n), [&](const Layout& t) { layouts.push_back(t); });
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * (n - 1) / 2)); ++bits) {
      auto g = graph_from_mask(n, bits);
      for (const auto& t : layouts) {
        const auto direct = rwd_relative(g, t);
        REQUIRE(rwd_relative_via_S(g, t, bits) == direct);
        if (n >= 4 && bits == 0) {
          auto ss = separation_structure(betweenness_of_tree(t));
          for (const auto& [a, b] : maximal_separated_pairs(ss)) {
            Names an, bn;
            for (auto i : bits_of(a)) an.push_back(ss.name(i));
            for (auto i : bits_of(b)) bn.push_back(ss.name(i));
            REQUIRE(separating_edge(t, an, bn).has_value());
          }
        }
        REQUIRE(check_rwd_leq(g, separation_structure(betweenness_of_tree(t)), direct));
        if (direct > 0)
          REQUIRE_FALSE(check_rwd_leq(g, separation_structure(betweenness_of_tree(t)), direct - 1));
      }
    }
  }
}

TEST_CASE("check_rwd_leq examples") {
  auto c5 = cycle_graph(5);
  auto best = rank_width(c5).layout;
  auto ss = separation_structure(betweenness_of_tree(best));
  CHECK(check_rwd_leq(c5, ss, 2));
  CHECK_FALSE(check_rwd_leq(c5, ss, 1));
  auto star = betweenness_of_tree(UnrootedTree::from_edges(
      {"a", "b", "c", "d", "e", "s"}, {{"s", "a"}, {"s", "b"}, {"s", "c"}, {"s", "d"}, {"s", "e"}}));
  CHECK_THROWS_WITH_AS(check_rwd_leq(c5, separation_structure(star), 5), doctest::Contains("not cubic"),
                       PreconditionError);
  // Every 4-set split, but ab|cd and ac|be admit no common tree.
  auto bogus = SeparationStructure::from_tuples(c5.names(), {{"a", "b", "c", "d"}, {"a", "c", "b", "e"},
                                                             {"a", "b", "d", "e"}, {"a", "c", "d", "e"},
                                                             {"b", "c", "d", "e"}});
  CHECK_FALSE(is_separation_structure(bogus).valid);
  CHECK_THROWS_WITH_AS(check_rwd_leq(c5, bogus, 5), doctest::Contains("not a separation structure"),
                       PreconditionError);
  auto empty = SimpleGraph::from_edges(c5.names(), {});
  CHECK(check_rwd_leq(empty, ss, 0));
}

TEST_CASE("cubic iff E is empty") {
  for (std::size_t n = 3; n <= 7; ++n)
    for_each_leafy_unrooted_tree(default_labels(n), [&](const UnrootedTree& t) {
      auto ss = separation_structure(betweenness_of_tree(t));
      bool e_empty = true;
      for (std::size_t x = 0; x < n && e_empty; ++x)
        for (std::size_t y = x + 1; y < n && e_empty; ++y)
          for (std::size_t z = y + 1; z < n && e_empty; ++z)
            for (std::size_t u = z + 1; u < n && e_empty; ++u) e_empty = !ss.E(x, y, z, u);
      REQUIRE(is_cubic_layout(t) == e_empty);
    });
}

TEST_CASE("rank_width is monotone and label-invariant") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 3 + rng() % 4;
    auto g = graph_from_mask(n, rng());
    const auto r = rank_width(g).rwd;
    for (Mask keep = 1; keep < (Mask{1} << n); ++keep) REQUIRE(rank_width(g.induced(keep)).rwd <= r);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Names vs;
    for (std::size_t k = 0; k < n; ++k) vs.push_back("w" + std::to_string(k));
    std::vector<std::pair<NodeId, NodeId>> es;
    for (const auto& [a, b] : g.edge_names()) es.emplace_back(vs[perm[g.index(a)]], vs[perm[g.index(b)]]);
    REQUIRE(rank_width(SimpleGraph::from_edges(vs, es)).rwd == r);
  }
}

TEST_CASE("cut matrices have rank equal to their transpose") {
  auto g = cycle_graph(6);
  for_each_cubic_layout(g.names(), [&](const Layout& t) {
    for (const auto& c : cuts_of_layout(t)) {
      Mask a = 0, b = 0;
      for (auto i : bits_of(c.cx))
        if (t.degree(i) == 1) a |= bit(g.index(t.name(i)));
      for (auto i : bits_of(c.cy))
        if (t.degree(i) == 1) b |= bit(g.index(t.name(i)));
      auto m = g.submatrix(a, b);
      REQUIRE(gf2::rank(m) == gf2::rank(m.transpose()));
    }
  });
}
