#include "doctest.h"
#include "netctl/error.hpp"
#include "netctl/generators.hpp"
#include "netctl/graph.hpp"
#include "oracles.hpp"

using namespace netctl;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("parse_edge_list reads labels, weights and isolated nodes") {
  DiGraph g = parse_digraph("# comment\na b\nb c\nz\n");
  CHECK(g.n() == 4);
  CHECK(g.m() == 2);
  CHECK(g.has_edge(*g.find("a"), *g.find("b")));
  CHECK(g.has_edge(*g.find("b"), *g.find("c")));
  DiGraph w = parse_digraph("a b 0.5");
  CHECK(w.edge(0).weight == doctest::Approx(0.5));
  UnGraph u = std::get<UnGraph>(parse_edge_list("a b\nb c\n", false));
  CHECK(u.m() == 2);
  CHECK(u.has_edge(*u.find("b"), *u.find("a")));
}

TEST_CASE("parse errors carry the right kind") {
  CHECK(kind_of([] { parse_digraph("a b\na b\n"); }) == ErrorKind::DuplicateEdge);
  CHECK(kind_of([] { parse_digraph("a b c d\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_digraph("a b x\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_ungraph("a b\nb a\n"); }) == ErrorKind::DuplicateEdge);
}

TEST_CASE("edge list round trip") {
  Rng rng = make_rng(3);
  DiGraph g = er_digraph(30, 3.0, rng);
  DiGraph h = parse_digraph(to_edge_list(g));
  CHECK(h.n() == g.n());
  CHECK(h.m() == g.m());
  for (const auto& e : g.edges()) CHECK(h.has_edge(*h.find(g.label(e.src)), *h.find(g.label(e.dst))));
}

TEST_CASE("transpose reverses edges and keeps self-loops") {
  DiGraph g = parse_digraph("a b\nb c\nd d\n");
  DiGraph t = transpose(g);
  CHECK(t.has_edge(*t.find("b"), *t.find("a")));
  CHECK(t.has_edge(*t.find("c"), *t.find("b")));
  CHECK(t.has_edge(*t.find("d"), *t.find("d")));
  CHECK(t.m() == 3);
}

TEST_CASE("bipartite representation") {
  DiGraph g = parse_digraph("1 2\n3 3\n");
  BipartiteRep b = bipartite_rep(g);
  CHECK(b.edges.size() == 2);
  CHECK(bipartite_rep(DiGraph()).edges.empty());
}

TEST_CASE("maximum matching on the small shapes") {
  CHECK(maximum_matching(directed_path(3)).size == 2);
  Matching m = maximum_matching(directed_path(3));
  CHECK_FALSE(m.matched(0));
  CHECK(maximum_matching(out_star(2)).size == 1);
  CHECK(maximum_matching(directed_cycle(3)).size == 3);
}

TEST_CASE("Hopcroft-Karp size equals exhaustive enumeration") {
  for (int s = 0; s < 300; ++s) {
    Rng rng = make_rng(s, 1);
    DiGraph g = gnp_digraph(2 + s % 7, 0.3, rng, true);
    CHECK(maximum_matching(g).size == oracle::all_maximum_matchings(g).size);
  }
}

TEST_CASE("matching is valid") {
  Rng rng = make_rng(9);
  DiGraph g = er_digraph(2000, 3.0, rng);
  Matching m = maximum_matching(g);
  int count = 0;
  for (int t = 0; t < g.n(); ++t) {
    int h = m.mate_left[t];
    if (h < 0) continue;
    ++count;
    CHECK(g.has_edge(t, h));
    CHECK(m.mate_right[h] == t);
  }
  CHECK(count == m.size);
}

TEST_CASE("SCC decomposition") {
  SccDecomposition c = scc_decompose(directed_cycle(3));
  CHECK(c.count() == 1);
  CHECK(c.root[0]);
  DiGraph dag = parse_digraph("a b\na c\nb d\nc d\n");
  SccDecomposition d = scc_decompose(dag);
  CHECK(d.count() == 4);
  CHECK(d.roots().size() == 1);
  CHECK(d.members[d.roots()[0]] == std::vector<int>{*dag.find("a")});
  // ids are topological on the condensation
  for (const auto& e : dag.edges()) CHECK(d.comp[e.src] <= d.comp[e.dst]);
}

TEST_CASE("condensation is acyclic and partitions the nodes") {
  for (int s = 0; s < 50; ++s) {
    Rng rng = make_rng(s, 2);
    DiGraph g = er_digraph(200, 1.5 + 0.05 * s, rng);
    SccDecomposition d = scc_decompose(g);
    std::vector<int> seen(g.n(), 0);
    for (const auto& m : d.members)
      for (int v : m) ++seen[v];
    for (int x : seen) CHECK(x == 1);
    for (int c = 0; c < d.count(); ++c)
      for (int w : d.dag[c]) CHECK(w > c);
  }
}

TEST_CASE("cycle partition weight") {
  CHECK(max_weight_cycle_partition(directed_path(3), {0}).weight == 3);
  CHECK(max_weight_cycle_partition(DiGraph(4), {0}).weight == 1);
}

TEST_CASE("directed core") {
  CHECK(directed_core(directed_path(10)).nodes.empty());
  CHECK(directed_core(out_star(5)).nodes.empty());
  double sum4 = 0, sum8 = 0;
  for (int s = 0; s < 10; ++s) {
    Rng r4 = make_rng(s, 4), r8 = make_rng(s, 8);
    sum4 += directed_core(er_digraph(10000, 4.0, r4)).n_core;
    sum8 += directed_core(er_digraph(10000, 8.0, r8)).n_core;
  }
  CHECK(sum4 / 10 < 0.01);
  CHECK(sum8 / 10 > 0.3);
}

TEST_CASE("reachability") {
  DiGraph p = directed_path(3);
  CHECK(reachable_from(p, {0}).size() == 3);
  CHECK(reachable_from(p, {}).empty());
  DiGraph two = parse_digraph("a b\nb a\nc d\nd c\n");
  CHECK(reachable_from(two, {*two.find("a")}).size() == 2);
}

TEST_CASE("generators") {
  Rng rng = make_rng(1);
  DiGraph g = er_digraph(1000, 4.0, rng);
  CHECK(g.m() == 2000);
  UnGraph u = er_ungraph(1000, 4.0, rng);
  CHECK(u.m() == 2000);
  UnGraph ba = preferential_attachment(500, 2, rng);
  CHECK(ba.n() == 500);
  int comps = 0;
  connected_components(ba, &comps);
  CHECK(comps == 1);
  std::vector<int> in{1, 2, 0, 1}, out{2, 0, 1, 1};
  DiGraph c = configuration_digraph(in, out, rng);
  for (int i = 0; i < 4; ++i) {
    CHECK(c.in_degree(i) == in[i]);
    CHECK(c.out_degree(i) == out[i]);
  }
  DiGraph sf = sf_static_digraph(2000, 4.0, 3.0, rng);
  CHECK(sf.m() == 4000);
}

TEST_CASE("seeded generators are reproducible") {
  Rng a = make_rng(42), b = make_rng(42);
  CHECK(to_edge_list(er_digraph(300, 3.0, a)) == to_edge_list(er_digraph(300, 3.0, b)));
}

TEST_CASE("brute-force oracle sanity: non-isomorphic digraph counts") {
  CHECK(oracle::nonisomorphic_digraphs(3).size() == 16);
  CHECK(oracle::nonisomorphic_digraphs(4).size() == 218);
}
