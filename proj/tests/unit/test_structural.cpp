#include "doctest.h"
#include "netctl/error.hpp"
#include "netctl/generators.hpp"
#include "netctl/structural.hpp"
#include "oracles.hpp"

using namespace netctl;

namespace {
DiGraph star() { return parse_digraph("1 2\n1 3\n"); }
int id(const DiGraph& g, const char* l) { return *g.find(l); }
}  // namespace

TEST_CASE("min_driver_set on the small shapes") {
  DriverReport p = min_driver_set(directed_path(3));
  CHECK(p.n_d == 1);
  CHECK(p.drivers == NodeSet{0});
  DiGraph s = star();
  DriverReport r = min_driver_set(s);
  CHECK(r.n_d == 2);
  CHECK(r.drivers == NodeSet{id(s, "1"), id(s, "3")});
  DriverReport c = min_driver_set(directed_cycle(3));
  CHECK(c.n_d == 1);
  CHECK(c.perfect);
  CHECK(c.drivers == NodeSet{0});
}

TEST_CASE("matching N_D equals generic Kalman brute force") {
  for (int s = 0; s < 150; ++s) {
    Rng rng = make_rng(s, 21);
    DiGraph g = gnp_digraph(2 + s % 5, 0.2 + 0.1 * (s % 4), rng, s % 2 == 0);
    CHECK(min_driver_set(g).n_d == oracle::brute_min_inputs(g, 5, s));
  }
}

TEST_CASE("structural controllability check and witnesses") {
  DiGraph s = star();
  auto hub = structural_controllability_check(s, {id(s, "1")});
  CHECK_FALSE(hub.controllable);
  CHECK(hub.witness_kind == WitnessKind::Dilation);
  CHECK(hub.witness == NodeSet{id(s, "2"), id(s, "3")});
  CHECK(hub.neighborhood.size() < hub.witness.size());
  CHECK(structural_controllability_check(s, make_node_set({id(s, "1"), id(s, "3")})).controllable);
  DiGraph two(2);
  auto acc = structural_controllability_check(two, {0});
  CHECK(acc.witness_kind == WitnessKind::Inaccessible);
  CHECK(acc.witness == NodeSet{1});
  CHECK_THROWS_AS(structural_controllability_check(s, {}), Error);
}

TEST_CASE("min_driver_set drivers never leave a dilation") {
  // Isolated cycles may stay inaccessible under single-node inputs.
  int clean = 0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = make_rng(s, 22);
    DiGraph g = er_digraph(50 + s, 1.0 + 0.05 * s, rng);
    auto c = structural_controllability_check(g, min_driver_set(g).drivers);
    CHECK(c.witness_kind != WitnessKind::Dilation);
    clean += c.controllable;
  }
  CHECK(clean > 80);
}

TEST_CASE("link classes") {
  DiGraph p = directed_path(3);
  for (auto c : classify_links(p)) CHECK(c == LinkClass::Critical);
  DiGraph d = parse_digraph("1 2\n1 3\n2 4\n3 4\n");
  auto cls = classify_links(d);
  CHECK(cls[d.edge_id(id(d, "2"), id(d, "4"))] == LinkClass::Ordinary);
  CHECK(cls[d.edge_id(id(d, "3"), id(d, "4"))] == LinkClass::Ordinary);
  for (int s = 0; s < 300; ++s) {
    Rng rng = make_rng(s, 23);
    DiGraph g = gnp_digraph(2 + s % 5, 0.35, rng, true);
    auto mine = classify_links(g);
    auto ref = oracle::brute_link_classes(g);
    for (int e = 0; e < g.m(); ++e)
      CHECK((mine[e] == LinkClass::Critical ? 0 : mine[e] == LinkClass::Redundant ? 1 : 2) == ref[e]);
  }
}

TEST_CASE("critical link share falls with density") {
  double prev = 1.0;
  for (double k : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    Rng rng = make_rng(5);
    double c = fractions(classify_links(er_digraph(10000, k, rng))).critical;
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("removing links: critical raises N_D, redundant leaves it") {
  for (int s = 0; s < 40; ++s) {
    Rng rng = make_rng(s, 24);
    DiGraph g = er_digraph(30, 2.5, rng);
    int nd = min_driver_set(g).n_d;
    auto cls = classify_links(g);
    for (int e = 0; e < g.m(); ++e) {
      if (cls[e] == LinkClass::Ordinary) continue;
      DiGraph h(g.n());
      for (int f = 0; f < g.m(); ++f)
        if (f != e) h.add_edge(g.edge(f).src, g.edge(f).dst);
      int nh = min_driver_set(h).n_d;
      if (cls[e] == LinkClass::Critical)
        CHECK(nh > nd);
      else
        CHECK(nh == nd);
    }
  }
}

TEST_CASE("node classes") {
  DiGraph s = star();
  auto c = classify_nodes(s);
  CHECK(c[id(s, "1")] == NodeClass::Critical);
  CHECK(c[id(s, "2")] == NodeClass::Intermittent);
  CHECK(c[id(s, "3")] == NodeClass::Intermittent);
  for (auto x : classify_nodes(directed_cycle(3))) CHECK(x == NodeClass::Redundant);
  auto p = classify_nodes(directed_path(3));
  CHECK(p[0] == NodeClass::Critical);
  CHECK(p[1] == NodeClass::Redundant);
  CHECK(p[2] == NodeClass::Redundant);
  for (int k = 0; k < 200; ++k) {
    Rng rng = make_rng(k, 25);
    DiGraph g = gnp_digraph(2 + k % 5, 0.3, rng, k % 2 == 0);
    auto mine = classify_nodes(g);
    auto ref = oracle::brute_node_classes(g);
    for (int v = 0; v < g.n(); ++v)
      CHECK((mine[v] == NodeClass::Critical ? 0 : mine[v] == NodeClass::Redundant ? 2 : 1) == ref[v]);
  }
}

TEST_CASE("deletion classes") {
  auto p = classify_nodes_deletion(directed_path(3));
  CHECK(p[1] == DeletionClass::Critical);
  DiGraph s = star();
  auto d = classify_nodes_deletion(s);
  CHECK(d[id(s, "2")] == DeletionClass::Redundant);
  CHECK(d[id(s, "1")] == DeletionClass::Ordinary);
}

TEST_CASE("control profile") {
  auto p = control_profile(directed_path(3));
  CHECK(p.eta_s == doctest::Approx(1.0 / 3));
  CHECK(p.eta_e == 0);
  CHECK(p.eta_i == 0);
  auto s = control_profile(star());
  CHECK(s.eta_s == doctest::Approx(1.0 / 3));
  CHECK(s.eta_e == doctest::Approx(1.0 / 3));
  CHECK(s.eta_i == 0);
  auto c = control_profile(directed_cycle(3));
  CHECK(c.eta_i == doctest::Approx(1.0 / 3));
  CHECK(c.eta_s == 0);
}

TEST_CASE("control centrality") {
  CHECK(control_centrality(directed_cycle(3), {1}) == 3);
  for (int L = 1; L <= 6; ++L) CHECK(control_centrality(directed_path(L), {0}) == L);
  Rng rng = make_rng(7);
  DiGraph g = er_digraph(40, 3.0, rng);
  NodeSet all(g.n());
  std::iota(all.begin(), all.end(), 0);
  CHECK(control_centrality(g, all) == g.n());
  int prev = 0;
  NodeSet grow;
  for (int v = 0; v < 10; ++v) {
    grow = make_node_set([&] { auto x = grow; x.push_back(v); return x; }());
    int c = control_centrality(g, grow);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("minimum actuators") {
  DiGraph g;
  for (const char* x : {"x1", "x2", "x3", "x4", "x5"}) g.add_node(x);
  g.add_edge("x1", "x2");
  g.add_edge("x1", "x4");
  g.add_edge("x4", "x3");
  g.add_edge("x5", "x5");
  ActuatorReport a = min_actuators(g);
  CHECK(a.n_d == 2);
  CHECK(a.beta == 2);
  CHECK(a.alpha == 1);
  CHECK(a.n_da == 3);
  CHECK(min_actuators(directed_path(5)).n_da == 1);
  DiGraph two = parse_digraph("a b\nb a\nc d\nd c\n");
  ActuatorReport t = min_actuators(two);
  CHECK(t.n_d == 1);
  CHECK(t.beta == 2);
  CHECK(t.alpha == 1);
  CHECK(t.n_da == 2);
  for (int s = 0; s < 60; ++s) {
    Rng rng = make_rng(s, 26);
    DiGraph r = gnp_digraph(2 + s % 8, 0.15, rng, s % 3 == 0);
    ActuatorReport ar = min_actuators(r);
    CHECK(ar.n_da == oracle::brute_min_actuators(r));
    CHECK(ar.n_d <= ar.n_da);
    CHECK(ar.n_da <= ar.n_d + ar.beta);
  }
}

TEST_CASE("switchboard drivers") {
  DiGraph s = star();
  CHECK(switchboard_drivers(s) == NodeSet{id(s, "1")});
  CHECK(switchboard_drivers(directed_cycle(3)).size() == 1);
  DiGraph c = parse_digraph("a c\nb c\n");
  auto d = switchboard_drivers(c);
  CHECK(std::find(d.begin(), d.end(), id(c, "c")) == d.end());
}
