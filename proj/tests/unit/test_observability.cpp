#include <cmath>

#include "doctest.h"
#include "netctl/error.hpp"
#include "netctl/generators.hpp"
#include "netctl/observability.hpp"
#include "oracles.hpp"

using namespace netctl;

namespace {
const char* kEleven =
    "species: A B C D E F G H I J K\n"
    "k1: D <-> E\n"
    "k2: G + H <-> I\n"
    "k3: A + B + C -> F + J\n"
    "k4: J + K -> E + I\n";
int at(const DiGraph& g, const char* s) { return *g.find(s); }
}  // namespace

TEST_CASE("irreversible A -> B") {
  ReactionSystem rs = parse_reactions("k: A -> B\n");
  DiGraph g = inference_diagram(rs);
  CHECK(g.has_edge(at(g, "B"), at(g, "A")));
  CHECK_FALSE(g.has_edge(at(g, "A"), at(g, "B")));
  SensorReport r = min_sensors(g);
  CHECK(r.n_sensors == 1);
  CHECK(r.sensors == NodeSet{at(g, "B")});
  CHECK(is_sensor_set(g, {at(g, "B")}));
  CHECK_FALSE(is_sensor_set(g, {at(g, "A")}));
}

TEST_CASE("reversible pair is one root component") {
  DiGraph g = inference_diagram(parse_reactions("k: A <-> B\n"));
  SensorReport r = min_sensors(g);
  CHECK(r.n_sensors == 1);
  CHECK(r.multiplicity == 2);
  CHECK(r.singleton_roots.empty());
}

TEST_CASE("edgeless pattern needs every node") {
  SensorReport r = min_sensors(inference_diagram(Mat::Zero(4, 4)));
  CHECK(r.n_sensors == 4);
  CHECK(r.singleton_roots.size() == 4);
}

TEST_CASE("reaction parser") {
  ReactionSystem rs = parse_reactions("2.5: 2 A + B -> C\nk: 0 -> A\n");
  CHECK(rs.n() == 3);
  CHECK(rs.r() == 2);
  Mat S = rs.stoichiometry();
  CHECK(S(0, 0) == -2);
  CHECK(S(2, 0) == 1);
  CHECK(S(0, 1) == 1);
  Vec x = Vec::Ones(3) * 2.0;
  CHECK(rs.rates(x)(0) == doctest::Approx(2.5 * 8.0));
  CHECK_THROWS_AS(parse_reactions("k: A B\n"), Error);
  CHECK_THROWS_AS(parse_reactions("k: 2 3 A -> B\n"), Error);
}

TEST_CASE("species line fixes order") {
  ReactionSystem rs = parse_reactions(kEleven);
  CHECK(rs.n() == 11);
  CHECK(rs.species[3] == "D");
}

TEST_CASE("eleven-species system") {
  DiGraph g = inference_diagram(parse_reactions(kEleven));
  SensorReport r = min_sensors(g);
  CHECK(r.n_sensors == 3);
  CHECK(r.multiplicity == 6);
  CHECK(is_sensor_set(g, make_node_set({at(g, "E"), at(g, "F"), at(g, "G")})));
  for (const auto& root : r.root_sccs) {
    NodeSet others;
    for (const auto& o : r.root_sccs)
      if (&o != &root) others.push_back(o.front());
    CHECK_FALSE(is_sensor_set(g, make_node_set(others)));
  }
}

TEST_CASE("target sensor") {
  DiGraph g = inference_diagram(parse_reactions(kEleven));
  TargetSensor t = target_sensor(g, {at(g, "D")});
  CHECK(t.sensor != at(g, "D"));
  CHECK(t.cost >= 1);
  DiGraph ab = inference_diagram(parse_reactions("k: A -> B\n"));
  CHECK(target_sensor(ab, {at(ab, "A")}).sensor == at(ab, "B"));
  CHECK_THROWS_AS(target_sensor(ab, {at(ab, "B")}), Error);
}

TEST_CASE("duality on a path") {
  DriverReport r = sensors_via_duality(directed_path(3));
  CHECK(r.n_d == 1);
  CHECK(r.drivers == NodeSet{2});
}

TEST_CASE("duality matches the dense observability rank") {
  for (int s = 0; s < 40; ++s) {
    Rng rng = make_rng(s, 61);
    DiGraph g = gnp_digraph(2 + s % 5, 0.3, rng);
    CHECK(sensors_via_duality(g).n_d == oracle::brute_min_outputs(g, 5, s));
  }
}

TEST_CASE("MDS small cases") {
  MdsResult st = mds_solve(star_graph(7));
  CHECK(st.nodes.size() == 1);
  CHECK(st.exact);
  MdsResult p = mds_solve(path_graph(5));
  CHECK(p.nodes.size() == 2);
  CHECK(is_dominating(path_graph(5), p.nodes));
  CHECK(mds_solve(UnGraph(3)).nodes.size() == 3);
  CHECK(mds_brute_force(ring_graph(9)).size() == 3);
}

TEST_CASE("MDS heuristic is dominating and exact on trees") {
  for (int s = 0; s < 60; ++s) {
    Rng rng = make_rng(s, 62);
    UnGraph g = er_ungraph(14, 1.0 + 0.05 * s, rng);
    MdsResult r = mds_solve(g);
    CHECK(is_dominating(g, r.nodes));
    size_t best = oracle::brute_mds(g);
    CHECK(r.nodes.size() >= best);
    if (r.exact) CHECK(r.nodes.size() == best);
  }
}

TEST_CASE("observability transition extremes") {
  UnGraph k = complete_graph(20);
  CHECK(observable_fraction(k, {0}) == doctest::Approx(1.0));
  CHECK(observable_fraction(UnGraph(20), {0}) == doctest::Approx(0.05));
  CHECK(observability_transition(k, 0.2, 20, 1).mean == doctest::Approx(1.0));
  TransitionPoint a = observability_transition(UnGraph(50), 0.3, 5, 1);
  CHECK(a.mean < 0.1);
}

TEST_CASE("transition is seed-deterministic and increasing") {
  Rng rng = make_rng(0, 63);
  UnGraph g = er_ungraph(2000, 2.0, rng);
  CHECK(observability_transition(g, 0.1, 5, 9).mean == observability_transition(g, 0.1, 5, 9).mean);
  CHECK(observability_transition(g, 0.05, 5, 9).mean < observability_transition(g, 0.3, 5, 9).mean);
}

TEST_CASE("Luenberger observer") {
  DenseSystem s;
  s.A = (Mat(2, 2) << 0, 1, -2, -0.5).finished();
  s.B = Mat::Zero(2, 1);
  s.C = (Mat(1, 2) << 1, 0).finished();
  Mat L = (Mat(2, 1) << 3, 2).finished();
  Vec x0 = (Vec(2) << 1, 0).finished();
  SimTrace same = luenberger_observe(s, L, x0, x0, 5.0);
  for (double e : same.series("e_norm")) CHECK(e < 1e-9);
  SimTrace tr = luenberger_observe(s, L, x0, Vec::Zero(2), 10.0);
  auto e = tr.series("e_norm");
  CHECK(e.front() == doctest::Approx(1.0));
  CHECK(e.back() < 1e-3);
}
