#include <cmath>
#include <numbers>

#include "doctest.h"
#include "netctl/error.hpp"
#include "netctl/exact.hpp"
#include "netctl/generators.hpp"
#include "netctl/structural.hpp"

using namespace netctl;

TEST_CASE("Kalman rank examples") {
  const double gl = 9.81 / 1.0;
  DenseSystem stick;
  stick.A = (Mat(2, 2) << 0, 1, gl, 0).finished();
  stick.B = (Mat(2, 1) << 0, -gl).finished();
  auto k = kalman_rank(stick);
  CHECK(k.rank == 2);
  CHECK(k.controllable);
  DiGraph star = out_star(2);
  DenseSystem s{adjacency_matrix(star), input_matrix(3, {0}), Mat()};
  CHECK(kalman_rank(s).rank == 2);
  s.B = input_matrix(3, {0, 2});
  CHECK(kalman_rank(s).rank == 3);
}

TEST_CASE("adjacency convention A[dst][src]") {
  DiGraph g = parse_digraph("a b 2.5\n");
  Mat A = adjacency_matrix(g);
  CHECK(A(*g.find("b"), *g.find("a")) == 2.5);
  CHECK(A(*g.find("a"), *g.find("b")) == 0.0);
}

TEST_CASE("PBH on the regular shapes") {
  for (int n : {5, 10, 20}) {
    CHECK(pbh_min_drivers(adjacency_matrix(path_graph(n))).n_d == 1);
    CHECK(pbh_min_drivers(adjacency_matrix(ring_graph(n))).n_d == 2);
    CHECK(pbh_min_drivers(adjacency_matrix(star_graph(n))).n_d == n - 2);
    CHECK(pbh_min_drivers(adjacency_matrix(complete_graph(n))).n_d == n - 1);
  }
}

TEST_CASE("PBH drivers make the system controllable") {
  for (int s = 0; s < 20; ++s) {
    Rng rng = make_rng(s, 41);
    Mat A = adjacency_matrix(er_ungraph(30, 3.0, rng));
    PbhResult r = pbh_min_drivers(A);
    CHECK(r.verified);
    // single-node drivers may exceed the number of independent inputs
    CHECK(static_cast<int>(r.drivers.size()) >= r.n_d);
    if (!r.extended) CHECK(static_cast<int>(r.drivers.size()) == r.n_d);
    CHECK(pbh_controllable(A, input_matrix(30, r.drivers)));
  }
}

TEST_CASE("eigen table multiplicities") {
  EigenStructure es = eigen_table(adjacency_matrix(star_graph(6)));
  bool zero = false;
  for (const auto& c : es.clusters)
    if (std::abs(c.lambda) < 1e-9) {
      zero = true;
      CHECK(c.geometric == 4);
      CHECK(c.algebraic == 4);
    }
  CHECK(zero);
  // Jordan block: algebraic 3, geometric 1
  EigenStructure j = eigen_table(adjacency_matrix(directed_path(3)));
  REQUIRE(j.clusters.size() == 1);
  CHECK(j.clusters[0].algebraic == 3);
  CHECK(j.clusters[0].geometric == 1);
}

TEST_CASE("PBH agrees with matching on generic weights") {
  for (int s = 0; s < 30; ++s) {
    Rng rng = make_rng(s, 42);
    DiGraph g = er_digraph(25, 2.0 + 0.1 * s, rng);
    Mat A = adjacency_matrix(g);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    for (const auto& e : g.edges()) A(e.dst, e.src) = w(rng);
    CHECK(pbh_min_drivers(A).n_d == min_driver_set(g).n_d);
  }
}

TEST_CASE("self-loop sweep validates input") {
  Mat A = adjacency_matrix(directed_cycle(4));
  CHECK_THROWS_AS(self_loop_sweep(A, {0.0, 1.0}, {{0.5, 0.6}}, {0}), Error);
  CHECK_THROWS_AS(self_loop_sweep(A, {0.0, 1.0}, {{1.0}}, {0}), Error);
  auto pts = self_loop_sweep(A, {0.0, 1.0}, {{0.5, 0.5}}, {0, 1, 2});
  CHECK(pts.size() == 1);
  CHECK(pts[0].samples.size() == 3);
}

TEST_CASE("self-loop sweep is seed-deterministic") {
  Rng rng = make_rng(1, 43);
  Mat A = adjacency_matrix(er_digraph(60, 4.0, rng));
  auto a = self_loop_sweep(A, {0.0, 1.0}, {{0.3, 0.7}}, {5, 6});
  auto b = self_loop_sweep(A, {0.0, 1.0}, {{0.3, 0.7}}, {5, 6});
  CHECK(a[0].samples == b[0].samples);
}

TEST_CASE("PBH drivers on weighted directed graphs pass the full rank test") {
  for (int s = 0; s < 30; ++s) {
    Rng rng = make_rng(s, 44);
    DiGraph g = er_digraph(40, 1.5 + 0.1 * s, rng, true);
    Mat A = adjacency_matrix(g);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    if (s % 2)
      for (const auto& e : g.edges()) A(e.dst, e.src) = w(rng);
    PbhResult r = pbh_min_drivers(A);
    CHECK(r.verified);
    CHECK(pbh_controllable(A, input_matrix(40, r.drivers)));
  }
}
