#include <cmath>

#include "doctest.h"
#include "netctl/energy.hpp"
#include "netctl/error.hpp"
#include "netctl/generators.hpp"
#include "netctl/stats.hpp"

using namespace netctl;

namespace {
DenseSystem chain(int n) {
  DenseSystem c;
  c.A = -Mat::Identity(n, n);
  for (int i = 1; i < n; ++i) c.A(i, i - 1) = 1;
  c.B = Mat::Zero(n, 1);
  c.B(0, 0) = 1;
  return c;
}
}  // namespace

TEST_CASE("expm of a rotation generator") {
  Mat M(2, 2);
  M << 0, -1, 1, 0;
  Mat E = expm(M);
  CHECK(E(0, 0) == doctest::Approx(std::cos(1.0)));
  CHECK(E(1, 0) == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("scalar Gramian") {
  DenseSystem s{Mat::Zero(1, 1), Mat::Ones(1, 1), Mat()};
  CHECK(gramian(s, 2.5).W(0, 0) == doctest::Approx(2.5).epsilon(1e-12));
  auto me = min_energy_input(s, Vec::Zero(1), Vec::Ones(1), 2.0);
  CHECK(me.energy == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(me.energy_quad == doctest::Approx(0.5).epsilon(1e-6));
  for (const auto& row : me.trace.rows) CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("Gramian definiteness and singularity") {
  auto g = gramian(chain(2), 1.0);
  CHECK(g.w(0) > 0);
  DenseSystem star{Mat::Zero(3, 3), Mat::Zero(3, 1), Mat()};
  star.A(1, 0) = star.A(2, 0) = 1;
  star.B(0, 0) = 1;
  auto gs = gramian(star, 1.0);
  CHECK(gs.eta(0) < 1e-12);
  CHECK_THROWS_AS(min_energy_input(star, Vec::Zero(3), Vec::Ones(3), 1.0), Error);
}

TEST_CASE("long-horizon Gramian solves the Lyapunov equation") {
  DenseSystem c = chain(5);
  Mat W = gramian(c, 60.0).W;
  Mat R = c.A * W + W * c.A.transpose() + c.B * c.B.transpose();
  CHECK(R.norm() / (c.B * c.B.transpose()).norm() < 1e-6);
}

TEST_CASE("free evolution needs no energy") {
  DenseSystem c = chain(4);
  Vec xi = Vec::LinSpaced(4, 1, 2);
  Vec xf = expm(c.A * 1.5) * xi;
  auto me = min_energy_input(c, xi, xf, 1.5);
  CHECK(me.energy < 1e-16);
  CHECK((me.x_final - xf).norm() < 1e-10);
}

TEST_CASE("minimum-energy input: frozen values on the 5-chain") {
  DenseSystem c = chain(5);
  Vec xf(5);
  xf << 1, -0.5, 0.25, 0.8, -0.3;
  auto me = min_energy_input(c, Vec::Zero(5), xf, 3.0);
  CHECK((me.x_final - xf).norm() < 1e-9);
  CHECK(std::abs(me.energy - me.energy_quad) / me.energy < 1e-3);
  CHECK(me.trace.columns.front() == "u1");
  CHECK(control_energy(c, Vec::Zero(5), xf, 3.0) == doctest::Approx(me.energy));
}

TEST_CASE("E_min slope and E_max decay") {
  DenseSystem c = chain(5);
  std::vector<double> T, E;
  for (int k = 0; k <= 10; ++k) {
    T.push_back(std::pow(10.0, -3 + 0.2 * k));
    E.push_back(energy_bounds(c, T.back()).e_min);
  }
  CHECK(fit_loglog(T, E).slope == doctest::Approx(-1.0).epsilon(0.1));
  DenseSystem nd{(Mat(2, 2) << -1, 0, 0, -2).finished(), Mat::Identity(2, 2), Mat()};
  std::vector<double> t2, e2;
  for (double t : {4.0, 6.0, 8.0, 10.0}) {
    t2.push_back(t);
    e2.push_back(std::log(energy_bounds(nd, t).e_max));
  }
  CHECK(fit_line(t2, e2).slope == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("energy bounds bracket every unit start") {
  DenseSystem c = chain(4);
  auto eb = energy_bounds(c, 2.0);
  Rng rng = make_rng(3);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    Vec x(4);
    for (int k = 0; k < 4; ++k) x(k) = nd(rng);
    x.normalize();
    double e = control_energy(c, x, Vec::Zero(4), 2.0);
    CHECK(e >= eb.e_min * (1 - 1e-10));
    CHECK(e <= eb.e_max * (1 + 1e-10));
  }
}

TEST_CASE("energy spectrum structure") {
  Rng rng = make_rng(0);
  UnGraph g = sf_static_ungraph(200, 4.0, 3.0, rng);
  DenseSystem s{-(laplacian_matrix(g) + 0.01 * Mat::Identity(200, 200)), Mat::Identity(200, 200), Mat()};
  auto sp = energy_spectrum(s, 1.0);
  CHECK(sp.energies.size() == 200);
  CHECK(std::is_sorted(sp.energies.begin(), sp.energies.end()));
  CHECK(std::isfinite(sp.tail_slope));
  CHECK(sp.tail_slope < 0);
  DenseSystem c = chain(4);
  auto gr = gramian(c, 1.0);
  auto ret = energy_spectrum(c, 1.0, SpectrumMode::Return);
  CHECK(ret.energies.front() == doctest::Approx(1.0 / gr.eta(gr.eta.size() - 1)).epsilon(1e-9));
}

TEST_CASE("SF spectrum tail exponent near -3") {
  Rng rng = make_rng(1);
  UnGraph g = sf_static_ungraph(500, 4.0, 3.0, rng);
  DenseSystem s{-(laplacian_matrix(g) + 0.01 * Mat::Identity(500, 500)), Mat::Identity(500, 500), Mat()};
  CHECK(std::abs(energy_spectrum(s, 1.0).tail_slope + 3.0) < 0.5);
}
