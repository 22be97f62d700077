#include <cmath>
#include <numbers>

#include "doctest.h"
#include "netctl/collective.hpp"
#include "netctl/error.hpp"
#include "netctl/generators.hpp"
#include "netctl/steering.hpp"

using namespace netctl;

TEST_CASE("Laplacian row sums") {
  Rng rng = make_rng(1);
  Mat L = laplacian(er_ungraph(30, 4.0, rng));
  CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  Mat Ld = laplacian(directed_path(3));
  CHECK(Ld(1, 0) == -1);
  CHECK(Ld(1, 1) == 1);
  CHECK(Ld(0, 0) == 0);
}

TEST_CASE("eigenratio closed forms") {
  EigenRatio k = msf_eigenratio(complete_graph(8));
  CHECK(k.lambda2 == doctest::Approx(8));
  CHECK(k.ratio == doctest::Approx(1));
  EigenRatio s = msf_eigenratio(star_graph(9));
  CHECK(s.lambda2 == doctest::Approx(1));
  CHECK(s.lambda_n == doctest::Approx(9));
  EigenRatio r = msf_eigenratio(ring_graph(12));
  CHECK(r.lambda2 == doctest::Approx(2 - 2 * std::cos(2 * std::numbers::pi / 12)));
  CHECK(r.lambda_n == doctest::Approx(4));
}

TEST_CASE("pinning matrix shape") {
  PinningConfig c;
  c.G = laplacian(ring_graph(6));
  c.sigma = 0.5;
  c.kappa = {2.0};
  c.pinned = {0, 3};
  Mat M = pinning_matrix(c);
  CHECK(M.rows() == 7);
  CHECK(M.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(M.row(6).cwiseAbs().sum() == 0.0);
  EigenRatio e = pinning_eigenratio(c);
  CHECK(e.lambda2 > 0);
  c.kappa = {1.0, 2.0};
  CHECK_THROWS(pinning_eigenratio(c));
}

TEST_CASE("pinning by degree picks hubs") {
  NodeSet p = pin_by_degree(star_graph(10), 1);
  CHECK(p == NodeSet{0});
  Rng rng = make_rng(2);
  CHECK(pin_random(50, 7, rng).size() == 7);
}

TEST_CASE("strong pinning synchronises a stable node set") {
  OdeSystem osc = make_system("bistable");
  PinningConfig c;
  c.G = laplacian(ring_graph(5));
  c.sigma = 1.0;
  c.kappa = {5.0};
  c.pinned = {0, 1, 2, 3, 4};
  SyncOptions opt;
  opt.T = 20;
  opt.spread = 0.3;
  SimTrace tr = pinning_sync_simulate(c, osc, Mat::Identity(1, 1), Vec::Constant(1, 1.0), opt);
  CHECK(tr.summary.at("final_error") < 1e-6);
}

TEST_CASE("adaptive pinning grows the gains") {
  OdeSystem osc = make_system("rossler");
  PinningConfig c;
  c.G = laplacian(ring_graph(6));
  c.sigma = 1.0;
  c.kappa = {0.1};
  c.pinned = {0, 3};
  SyncOptions opt;
  opt.T = 40;
  opt.adaptive = true;
  opt.q = {1.0};
  Mat H = Mat::Identity(3, 3);
  SimTrace tr = pinning_sync_simulate(c, osc, H, (Vec(3) << 1, 1, 0).finished(), opt);
  CHECK(tr.summary.at("kappa_final_0") > 0.1);
  auto kmin = tr.series("kappa_min");
  CHECK(kmin.back() >= kmin.front());
}

TEST_CASE("Vicsek basics") {
  VicsekParams p;
  p.n = 50;
  p.seed = 4;
  VicsekState s = vicsek_init(p);
  CHECK(s.x.size() == 50);
  auto nb = vicsek_neighbors(s, 7);
  CHECK(std::find(nb.begin(), nb.end(), 7) != nb.end());
  VicsekState a = vicsek_step(s), b = vicsek_step(s);
  CHECK(a.theta == b.theta);
  for (int i = 0; i < 50; ++i) {
    CHECK(a.x[i] >= 0);
    CHECK(a.x[i] < p.L);
    CHECK(std::abs(a.theta[i]) <= std::numbers::pi + 1e-12);
  }
  double phi = vicsek_phi(a);
  CHECK(phi >= 0);
  CHECK(phi <= 1);
}

TEST_CASE("Vicsek order falls with noise") {
  VicsekParams p;
  p.n = 100;
  p.eta = 0.0;
  double quiet = vicsek_order_parameter(p, 600).mean;
  p.eta = 2 * std::numbers::pi;
  double loud = vicsek_order_parameter(p, 600).mean;
  CHECK(quiet > 0.95);
  CHECK(loud < 0.3);
}

TEST_CASE("leader run columns") {
  VicsekParams p;
  p.n = 40;
  p.eta = 0;
  SimTrace tr = vicsek_leader_run(p, 0.5, 300);
  auto dev = tr.series("max_dev");
  CHECK(dev.back() < dev.front());
  SimTrace free = vicsek_leader_run(p, 0.5, 50, false);
  CHECK(free.column("spread") >= 0);
}
