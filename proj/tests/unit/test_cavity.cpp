#include <cmath>

#include "doctest.h"
#include "netctl/cavity.hpp"
#include "netctl/generators.hpp"
#include "netctl/structural.hpp"

using namespace netctl;

TEST_CASE("Poisson generating functions") {
  auto d = DegreeDistribution::poisson(2.0);
  CHECK(d.G(1.0) == doctest::Approx(1.0));
  CHECK(d.H(1.0) == doctest::Approx(1.0));
  double s = 0;
  for (int k = 0; k < 40; ++k) s += d.pk(k);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("static-model degree distribution is normalised with the right mean") {
  for (double gamma : {2.1, 2.5, 3.0}) {
    auto d = DegreeDistribution::sf_static(4.0, gamma);
    double s = 0, m = 0;
    for (int k = 0; k < 4000; ++k) {
      double p = d.pk(k);
      s += p;
      m += k * p;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-3));
    if (gamma >= 2.5) CHECK(m == doctest::Approx(2.0).epsilon(2e-2));
    CHECK(d.G(0.3) == doctest::Approx(d.pk(0) + 0.3 * d.pk(1) + 0.09 * d.pk(2)).epsilon(0.05));
  }
}

TEST_CASE("empirical distribution from degrees") {
  auto d = DegreeDistribution::from_degrees({0, 1, 1, 2});
  CHECK(d.pk(1) == doctest::Approx(0.5));
  CHECK(d.mean() == doctest::Approx(1.0));
  CHECK(d.H(0.0) == doctest::Approx(d.qk(1)));
}

TEST_CASE("cavity on ER: frozen values and limits") {
  auto nd = [](double k) {
    auto d = DegreeDistribution::poisson(k / 2);
    return solve_cavity(d, d, k).n_d;
  };
  CHECK(nd(8.0) == doctest::Approx(0.0221596882).epsilon(1e-6));
  CHECK(nd(4.0) == doctest::Approx(0.216074).epsilon(1e-4));
  CHECK(nd(0.01) > 0.99);
  CHECK(nd(2.0) > nd(4.0));
}

TEST_CASE("cavity agrees with matching at moderate size") {
  for (double k : {2.0, 4.0}) {
    double sim = 0;
    for (int s = 0; s < 3; ++s) {
      Rng rng = make_rng(s, 31);
      sim += static_cast<double>(min_driver_set(er_digraph(20000, k, rng)).n_d) / 20000;
    }
    auto d = DegreeDistribution::poisson(k / 2);
    CHECK(std::abs(sim / 3 - solve_cavity(d, d, k).n_d) < 0.02);
  }
}

TEST_CASE("cavity on the static model") {
  auto nd = [](double gamma) {
    auto d = DegreeDistribution::sf_static(4.0, gamma);
    return solve_cavity(d, d, 4.0).n_d;
  };
  double a = nd(2.05), b = nd(2.5), c = nd(3.0);
  CHECK(a > b);
  CHECK(b > c);
  CHECK(a == doctest::Approx(0.920937).epsilon(1e-4));
  CHECK(cavity_residual(DegreeDistribution::sf_static(4.0, 3.0), DegreeDistribution::sf_static(4.0, 3.0),
                        solve_cavity(DegreeDistribution::sf_static(4.0, 3.0),
                                     DegreeDistribution::sf_static(4.0, 3.0), 4.0)
                            .state) < 1e-9);
}

TEST_CASE("asymptotic forms") {
  CHECK(nd_asymptotic(EnsembleKind::ER, 10.0) == doctest::Approx(6.7379e-3).epsilon(1e-4));
  CHECK(nd_asymptotic(EnsembleKind::SfStatic, 10.0, 3.0) == doctest::Approx(8.2085e-2).epsilon(1e-4));
  CHECK(nd_asymptotic(EnsembleKind::SfStatic, 10.0, 1e9) ==
        doctest::Approx(nd_asymptotic(EnsembleKind::ER, 10.0)).epsilon(1e-6));
}
