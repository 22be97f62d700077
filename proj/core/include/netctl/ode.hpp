#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netctl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// dx = f(t, x)
using Rhs = std::function<void(double, const Vec&, Vec&)>;

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-6;
  double dt0 = 1e-3;
};

// Adaptive Dormand-Prince 5(4).
Vec integrate(const Rhs& f, Vec x0, double t0, double t1, const OdeOptions& opt = {});
// States at the given increasing times; times.front() is the start time.
std::vector<Vec> integrate_samples(const Rhs& f, const Vec& x0, const std::vector<double>& times,
                                   const OdeOptions& opt = {});
std::vector<double> linspace(double a, double b, int n);

Vec rk4_step(const Rhs& f, double t, const Vec& x, double h);

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h = 1e-6);

// x' = f(t, x, u), u an external input vector (possibly empty).
struct OdeSystem {
  std::string name;
  int dim = 0;
  int inputs = 0;
  std::map<std::string, double> params;
  std::function<Vec(double, const Vec&, const Vec&)> f;
  std::function<Mat(double, const Vec&, const Vec&)> jac;  // optional

  Vec rhs(double t, const Vec& x, const Vec& u) const { return f(t, x, u); }
  Vec rhs(double t, const Vec& x) const { return f(t, x, Vec::Zero(inputs)); }
  Mat jacobian(double t, const Vec& x, const Vec& u) const;
  Mat jacobian(double t, const Vec& x) const { return jacobian(t, x, Vec::Zero(inputs)); }
  Rhs autonomous() const;
};

}  // namespace netctl
