#include "netctl/ode.hpp"

#include <boost/numeric/odeint.hpp>

#include "netctl/error.hpp"

namespace netctl {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

struct Adapter {
  const Rhs* f;
  mutable Vec x, dx;
  void operator()(const State& s, State& ds, double t) const {
    x = Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
    dx.resize(x.size());
    (*f)(t, x, dx);
    ds.assign(dx.data(), dx.data() + dx.size());
  }
};

}  // namespace

Vec integrate(const Rhs& f, Vec x0, double t0, double t1, const OdeOptions& opt) {
  if (t1 == t0) return x0;
  State s(x0.data(), x0.data() + x0.size());
  auto stepper =
      odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  double dt = std::min(opt.dt0, std::abs(t1 - t0));
  odeint::integrate_adaptive(stepper, Adapter{&f, {}, {}}, s, t0, t1, t1 > t0 ? dt : -dt);
  return Eigen::Map<Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
}

std::vector<Vec> integrate_samples(const Rhs& f, const Vec& x0, const std::vector<double>& times,
                                   const OdeOptions& opt) {
  std::vector<Vec> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  State s(x0.data(), x0.data() + x0.size());
  auto stepper =
      odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  double span = times.size() > 1 ? std::abs(times.back() - times.front()) : 1.0;
  double dt = std::min(opt.dt0, span > 0 ? span : opt.dt0);
  odeint::integrate_times(stepper, Adapter{&f, {}, {}}, s, times.begin(), times.end(), dt,
                          [&](const State& st, double) {
                            out.emplace_back(Eigen::Map<const Vec>(
                                st.data(), static_cast<Eigen::Index>(st.size())));
                          });
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

Vec rk4_step(const Rhs& f, double t, const Vec& x, double h) {
  Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
  f(t, x, k1);
  f(t + h / 2, x + h / 2 * k1, k2);
  f(t + h / 2, x + h / 2 * k2, k3);
  f(t + h, x + h * k3, k4);
  return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  Vec f0 = f(x);
  Mat J(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    double step = h * std::max(1.0, std::abs(x(j)));
    Vec xp = x, xm = x;
    xp(j) += step;
    xm(j) -= step;
    J.col(j) = (f(xp) - f(xm)) / (2 * step);
  }
  return J;
}

Mat OdeSystem::jacobian(double t, const Vec& x, const Vec& u) const {
  if (jac) return jac(t, x, u);
  return fd_jacobian([&](const Vec& y) { return f(t, y, u); }, x);
}

Rhs OdeSystem::autonomous() const {
  auto fn = f;
  int m = inputs;
  return [fn, m](double t, const Vec& x, Vec& dx) { dx = fn(t, x, Vec::Zero(m)); };
}

}  // namespace netctl
