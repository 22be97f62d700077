#include "netctl/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "netctl/error.hpp"
#include "netctl/rng.hpp"

namespace netctl {

namespace {

double param(const std::map<std::string, double>& p, const std::string& k) { return p.at(k); }

void apply_overrides(OdeSystem& s, const std::map<std::string, double>& over) {
  for (const auto& [k, v] : over) {
    auto it = s.params.find(k);
    if (it == s.params.end())
      fail(ErrorKind::InvalidArgument, "system '" + s.name + "' has no parameter '" + k + "'");
    it->second = v;
  }
}

}  // namespace

std::vector<std::string> system_names() { return {"bistable", "lorenz", "rossler", "toggle"}; }

OdeSystem make_system(const std::string& name, const std::map<std::string, double>& overrides) {
  OdeSystem s;
  s.name = name;
  if (name == "rossler") {
    s.dim = 3;
    s.inputs = 1;
    s.params = {{"a", 0.2}, {"b", 0.2}, {"c", 5.7}};
    apply_overrides(s, overrides);
    double a = param(s.params, "a"), b = param(s.params, "b"), c = param(s.params, "c");
    s.f = [a, b, c](double, const Vec& x, const Vec& u) {
      Vec d(3);
      d << -x(1) - x(2), x(0) + a * x(1) + (u.size() ? u(0) : 0.0), b + x(2) * (x(0) - c);
      return d;
    };
    s.jac = [a, c](double, const Vec& x, const Vec&) {
      Mat J(3, 3);
      J << 0, -1, -1, 1, a, 0, x(2), 0, x(0) - c;
      return J;
    };
  } else if (name == "toggle") {
    s.dim = 2;
    s.params = {{"alpha", 4.0}, {"n", 2.0}};
    apply_overrides(s, overrides);
    double al = param(s.params, "alpha"), n = param(s.params, "n");
    s.f = [al, n](double, const Vec& x, const Vec&) {
      Vec d(2);
      d << al / (1 + std::pow(x(1), n)) - x(0), al / (1 + std::pow(x(0), n)) - x(1);
      return d;
    };
  } else if (name == "bistable") {
    s.dim = 1;
    s.inputs = 1;
    s.f = [](double, const Vec& x, const Vec& u) {
      Vec d(1);
      d << x(0) - x(0) * x(0) * x(0) + (u.size() ? u(0) : 0.0);
      return d;
    };
    s.jac = [](double, const Vec& x, const Vec&) {
      Mat J(1, 1);
      J << 1 - 3 * x(0) * x(0);
      return J;
    };
    apply_overrides(s, overrides);
  } else if (name == "lorenz") {
    s.dim = 3;
    s.params = {{"sigma", 10.0}, {"rho", 28.0}, {"beta", 8.0 / 3.0}};
    apply_overrides(s, overrides);
    double sg = param(s.params, "sigma"), r = param(s.params, "rho"),
           be = param(s.params, "beta");
    s.f = [sg, r, be](double, const Vec& x, const Vec&) {
      Vec d(3);
      d << sg * (x(1) - x(0)), x(0) * (r - x(2)) - x(1), x(0) * x(1) - be * x(2);
      return d;
    };
  } else {
    fail(ErrorKind::InvalidArgument, "unknown system '" + name + "'");
  }
  return s;
}

SimTrace hubler_input(const OdeSystem& sys, const Mat& B, const std::function<Vec(double)>& goal,
                      const std::function<Vec(double)>& goal_dot, const Vec& x0, double T,
                      int samples) {
  const int n = sys.dim;
  if (B.rows() != n || B.cols() != n || x0.size() != n)
    fail(ErrorKind::DimensionMismatch, "B must be N x N and x0 of size N");
  Eigen::FullPivLU<Mat> lu(B);
  if (!lu.isInvertible()) fail(ErrorKind::SingularB, "input matrix B is singular");
  if (!(T > 0) || samples < 2) fail(ErrorKind::InvalidArgument, "need T > 0 and samples >= 2");
  auto u_of = [&](double t) -> Vec {
    Vec g = goal(t);
    return lu.solve(goal_dot(t) - sys.rhs(t, g));
  };
  Rhs f = [&](double t, const Vec& x, Vec& dx) { dx = sys.rhs(t, x) + B * u_of(t); };
  OdeOptions opt;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-10;
  auto times = linspace(0, T, samples);
  auto xs = integrate_samples(f, x0, times, opt);
  SimTrace tr;
  tr.columns.push_back("err");
  for (int i = 0; i < n; ++i) tr.columns.push_back("u" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) tr.columns.push_back("x" + std::to_string(i + 1));
  double worst = 0;
  for (size_t k = 0; k < times.size(); ++k) {
    Vec u = u_of(times[k]);
    double e = (xs[k] - goal(times[k])).norm();
    worst = std::max(worst, e);
    std::vector<double> row{e};
    for (int i = 0; i < n; ++i) row.push_back(u(i));
    for (int i = 0; i < n; ++i) row.push_back(xs[k](i));
    tr.add(times[k], row);
  }
  tr.summary["max_error"] = worst;
  tr.summary["final_error"] = tr.rows.back()[0];
  return tr;
}

HenonFixedPoint henon_fixed_point(const HenonParams& hp) {
  if (!(hp.delta > 0)) fail(ErrorKind::InvalidArgument, "activation radius must be > 0");
  HenonFixedPoint fp;
  // x = p + b x - x^2
  const double q = 1.0 - hp.b;
  double disc = q * q + 4 * hp.p;
  if (disc < 0) fail(ErrorKind::InvalidArgument, "map has no real fixed point");
  fp.x = (-q + std::sqrt(disc)) / 2;
  fp.jacobian << -2 * fp.x, hp.b, 1, 0;
  fp.sensitivity << 1, 0;
  double r = std::sqrt(fp.x * fp.x + hp.b);
  fp.lambda_u = -fp.x - r;
  fp.lambda_s = -fp.x + r;
  // Left eigenvector f of lambda_u is (1, b / lambda_u); u = -lambda_u f.z / f.w.
  Eigen::RowVector2d f(1.0, hp.b / fp.lambda_u);
  fp.gain = -fp.lambda_u * f / f.dot(fp.sensitivity.transpose());
  return fp;
}

SimTrace ogy_stabilize_henon(const HenonParams& hp, Eigen::Vector2d x0, int n_steps,
                             std::uint64_t seed) {
  if (n_steps < 1) fail(ErrorKind::InvalidArgument, "n_steps must be >= 1");
  if (!(hp.cap > 0) || hp.cap > 0.01 * hp.p + 1e-12)
    fail(ErrorKind::InvalidArgument, "perturbation cap must lie in (0, 0.01 p]");
  HenonFixedPoint fp = henon_fixed_point(hp);
  Eigen::RowVector2d C = hp.gain.isZero() ? fp.gain : hp.gain;
  Rng rng = make_rng(seed, 0);
  std::uniform_real_distribution<double> jit(-0.01, 0.01);
  x0(0) += jit(rng);
  x0(1) += jit(rng);
  const Eigen::Vector2d star(fp.x, fp.x);
  const double window = 1e-3;
  const int hold = 100;

  SimTrace tr;
  tr.columns = {"x", "y", "u", "dist"};
  Eigen::Vector2d s = x0;
  int run = 0, capture = -1;
  double max_u = 0;
  for (int k = 0; k <= n_steps; ++k) {
    Eigen::Vector2d z = s - star;
    double dist = z.norm();
    double u = 0;
    if (dist <= hp.delta) {
      u = C * z;
      if (std::abs(u) > hp.cap) u = 0;
    }
    max_u = std::max(max_u, std::abs(u));
    tr.add(k, {s(0), s(1), u, dist});
    if (dist < window) {
      if (++run == hold && capture < 0) capture = k - hold + 1;
    } else {
      run = 0;
    }
    if (!std::isfinite(s(0))) break;
    double x = s(0);
    s = Eigen::Vector2d(hp.p + u + hp.b * s(1) - x * x, x);
  }
  if (max_u > hp.cap) fail(ErrorKind::InvalidArgument, "perturbation cap violated");
  tr.summary["fixed_point"] = fp.x;
  tr.summary["max_abs_u"] = max_u;
  tr.summary["capture_step"] = capture;
  if (capture < 0)
    fail(ErrorKind::NoCapture, "orbit not captured within " + std::to_string(n_steps) + " steps");
  double dev = 0;
  for (size_t k = capture; k < tr.size(); ++k) dev = std::max(dev, tr.rows[k][3]);
  tr.summary["max_post_dev"] = dev;
  return tr;
}

double henon_lyapunov(double p, double b, int n_steps, std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  double x = u(rng), y = u(rng);
  auto map = [&](double& a, double& c) {
    double na = p + b * c - a * a;
    c = a;
    a = na;
  };
  for (int i = 0; i < 1000; ++i) map(x, y);
  const double d0 = 1e-8;
  double x2 = x + d0, y2 = y, sum = 0;
  for (int i = 0; i < n_steps; ++i) {
    map(x, y);
    map(x2, y2);
    double dx = x2 - x, dy = y2 - y, d = std::hypot(dx, dy);
    sum += std::log(d / d0);
    x2 = x + dx * d0 / d;
    y2 = y + dy * d0 / d;
  }
  return sum / n_steps;
}

namespace {

Vec hermite(const Vec& x0, const Vec& f0, const Vec& x1, const Vec& f1, double h, double s) {
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * h * f0 + (-2 * s3 + 3 * s2) * x1 +
         (s3 - s2) * h * f1;
}

}  // namespace

SimTrace pyragas_feedback(const OdeSystem& sys, const std::function<double(const Vec&)>& output,
                          double K, double tau, const Vec& x0, double T,
                          const PyragasOptions& opt) {
  if (!(tau > 0)) fail(ErrorKind::InvalidArgument, "delay tau must be > 0");
  if (!(T > 0) || !(opt.dt > 0)) fail(ErrorKind::InvalidArgument, "need T > 0 and dt > 0");
  if (sys.inputs < 1) fail(ErrorKind::InvalidArgument, "system needs an input for feedback");
  if (x0.size() != sys.dim) fail(ErrorKind::DimensionMismatch, "x0 has the wrong size");
  const int S = std::max(1, static_cast<int>(std::ceil(tau / opt.dt)));
  const double h = tau / S;
  const int steps = static_cast<int>(std::ceil(T / h));
  Vec u0 = Vec::Zero(sys.inputs);
  auto f_with = [&](double t, const Vec& x, double u) {
    u0(0) = u;
    return sys.f(t, x, u0);
  };

  std::vector<Vec> X, F;  // grid history, index 0 is t = -tau
  X.reserve(S + steps + 1);
  F.reserve(S + steps + 1);
  Vec x = x0;
  for (int k = 0; k < S; ++k) {
    Rhs fr = [&](double t, const Vec& y, Vec& dy) { dy = f_with(t, y, 0.0); };
    X.push_back(x);
    F.push_back(f_with(0, x, 0.0));
    x = rk4_step(fr, 0, x, h);
  }

  SimTrace tr;
  tr.columns.push_back("u");
  tr.columns.push_back("y");
  for (int i = 0; i < sys.dim; ++i) tr.columns.push_back("x" + std::to_string(i + 1));
  const int stride = std::max(1, steps / 4000);
  const int tail_from = steps - steps / 10;
  double mismatch = 0;
  auto delayed = [&](int i, double s) {
    // y at grid time (i - S) + s, s in [0, 1]
    int a = i - S;
    if (s == 0.0) return output(X[a]);
    if (s == 1.0) return output(X[a + 1]);
    return output(hermite(X[a], F[a], X[a + 1], F[a + 1], h, s));
  };
  for (int i = S;; ++i) {
    const double t = (i - S) * h;
    double yd = output(X[i - S]);
    double y = output(x);
    double u = K * (y - yd);
    Vec k1 = f_with(t, x, u);
    X.push_back(x);
    F.push_back(k1);
    int j = i - S;
    if (j % stride == 0 || j == steps) {
      std::vector<double> row{u, y};
      for (int c = 0; c < sys.dim; ++c) row.push_back(x(c));
      tr.add(t, row);
    }
    if (j >= tail_from) mismatch = std::max(mismatch, std::abs(y - yd));
    if (j == steps) break;
    double ydm = delayed(i, 0.5), yd1 = delayed(i, 1.0);
    Vec xa = x + 0.5 * h * k1;
    Vec k2 = f_with(t + 0.5 * h, xa, K * (output(xa) - ydm));
    Vec xb = x + 0.5 * h * k2;
    Vec k3 = f_with(t + 0.5 * h, xb, K * (output(xb) - ydm));
    Vec xc = x + h * k3;
    Vec k4 = f_with(t + h, xc, K * (output(xc) - yd1));
    x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!x.allFinite() || x.norm() > 1e8) {
      mismatch = std::numeric_limits<double>::infinity();
      tr.summary["diverged"] = 1;
      break;
    }
  }
  tr.summary["mismatch"] = mismatch;
  tr.summary["step"] = h;
  return tr;
}

namespace {

struct Crossing {
  Vec x;
  double t = 0;
};

// RK4 march until the section coordinate crosses zero downwards; the crossing
// is pinned by bisection on the last step.
class SectionWalker {
 public:
  SectionWalker(const OdeSystem& sys, int k, double h) : k_(k), h_(h) { f_ = sys.autonomous(); }

  Crossing next(Vec x, double t, double t_max, bool* ok) const {
    *ok = false;
    // Leave the section first so the start point is not reported again.
    for (int i = 0; i < 5; ++i) x = rk4_step(f_, t, x, h_), t += h_;
    while (t < t_max) {
      Vec y = rk4_step(f_, t, x, h_);
      if (x(k_) > 0 && y(k_) <= 0) {
        double lo = 0, hi = h_;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (rk4_step(f_, t, x, mid)(k_) > 0)
            lo = mid;
          else
            hi = mid;
        }
        *ok = true;
        return {rk4_step(f_, t, x, hi), t + hi};
      }
      x = y;
      t += h_;
    }
    return {x, t};
  }

 private:
  Rhs f_;
  int k_;
  double h_;
};

}  // namespace

PeriodicOrbit find_period_one_orbit(const OdeSystem& sys, const Vec& x0, int k, double transient,
                                    double horizon, double threshold) {
  if (k < 0 || k >= sys.dim) fail(ErrorKind::InvalidArgument, "section coordinate out of range");
  const double h = 1e-3;
  SectionWalker walk(sys, k, h);
  Vec x = integrate(sys.autonomous(), x0, 0, transient);
  bool ok;
  Crossing c = walk.next(x, 0, horizon, &ok);
  if (!ok) fail(ErrorKind::NonConvergence, "orbit never crosses the section");
  double best = std::numeric_limits<double>::infinity();
  Vec seed_pt = c.x;
  for (;;) {
    Crossing n = walk.next(c.x, c.t, horizon, &ok);
    if (!ok) break;
    double d = (n.x - c.x).norm();
    if (d < best) best = d, seed_pt = c.x;
    c = n;
    if (best < threshold * 1e-2) break;
  }
  // Newton on the free coordinates of the return map.
  std::vector<int> freec;
  for (int i = 0; i < sys.dim; ++i)
    if (i != k) freec.push_back(i);
  const int m = static_cast<int>(freec.size());
  auto ret = [&](const Vec& s, double* period) {
    Crossing r = walk.next(s, 0, 100, &ok);
    if (!ok) fail(ErrorKind::NonConvergence, "return map left the section");
    if (period) *period = r.t;
    return r.x;
  };
  Vec s = seed_pt;
  s(k) = 0;
  double period = 0, res = 0;
  for (int it = 0; it < 30; ++it) {
    Vec G = ret(s, &period) - s;
    Vec g(m);
    for (int a = 0; a < m; ++a) g(a) = G(freec[a]);
    res = g.norm();
    if (res < 1e-10) break;
    Mat J(m, m);
    for (int b = 0; b < m; ++b) {
      Vec sp = s;
      const double eps = 1e-7;
      sp(freec[b]) += eps;
      Vec Gp = ret(sp, nullptr) - sp;
      for (int a = 0; a < m; ++a) J(a, b) = (Gp(freec[a]) - g(a)) / eps;
    }
    Vec step = J.fullPivLu().solve(-g);
    for (int a = 0; a < m; ++a) s(freec[a]) += step(a);
  }
  if (!(res < 1e-7)) fail(ErrorKind::NonConvergence, "periodic orbit refinement did not converge");
  return {s, period, res, best};
}

namespace {

struct Flow {
  std::vector<double> t;
  std::vector<Vec> x;
  std::vector<Mat> M;
};

Flow variational_flow(const OdeSystem& sys, const Vec& x0, double t_end, int samples) {
  const int n = sys.dim;
  Rhs f = [&](double t, const Vec& s, Vec& ds) {
    Vec x = s.head(n);
    Eigen::Map<const Mat> M(s.data() + n, n, n);
    ds.resize(n + n * n);
    ds.head(n) = sys.rhs(t, x);
    Mat JM = sys.jacobian(t, x) * M;
    ds.tail(n * n) = Eigen::Map<const Vec>(JM.data(), n * n);
  };
  Vec s0(n + n * n);
  s0.head(n) = x0;
  Mat I = Mat::Identity(n, n);
  s0.tail(n * n) = Eigen::Map<const Vec>(I.data(), n * n);
  Flow fl;
  fl.t = linspace(0, t_end, samples);
  OdeOptions opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-8;
  for (const Vec& s : integrate_samples(f, s0, fl.t, opt)) {
    fl.x.push_back(s.head(n));
    fl.M.push_back(Eigen::Map<const Mat>(s.data() + n, n, n));
  }
  return fl;
}

}  // namespace

Mat variational_matrix(const OdeSystem& sys, const Vec& x0, double t) {
  if (x0.size() != sys.dim) fail(ErrorKind::DimensionMismatch, "x0 must have N entries");
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "t must be > 0");
  return variational_flow(sys, x0, t, 2).M.back();
}

CompensationResult compensatory_perturbation(const OdeSystem& sys, const Vec& x0,
                                             const Vec& target,
                                             const PerturbationConstraints& cons, int budget,
                                             double kappa, double t_check) {
  const int n = sys.dim;
  if (x0.size() != n || target.size() != n)
    fail(ErrorKind::DimensionMismatch, "x0 and target must have N entries");
  if ((cons.lower.size() && cons.lower.size() != n) || (cons.upper.size() && cons.upper.size() != n))
    fail(ErrorKind::DimensionMismatch, "bounds must have N entries");
  if (!(kappa > 0) || !(t_check > 0) || budget < 0)
    fail(ErrorKind::InvalidArgument, "need kappa > 0, t_check > 0, budget >= 0");
  Vec lo = cons.lower.size() ? cons.lower : Vec::Constant(n, -1e300);
  Vec hi = cons.upper.size() ? cons.upper : Vec::Constant(n, 1e300);
  std::vector<int> ctl(cons.control_set.begin(), cons.control_set.end());
  if (ctl.empty())
    for (int i = 0; i < n; ++i) ctl.push_back(i);
  for (int i : ctl)
    if (i < 0 || i >= n) fail(ErrorKind::InvalidArgument, "control node out of range");
  for (int i = 0; i < n; ++i)
    if (lo(i) > 0 || hi(i) < 0 || lo(i) > hi(i))
      fail(ErrorKind::InfeasibleConstraints, "bounds exclude the unperturbed state");
  const double cap = 0.1 * (target - x0).norm();
  const int m = static_cast<int>(ctl.size());

  CompensationResult res;
  Vec shift = Vec::Zero(n);
  for (int it = 0;; ++it) {
    Vec xs = x0 + shift;
    Flow fl = variational_flow(sys, xs, t_check, 2001);
    int c = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < fl.x.size(); ++k) {
      double d = (target - fl.x[k]).norm();
      if (d < best) best = d, c = static_cast<int>(k);
    }
    res.x0_new = xs;
    res.iterations = it;
    res.closest = best;
    if (best < kappa) {
      res.success = true;
      return res;
    }
    if (it == budget)
      fail(ErrorKind::NoCompensation, "no admissible perturbation found within the budget");
    Mat Msub(n, m);
    for (int a = 0; a < m; ++a) Msub.col(a) = fl.M[c].col(ctl[a]);
    Vec r = target - fl.x[c];
    Vec dlo(m), dhi(m);
    for (int a = 0; a < m; ++a) dlo(a) = lo(ctl[a]) - shift(ctl[a]), dhi(a) = hi(ctl[a]) - shift(ctl[a]);
    auto project = [&](Vec d) {
      d = d.cwiseMax(dlo).cwiseMin(dhi);
      double nd = d.norm();
      if (nd > cap) d *= cap / nd;
      return d;
    };
    double L = std::max(Msub.squaredNorm(), 1e-12);
    Vec d = Vec::Zero(m);
    for (int k = 0; k < 500; ++k) {
      Vec grad = Msub.transpose() * (Msub * d - r);
      Vec nd = project(d - grad / L);
      if ((nd - d).norm() < 1e-14) break;
      d = nd;
    }
    if (d.norm() < 1e-12)
      fail(ErrorKind::InfeasibleConstraints, "constraints block every improving perturbation");
    for (int a = 0; a < m; ++a) shift(ctl[a]) += d(a);
  }
}

bool is_fvs(const DiGraph& g, const NodeSet& s) {
  std::vector<char> removed(g.n(), 0);
  for (int v : s) removed.at(v) = 1;
  return is_acyclic(g, &removed);
}

FvsResult fvs_find(const DiGraph& g, FvsMode mode) {
  const int n = g.n();
  FvsResult r;
  std::vector<char> removed(n, 0);
  if (mode == FvsMode::Exact) {
    if (n > 15) fail(ErrorKind::InvalidArgument, "exact FVS limited to N <= 15");
    for (int k = 0; k <= n; ++k) {
      std::uint32_t s = k ? (1u << k) - 1 : 0, all = (1u << n) - 1;
      while (s <= all) {
        for (int v = 0; v < n; ++v) removed[v] = s >> v & 1;
        if (is_acyclic(g, &removed, &r.order)) {
          std::vector<int> nodes;
          for (int v = 0; v < n; ++v)
            if (removed[v]) nodes.push_back(v);
          r.nodes = nodes;
          r.minimal = r.exact = true;
          return r;
        }
        if (s == 0) break;
        std::uint32_t c = s & -s, q = s + c;
        s = (((q ^ s) >> 2) / c) | q;
      }
    }
  }
  std::vector<int> chosen;
  for (;;) {
    std::vector<std::vector<int>> adj(n);
    bool any = false;
    for (const Edge& e : g.edges()) {
      if (removed[e.src] || removed[e.dst]) continue;
      if (e.src == e.dst) {
        if (!removed[e.src]) removed[e.src] = 1, chosen.push_back(e.src), any = true;
        continue;
      }
      adj[e.src].push_back(e.dst);
    }
    if (any) continue;
    int count = 0;
    std::vector<int> comp = scc_ids(adj, &count);
    std::vector<int> size(count, 0);
    for (int v = 0; v < n; ++v)
      if (!removed[v]) ++size[comp[v]];
    std::vector<long long> din(n, 0), dout(n, 0);
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (comp[u] == comp[v]) ++dout[u], ++din[v];
    int best = -1;
    long long score = 0;
    for (int v = 0; v < n; ++v) {
      if (removed[v] || size[comp[v]] < 2) continue;
      long long sc = din[v] * dout[v];
      if (best < 0 || sc > score) best = v, score = sc;
    }
    if (best < 0) break;
    removed[best] = 1;
    chosen.push_back(best);
  }
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    removed[*it] = 0;
    if (!is_acyclic(g, &removed)) removed[*it] = 1;
  }
  std::vector<int> nodes;
  for (int v = 0; v < n; ++v)
    if (removed[v]) nodes.push_back(v);
  r.nodes = nodes;
  if (!is_acyclic(g, &removed, &r.order))
    fail(ErrorKind::InvalidArgument, "feedback vertex set certificate failed");
  r.minimal = true;
  r.exact = false;
  return r;
}

namespace {

Vec interp(const std::vector<double>& ts, const std::vector<Vec>& xs, double t) {
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return xs.front();
  if (it == ts.end()) return xs.back();
  size_t j = it - ts.begin();
  double a = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
  return (1 - a) * xs[j - 1] + a * xs[j];
}

}  // namespace

SimTrace fvs_clamp(const OdeSystem& sys, const NodeSet& fvs, const Vec& x0,
                   const std::vector<double>& times, const std::vector<Vec>& target, double T,
                   int substeps) {
  const int n = sys.dim;
  if (x0.size() != n) fail(ErrorKind::DimensionMismatch, "x0 has the wrong size");
  if (!(T > 0) || substeps < 1) fail(ErrorKind::InvalidArgument, "need T > 0 and substeps >= 1");
  for (int v : fvs)
    if (v < 0 || v >= n) fail(ErrorKind::InvalidArgument, "clamped node out of range");
  if (times.size() != target.size())
    fail(ErrorKind::DimensionMismatch, "one target state per sample time");
  for (const Vec& v : target)
    if (v.size() != n) fail(ErrorKind::DimensionMismatch, "target states must have N entries");
  if (times.empty() || times.front() > 0 || times.back() < T)
    fail(ErrorKind::MissingTrajectory, "target trajectory must cover [0, T]");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      fail(ErrorKind::InvalidArgument, "sample times must increase");

  std::vector<double> grid{0.0};
  for (double t : times)
    if (t > 0 && t < T) grid.push_back(t);
  grid.push_back(T);
  auto clamp_at = [&](Vec& x, double t) {
    auto it = std::find(times.begin(), times.end(), t);
    Vec v = it != times.end() ? target[it - times.begin()] : interp(times, target, t);
    for (int c : fvs) x(c) = v(c);
  };
  SimTrace tr;
  for (int i = 0; i < n; ++i) tr.columns.push_back("x" + std::to_string(i + 1));
  Vec x = x0;
  clamp_at(x, 0.0);
  tr.add(0.0, std::vector<double>(x.data(), x.data() + n));
  for (size_t g = 1; g < grid.size(); ++g) {
    const double a = grid[g - 1], b = grid[g], h = (b - a) / substeps;
    Vec slope = (interp(times, target, b) - interp(times, target, a)) / (b - a);
    Rhs f = [&](double t, const Vec& y, Vec& dy) {
      Vec z = y;
      clamp_at(z, t);
      dy = sys.rhs(t, z);
      for (int c : fvs) dy(c) = slope(c);
    };
    for (int s = 0; s < substeps; ++s) {
      double t = a + s * h;
      x = rk4_step(f, t, x, h);
      clamp_at(x, s + 1 == substeps ? b : t + h);
    }
    tr.add(b, std::vector<double>(x.data(), x.data() + n));
  }
  tr.summary["terminal_distance"] = (x - interp(times, target, T)).norm();
  return tr;
}

std::vector<Vec> find_stable_states(const OdeSystem& sys, const std::vector<Vec>& starts,
                                    double T, double tol) {
  std::vector<Vec> out;
  Rhs f = sys.autonomous();
  for (const Vec& s : starts) {
    Vec e = integrate(f, s, 0, T);
    if (sys.rhs(T, e).norm() > 1e-3) continue;  // not settled
    // Newton polish; the integrator leaves residuals near its tolerance.
    for (int it = 0; it < 20; ++it) {
      Vec d = sys.rhs(T, e);
      if (d.norm() < 1e-13) break;
      e -= sys.jacobian(T, e).fullPivLu().solve(d);
    }
    if (!(sys.rhs(T, e).norm() <= 1e-9)) continue;
    // Saddles reached along their stable manifold are dropped.
    Eigen::EigenSolver<Mat> es(sys.jacobian(T, e), false);
    if (es.eigenvalues().real().maxCoeff() >= 0) continue;
    bool seen = false;
    for (const Vec& o : out)
      if ((o - e).norm() < tol) seen = true;
    if (!seen) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
  return out;
}

}  // namespace netctl
