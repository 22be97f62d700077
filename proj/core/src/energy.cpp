#include "netctl/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "netctl/error.hpp"
#include "netctl/stats.hpp"

namespace netctl {

Mat expm(const Mat& M) { return M.exp(); }

namespace {

Mat sym(const Mat& M) { return 0.5 * (M + M.transpose()); }

void check_time(double T) {
  if (!(T > 0) || !std::isfinite(T)) fail(ErrorKind::InvalidArgument, "horizon T must be > 0");
}

bool singular(const Eigen::VectorXd& ev) {
  const int n = static_cast<int>(ev.size());
  double top = std::max(std::abs(ev(n - 1)), std::numeric_limits<double>::min());
  return ev(0) <= n * std::numeric_limits<double>::epsilon() * top;
}

}  // namespace

namespace {

// int_0^T e^{At} Q e^{A^T t} dt. Van Loan on a short interval, then doubling
// W(2t) = W(t) + e^{At} W(t) e^{A^T t}, which avoids the growing e^{-At} block.
Mat integral_gramian(const Mat& A, const Mat& Q, double T) {
  const int n = static_cast<int>(A.rows());
  double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int k = 0;
  if (norm * T > 0.5) k = static_cast<int>(std::ceil(std::log2(norm * T / 0.5)));
  const double t0 = std::ldexp(T, -k);
  Mat C = Mat::Zero(2 * n, 2 * n);
  C.topLeftCorner(n, n) = -A;
  C.topRightCorner(n, n) = Q;
  C.bottomRightCorner(n, n) = A.transpose();
  Mat F = expm(C * t0);
  Mat W = sym(F.bottomRightCorner(n, n).transpose() * F.topRightCorner(n, n));
  Mat E = F.bottomRightCorner(n, n).transpose();  // e^{A t0}
  for (int i = 0; i < k; ++i) {
    W = sym(W + E * W * E.transpose());
    E = E * E;
  }
  return W;
}

}  // namespace

GramianResult gramian(const DenseSystem& sys, double T) {
  sys.validate(true, false);
  check_time(T);
  const int n = sys.n();
  Mat Q = sys.B * sys.B.transpose();
  GramianResult r;
  r.W = integral_gramian(sys.A, Q, T);
  // e^{-AT} W e^{-A^T T} is the Gramian of (-A, B).
  r.H = integral_gramian(-sys.A, Q, T);
  Eigen::SelfAdjointEigenSolver<Mat> ew(r.W, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> eh(r.H, Eigen::EigenvaluesOnly);
  r.w = ew.eigenvalues();
  r.eta = eh.eigenvalues();
  r.cond = r.w(0) > 0 ? r.w(n - 1) / r.w(0) : std::numeric_limits<double>::infinity();
  r.ill_conditioned = !(r.cond <= 1e12);
  return r;
}

namespace {

Vec solve_w(const GramianResult& g, const Vec& v) {
  if (singular(g.w)) fail(ErrorKind::SingularGramian, "controllability Gramian is singular");
  Eigen::LDLT<Mat> ldlt(g.W);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    fail(ErrorKind::SingularGramian, "controllability Gramian is not positive definite");
  return ldlt.solve(v);
}

void check_states(const DenseSystem& sys, const Vec& xi, const Vec& xf) {
  if (xi.size() != sys.n() || xf.size() != sys.n())
    fail(ErrorKind::DimensionMismatch, "state vectors must have N entries");
}

}  // namespace

double control_energy(const DenseSystem& sys, const Vec& xi, const Vec& xf, double T) {
  check_states(sys, xi, xf);
  GramianResult g = gramian(sys, T);
  Vec vf = xf - expm(sys.A * T) * xi;
  return vf.dot(solve_w(g, vf));
}

MinEnergyResult min_energy_input(const DenseSystem& sys, const Vec& xi, const Vec& xf, double T,
                                 int n_steps) {
  check_states(sys, xi, xf);
  if (n_steps < 1) fail(ErrorKind::InvalidArgument, "n_steps must be >= 1");
  GramianResult g = gramian(sys, T);
  const int n = sys.n();
  const int m = static_cast<int>(sys.B.cols());
  Vec vf = xf - expm(sys.A * T) * xi;
  Vec lambda = solve_w(g, vf);

  // Joint flow of state and costate: x' = A x + B B^T p, p' = -A^T p.
  Mat M = Mat::Zero(2 * n, 2 * n);
  M.topLeftCorner(n, n) = sys.A;
  M.topRightCorner(n, n) = sys.B * sys.B.transpose();
  M.bottomRightCorner(n, n) = -sys.A.transpose();
  const double h = T / n_steps;
  Mat step = expm(M * h);

  Vec z(2 * n);
  z.head(n) = xi;
  z.tail(n) = expm(sys.A.transpose() * T) * lambda;

  MinEnergyResult r;
  r.ill_conditioned = g.ill_conditioned;
  r.energy = vf.dot(lambda);
  for (int j = 0; j < m; ++j) r.trace.columns.push_back("u" + std::to_string(j + 1));
  for (int i = 0; i < n; ++i) r.trace.columns.push_back("x" + std::to_string(i + 1));
  std::vector<double> row(m + n);
  double prev = 0;
  for (int k = 0; k <= n_steps; ++k) {
    if (k > 0) z = step * z;
    Vec u = sys.B.transpose() * z.tail(n);
    for (int j = 0; j < m; ++j) row[j] = u(j);
    for (int i = 0; i < n; ++i) row[m + i] = z(i);
    r.trace.add(k * h, row);
    double u2 = u.squaredNorm();
    if (k > 0) r.energy_quad += 0.5 * h * (prev + u2);
    prev = u2;
  }
  r.x_final = z.head(n);
  r.trace.summary["energy"] = r.energy;
  r.trace.summary["energy_quadrature"] = r.energy_quad;
  r.trace.summary["terminal_error"] = (r.x_final - xf).norm();
  return r;
}

EnergyBounds energy_bounds(const DenseSystem& sys, double T) {
  GramianResult g = gramian(sys, T);
  const int n = sys.n();
  EnergyBounds b;
  b.e_min = 1.0 / g.eta(n - 1);
  if (singular(g.eta)) {
    b.e_max = std::numeric_limits<double>::infinity();
    b.e_max_infinite = true;
  } else {
    b.e_max = 1.0 / g.eta(0);
  }
  return b;
}

EnergySpectrum energy_spectrum(const DenseSystem& sys, double T, SpectrumMode mode, int bins) {
  if (bins < 1) fail(ErrorKind::InvalidArgument, "bins must be >= 1");
  GramianResult g = gramian(sys, T);
  const Mat& G = mode == SpectrumMode::Reach ? g.W : g.H;
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  Eigen::VectorXd ev = es.eigenvalues();
  if (singular(ev)) fail(ErrorKind::SingularGramian, "Gramian is singular, spectrum undefined");
  const int n = sys.n();
  EnergySpectrum s;
  s.directions = Mat(n, n);
  // Largest eigenvalue first so energies ascend.
  for (int i = 0; i < n; ++i) {
    s.energies.push_back(1.0 / ev(n - 1 - i));
    s.directions.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  double lo = std::log(s.energies.front()), hi = std::log(s.energies.back());
  if (hi - lo < 1e-12) {
    s.bin_center.push_back(s.energies.front());
    s.density.push_back(1.0);
    return s;
  }
  const double width = (hi - lo) / bins;
  std::vector<int> count(bins, 0);
  for (double e : s.energies) {
    int b = std::min(bins - 1, static_cast<int>((std::log(e) - lo) / width));
    ++count[b];
  }
  for (int b = 0; b < bins; ++b) {
    double a = std::exp(lo + b * width), c = std::exp(lo + (b + 1) * width);
    s.bin_center.push_back(std::sqrt(a * c));
    s.density.push_back(count[b] / (static_cast<double>(n) * (c - a)));
  }
  const double median = s.energies[n / 2];
  std::vector<double> x, y;
  for (int b = 0; b < bins; ++b)
    if (s.bin_center[b] >= median) x.push_back(s.bin_center[b]), y.push_back(s.density[b]);
  s.tail_slope = fit_loglog(x, y).slope;
  return s;
}

}  // namespace netctl
