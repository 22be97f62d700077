#include "netctl/collective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "netctl/error.hpp"
#include "netctl/stats.hpp"

namespace netctl {

namespace {

constexpr double kPi = std::numbers::pi;

void check_row_sums(const Mat& G, const char* what) {
  if (G.rows() != G.cols() || G.rows() == 0)
    fail(ErrorKind::DimensionMismatch, std::string(what) + " must be square and nonempty");
  double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  if (G.rowwise().sum().cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorKind::InvalidArgument, std::string(what) + " must have zero row sums");
}

std::vector<cplx> sorted_spectrum(const Mat& M) {
  std::vector<cplx> ev;
  if (M.isApprox(M.transpose(), 1e-14)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
    for (int i = 0; i < M.rows(); ++i) ev.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Mat> es(M, false);
    for (int i = 0; i < M.rows(); ++i) ev.push_back(es.eigenvalues()(i));
  }
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

}  // namespace

Mat laplacian(const UnGraph& g) { return laplacian_matrix(g); }

Mat laplacian(const DiGraph& g) {
  Mat L = -adjacency_matrix(g);
  L.diagonal().setZero();
  for (int i = 0; i < g.n(); ++i) L(i, i) = -L.row(i).sum();
  return L;
}

EigenRatio msf_eigenratio(const Mat& Lap) {
  check_row_sums(Lap, "Laplacian");
  EigenRatio r;
  r.spectrum = sorted_spectrum(Lap);
  if (r.spectrum.size() < 2) fail(ErrorKind::DisconnectedGraph, "need at least two nodes");
  r.lambda2 = r.spectrum[1].real();
  r.lambda_n = r.spectrum.back().real();
  if (!(r.lambda2 > 1e-9 * std::max(1.0, std::abs(r.lambda_n))))
    fail(ErrorKind::DisconnectedGraph, "second Laplacian eigenvalue is zero");
  r.ratio = r.lambda_n / r.lambda2;
  return r;
}

EigenRatio msf_eigenratio(const UnGraph& g) {
  int count = 0;
  connected_components(g, &count);
  if (count != 1) fail(ErrorKind::DisconnectedGraph, "graph is not connected");
  return msf_eigenratio(laplacian(g));
}

EigenRatio msf_eigenratio(const DiGraph& g) { return msf_eigenratio(laplacian(g)); }

namespace {

void check_pinning(const PinningConfig& cfg) {
  check_row_sums(cfg.G, "coupling matrix");
  const int n = static_cast<int>(cfg.G.rows());
  if (cfg.pinned.empty()) fail(ErrorKind::NoPinnedNodes, "no pinned nodes");
  if (cfg.kappa.size() != 1 && static_cast<int>(cfg.kappa.size()) != n)
    fail(ErrorKind::DimensionMismatch, "kappa needs one entry or one per node");
  for (int v : cfg.pinned) {
    if (v < 0 || v >= n) fail(ErrorKind::InvalidArgument, "pinned node out of range");
    if (!(cfg.gain(v) > 0)) fail(ErrorKind::InvalidArgument, "pinned gains must be > 0");
  }
}

}  // namespace

Mat pinning_matrix(const PinningConfig& cfg) {
  check_pinning(cfg);
  const int n = static_cast<int>(cfg.G.rows());
  Mat M = Mat::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = cfg.G;
  for (int v : cfg.pinned) {
    M(v, v) += cfg.gain(v);
    M(v, n) = -cfg.gain(v);
  }
  return M;
}

EigenRatio pinning_eigenratio(const PinningConfig& cfg) {
  Mat M = pinning_matrix(cfg);
  const int n = static_cast<int>(cfg.G.rows());
  // The virtual row is zero, so the spectrum is {0} plus that of the state block.
  EigenRatio r;
  r.spectrum = sorted_spectrum(M.topLeftCorner(n, n));
  r.spectrum.insert(r.spectrum.begin(), cplx(0.0, 0.0));
  r.lambda2 = r.spectrum[1].real();
  r.lambda_n = r.spectrum.back().real();
  if (!(r.lambda2 > 1e-12 * std::max(1.0, r.lambda_n)))
    fail(ErrorKind::NoPinnedNodes, "a component has no pinned node, eigenratio undefined");
  r.ratio = r.lambda_n / r.lambda2;
  return r;
}

NodeSet pin_by_degree(const UnGraph& g, int count) {
  std::vector<int> idx(g.n());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  idx.resize(std::clamp(count, 0, g.n()));
  return make_node_set(idx);
}

NodeSet pin_random(int n, int count, Rng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::clamp(count, 0, n));
  return make_node_set(idx);
}

SimTrace pinning_sync_simulate(const PinningConfig& cfg, const OdeSystem& osc, const Mat& H,
                               const Vec& s0, const SyncOptions& opt) {
  check_row_sums(cfg.G, "coupling matrix");
  const int n = static_cast<int>(cfg.G.rows());
  const int d = osc.dim;
  if (H.rows() != d || H.cols() != d || s0.size() != d)
    fail(ErrorKind::DimensionMismatch, "output map and reference must match the oscillator");
  if (cfg.kappa.size() != 1 && static_cast<int>(cfg.kappa.size()) != n)
    fail(ErrorKind::DimensionMismatch, "kappa needs one entry or one per node");
  if (opt.adaptive && opt.q.size() != 1 && static_cast<int>(opt.q.size()) != n)
    fail(ErrorKind::DimensionMismatch, "q needs one entry or one per node");
  if (!(opt.T > 0) || opt.samples < 2) fail(ErrorKind::InvalidArgument, "need T > 0, samples >= 2");
  const std::vector<int> pins(cfg.pinned.begin(), cfg.pinned.end());
  for (int v : pins)
    if (v < 0 || v >= n) fail(ErrorKind::InvalidArgument, "pinned node out of range");
  const int P = static_cast<int>(pins.size());
  const int dim = n * d + d + P;
  auto qv = [&](int i) { return opt.q.size() == 1 ? opt.q[0] : opt.q[i]; };

  Rhs f = [&](double t, const Vec& z, Vec& dz) {
    dz.resize(dim);
    Eigen::Map<const Mat> X(z.data(), d, n);
    Vec s = z.segment(n * d, d);
    Mat C = H * X * cfg.G.transpose();  // column i: sum_j g_ij H x_j
    for (int i = 0; i < n; ++i)
      dz.segment(i * d, d) = osc.rhs(t, X.col(i)) - cfg.sigma * C.col(i);
    for (int k = 0; k < P; ++k) {
      int i = pins[k];
      double kap = z(n * d + d + k);
      dz.segment(i * d, d) += cfg.sigma * kap * H * (s - X.col(i));
      dz(n * d + d + k) = opt.adaptive ? qv(i) * (X.col(i) - s).norm() : 0.0;
    }
    dz.segment(n * d, d) = osc.rhs(t, s);
  };

  Vec z0(dim);
  Rng rng = make_rng(opt.seed, 7);
  std::uniform_real_distribution<double> off(-opt.spread, opt.spread);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) z0(i * d + c) = s0(c) + off(rng);
  z0.segment(n * d, d) = s0;
  for (int k = 0; k < P; ++k) z0(n * d + d + k) = cfg.gain(pins[k]);

  auto times = linspace(0, opt.T, opt.samples);
  auto zs = integrate_samples(f, z0, times, {});
  SimTrace tr;
  tr.columns = {"e", "kappa_min", "kappa_max"};
  for (size_t k = 0; k < times.size(); ++k) {
    const Vec& z = zs[k];
    double e = 0;
    for (int i = 0; i < n; ++i) e = std::max(e, (z.segment(i * d, d) - z.segment(n * d, d)).norm());
    double kmin = P ? std::numeric_limits<double>::infinity() : 0, kmax = 0;
    for (int j = 0; j < P; ++j) {
      kmin = std::min(kmin, z(n * d + d + j));
      kmax = std::max(kmax, z(n * d + d + j));
    }
    tr.add(times[k], {e, kmin, kmax});
  }
  tr.summary["final_error"] = tr.rows.back()[0];
  if (opt.adaptive)
    for (int j = 0; j < P; ++j)
      tr.summary["kappa_final_" + std::to_string(pins[j])] = zs.back()(n * d + d + j);
  return tr;
}

namespace {

double wrap_angle(double a) {
  a = std::remainder(a, 2 * kPi);  // [-pi, pi]
  return a <= -kPi ? a + 2 * kPi : a;
}

double wrap_pos(double v, double L) {
  v = std::fmod(v, L);
  if (v < 0) v += L;
  return v >= L ? 0.0 : v;
}

double periodic_d2(double dx, double dy, double L) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  dx = std::min(dx, L - dx);
  dy = std::min(dy, L - dy);
  return dx * dx + dy * dy;
}

// Cell lists with cell side >= r; falls back to all pairs for small boxes.
class NeighborGrid {
 public:
  NeighborGrid(const std::vector<double>& x, const std::vector<double>& y, double L, double r)
      : x_(x), y_(y), L_(L), r2_(r * r) {
    cells_ = r > 0 ? static_cast<int>(std::floor(L / r)) : 0;
    if (cells_ < 3) {
      cells_ = 0;
      return;
    }
    head_.assign(cells_ * cells_, -1);
    next_.assign(x.size(), -1);
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
      int c = cell(i);
      next_[i] = head_[c];
      head_[c] = i;
    }
  }

  template <class F>
  void for_each(double px, double py, F&& fn) const {
    if (r2_ == 0) return;
    if (cells_ == 0) {
      for (size_t j = 0; j < x_.size(); ++j)
        if (periodic_d2(px - x_[j], py - y_[j], L_) <= r2_) fn(static_cast<int>(j));
      return;
    }
    int cx = coord(px), cy = coord(py);
    for (int ox = -1; ox <= 1; ++ox)
      for (int oy = -1; oy <= 1; ++oy) {
        int c = ((cx + ox + cells_) % cells_) * cells_ + (cy + oy + cells_) % cells_;
        for (int j = head_[c]; j >= 0; j = next_[j])
          if (periodic_d2(px - x_[j], py - y_[j], L_) <= r2_) fn(j);
      }
  }

 private:
  int coord(double v) const { return std::min(cells_ - 1, static_cast<int>(v / L_ * cells_)); }
  int cell(int i) const { return coord(x_[i]) * cells_ + coord(y_[i]); }

  const std::vector<double>& x_;
  const std::vector<double>& y_;
  double L_, r2_;
  int cells_ = 0;
  std::vector<int> head_, next_;
};

void check_vicsek(const VicsekParams& p) {
  if (p.n < 1 || !(p.L > 0) || !(p.r >= 0) || !(p.v0 >= 0) || !(p.eta >= 0))
    fail(ErrorKind::InvalidArgument, "need n >= 1, L > 0, r >= 0, v0 >= 0, eta >= 0");
}

}  // namespace

VicsekState vicsek_init(const VicsekParams& p) {
  check_vicsek(p);
  VicsekState s;
  s.p = p;
  s.x.resize(p.n);
  s.y.resize(p.n);
  s.theta.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    s.x[i] = counter_uniform(p.seed, 0, i, 0) * p.L;
    s.y[i] = counter_uniform(p.seed, 0, i, 1) * p.L;
    s.theta[i] = wrap_angle((2 * counter_uniform(p.seed, 0, i, 2) - 1) * kPi);
  }
  return s;
}

std::vector<int> vicsek_neighbors(const VicsekState& s, int i) {
  std::vector<int> out;
  NeighborGrid grid(s.x, s.y, s.p.L, s.p.r);
  grid.for_each(s.x[i], s.y[i], [&](int j) { out.push_back(j); });
  if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

VicsekState vicsek_step(const VicsekState& s) {
  const auto& p = s.p;
  const int n = static_cast<int>(s.x.size());
  NeighborGrid grid(s.x, s.y, p.L, p.r);
  VicsekState o = s;
  o.step = s.step + 1;
  for (int i = 0; i < n; ++i) {
    double sn = std::sin(s.theta[i]), cs = std::cos(s.theta[i]);
    grid.for_each(s.x[i], s.y[i], [&](int j) {
      if (j == i) return;
      sn += std::sin(s.theta[j]);
      cs += std::cos(s.theta[j]);
    });
    double noise = p.eta * (counter_uniform(p.seed, o.step, i, 3) - 0.5);
    double th = wrap_angle(std::atan2(sn, cs) + noise);
    o.theta[i] = th;
    o.x[i] = wrap_pos(s.x[i] + p.v0 * std::cos(th), p.L);
    o.y[i] = wrap_pos(s.y[i] + p.v0 * std::sin(th), p.L);
  }
  return o;
}

double vicsek_phi(const VicsekState& s) {
  double sx = 0, sy = 0;
  for (double t : s.theta) sx += std::cos(t), sy += std::sin(t);
  return std::min(1.0, std::hypot(sx, sy) / static_cast<double>(s.theta.size()));
}

OrderParameter vicsek_order_parameter(const VicsekParams& p, int steps, int transient) {
  if (steps < 1) fail(ErrorKind::InvalidArgument, "steps must be >= 1");
  if (transient < 0) transient = steps / 2;
  if (transient >= steps) fail(ErrorKind::InvalidArgument, "transient must be shorter than the run");
  VicsekState s = vicsek_init(p);
  OrderParameter r;
  r.trace.columns = {"phi"};
  std::vector<double> kept;
  r.trace.add(0, {vicsek_phi(s)});
  for (int t = 1; t <= steps; ++t) {
    s = vicsek_step(s);
    double phi = vicsek_phi(s);
    r.trace.add(t, {phi});
    if (t > transient) kept.push_back(phi);
  }
  const int batches = std::min<int>(10, static_cast<int>(kept.size()));
  std::vector<double> bm(batches, 0.0);
  for (size_t k = 0; k < kept.size(); ++k) bm[k * batches / kept.size()] += kept[k];
  for (int b = 0; b < batches; ++b) {
    size_t lo = (b * kept.size() + batches - 1) / batches;
    size_t hi = ((b + 1) * kept.size() + batches - 1) / batches;
    bm[b] /= static_cast<double>(hi - lo);
  }
  MeanErr all = mean_stderr(kept);
  r.mean = all.mean;
  r.stderr_ = mean_stderr(bm).stderr_;
  r.trace.summary["mean"] = r.mean;
  r.trace.summary["stderr"] = r.stderr_;
  return r;
}

SimTrace vicsek_leader_run(const VicsekParams& p, double theta0, int steps, bool leader) {
  if (steps < 0) fail(ErrorKind::InvalidArgument, "steps must be >= 0");
  VicsekState s = vicsek_init(p);
  const int n = p.n;
  double lx = counter_uniform(p.seed, 0, n, 0) * p.L, ly = counter_uniform(p.seed, 0, n, 1) * p.L;
  std::vector<double> th = s.theta;  // unwrapped scalar headings
  SimTrace tr;
  tr.columns = {"max_dev", "spread"};
  auto record = [&](long t) {
    double dev = 0, lo = th[0], hi = th[0];
    for (double v : th) {
      dev = std::max(dev, std::abs(v - theta0));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    tr.add(static_cast<double>(t), {dev, hi - lo});
  };
  record(0);
  const double r2 = p.r * p.r;
  for (int t = 1; t <= steps; ++t) {
    NeighborGrid grid(s.x, s.y, p.L, p.r);
    std::vector<double> nt(n);
    for (int i = 0; i < n; ++i) {
      double sum = th[i];
      int k = 0;
      grid.for_each(s.x[i], s.y[i], [&](int j) {
        if (j == i) return;
        sum += th[j];
        ++k;
      });
      int b = leader && r2 > 0 && periodic_d2(s.x[i] - lx, s.y[i] - ly, p.L) <= r2 ? 1 : 0;
      sum += b * theta0;
      double noise = p.eta > 0 ? p.eta * (counter_uniform(p.seed, t, i, 3) - 0.5) : 0.0;
      nt[i] = sum / (1 + k + b) + noise;
    }
    th = nt;
    for (int i = 0; i < n; ++i) {
      s.x[i] = wrap_pos(s.x[i] + p.v0 * std::cos(th[i]), p.L);
      s.y[i] = wrap_pos(s.y[i] + p.v0 * std::sin(th[i]), p.L);
    }
    lx = wrap_pos(lx + p.v0 * std::cos(theta0), p.L);
    ly = wrap_pos(ly + p.v0 * std::sin(theta0), p.L);
    record(t);
  }
  tr.summary["final_max_dev"] = tr.rows.back()[0];
  return tr;
}

}  // namespace netctl
