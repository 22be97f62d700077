#include "netctl/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "netctl/error.hpp"
#include "netctl/rng.hpp"

namespace netctl {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

bool is_symmetric(const Mat& A) {
  if (A.rows() != A.cols()) return false;
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

// Singular values (descending) from the Hermitian dilation [[0, M], [M*, 0]].
// Its symmetric tridiagonal solve is backward stable, so each sigma carries an
// absolute error of order eps * ||M||.
template <class MatT>
Eigen::VectorXd singular_values(const MatT& M) {
  const Eigen::Index r = M.rows(), c = M.cols();
  const Eigen::Index k = std::min(r, c);
  if (k == 0) return Eigen::VectorXd();
  MatT J = MatT::Zero(r + c, r + c);
  J.topRightCorner(r, c) = M;
  J.bottomLeftCorner(c, r) = M.adjoint();
  Eigen::SelfAdjointEigenSolver<MatT> es(J, Eigen::EigenvaluesOnly);
  Eigen::VectorXd sv = es.eigenvalues().reverse().head(k).cwiseMax(0.0);
  return sv;
}

double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  return singular_values(A)(0);
}

int rank_with_tol(const Eigen::VectorXd& sv, double tol) {
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > tol;
  return r;
}

// Rank of (A - lambda I) [| B], real arithmetic when lambda is real.
int shifted_rank(const Mat& A, cplx lambda, const Mat* B, double tol) {
  const Eigen::Index n = A.rows();
  const Eigen::Index k = B ? B->cols() : 0;
  if (std::abs(lambda.imag()) <= tol) {
    Mat M(n, n + k);
    M.leftCols(n) = A - lambda.real() * Mat::Identity(n, n);
    if (k) M.rightCols(k) = *B;
    return rank_with_tol(singular_values(M), tol);
  }
  CMat M(n, n + k);
  M.leftCols(n) = A.cast<cplx>() - lambda * CMat::Identity(n, n);
  if (k) M.rightCols(k) = B->cast<cplx>();
  return rank_with_tol(singular_values(M), tol);
}

std::vector<cplx> eigenvalues_of(const Mat& A, bool symmetric) {
  std::vector<cplx> ev;
  if (A.rows() == 0) return ev;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < A.rows(); ++i) ev.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Mat> es(A, false);
    for (Eigen::Index i = 0; i < A.rows(); ++i) ev.push_back(es.eigenvalues()(i));
  }
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

struct Cluster {
  cplx centroid;
  int size;
};

// Union-find on pairs closer than tol.
std::vector<Cluster> cluster(const std::vector<cplx>& ev, double tol) {
  const int n = static_cast<int>(ev.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // ev is sorted by real part, so only a window needs checking.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n && ev[j].real() - ev[i].real() <= tol; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol) parent[find(i)] = find(j);
  std::vector<Cluster> out;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({0.0, 0});
    }
    out[slot[r]].centroid += ev[i];
    out[slot[r]].size += 1;
  }
  for (auto& c : out) c.centroid /= static_cast<double>(c.size);
  return out;
}

// Rows of M that are linear combinations of the preceding rows, scanning in
// index order (modified Gram-Schmidt with one reorthogonalization pass).
template <class MatT>
NodeSet dependent_rows(const MatT& M, double tol) {
  using Scalar = typename MatT::Scalar;
  using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  std::vector<RowVec> basis;
  NodeSet dep;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    RowVec r = M.row(i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= (r * q.adjoint())(0, 0) * q;
    double nr = r.norm();
    if (nr <= tol) {
      dep.push_back(static_cast<int>(i));
    } else {
      basis.push_back(r / nr);
    }
  }
  return dep;
}

struct Spectrum {
  double tol = 0;
  std::vector<cplx> ev;
  std::vector<Cluster> clusters;
  bool symmetric = false;
};

Spectrum spectrum(const Mat& A) {
  Spectrum s;
  s.symmetric = is_symmetric(A);
  s.tol = 1e-8 * std::max(1.0, spectral_norm(A));
  s.ev = eigenvalues_of(A, s.symmetric);
  s.clusters = cluster(s.ev, s.tol);
  return s;
}

}  // namespace

void DenseSystem::validate(bool need_b, bool need_c) const {
  if (A.rows() != A.cols()) fail(ErrorKind::DimensionMismatch, "A must be square");
  if (!A.allFinite()) fail(ErrorKind::InvalidArgument, "A has non-finite entries");
  if (need_b || B.size() > 0) {
    if (B.rows() != A.rows()) fail(ErrorKind::DimensionMismatch, "B rows must equal N");
    if (!B.allFinite()) fail(ErrorKind::InvalidArgument, "B has non-finite entries");
  }
  if (need_c || C.size() > 0) {
    if (C.cols() != A.rows()) fail(ErrorKind::DimensionMismatch, "C columns must equal N");
    if (!C.allFinite()) fail(ErrorKind::InvalidArgument, "C has non-finite entries");
  }
}

Mat adjacency_matrix(const DiGraph& g) {
  Mat A = Mat::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) A(e.dst, e.src) = e.weight;
  return A;
}

Mat adjacency_matrix(const UnGraph& g) {
  Mat A = Mat::Zero(g.n(), g.n());
  for (auto [u, v] : g.edges()) A(u, v) = A(v, u) = 1.0;
  return A;
}

Mat laplacian_matrix(const UnGraph& g) {
  Mat L = -adjacency_matrix(g);
  for (int i = 0; i < g.n(); ++i) L(i, i) = -L.row(i).sum();
  return L;
}

Mat input_matrix(int n, const NodeSet& drivers) {
  Mat B = Mat::Zero(n, static_cast<Eigen::Index>(drivers.size()));
  for (size_t j = 0; j < drivers.size(); ++j) {
    if (drivers[j] < 0 || drivers[j] >= n) fail(ErrorKind::InvalidArgument, "driver out of range");
    B(drivers[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return B;
}

Mat kalman_matrix(const Mat& A, const Mat& B) {
  const Eigen::Index n = A.rows(), m = B.cols();
  Mat K(n, n * m);
  Mat block = B;
  for (Eigen::Index k = 0; k < n; ++k) {
    K.middleCols(k * m, m) = block;
    block = A * block;
    // Column scaling leaves the rank unchanged and keeps powers bounded.
    double s = block.cwiseAbs().maxCoeff();
    if (s > 0) block /= s;
  }
  return K;
}

int numeric_rank(const Mat& M, double tol) {
  if (M.size() == 0) return 0;
  Eigen::VectorXd sv = singular_values(M);
  if (tol < 0)
    tol = static_cast<double>(std::max(M.rows(), M.cols())) *
          std::numeric_limits<double>::epsilon() * sv(0);
  return rank_with_tol(sv, tol);
}

KalmanResult kalman_rank(const DenseSystem& sys) {
  sys.validate(true, false);
  KalmanResult r;
  const int n = sys.n();
  if (n > 50) {
    r.used_pbh = true;
    r.rank = -1;
    r.controllable = pbh_controllable(sys.A, sys.B);
    return r;
  }
  Mat K = kalman_matrix(sys.A, sys.B);
  if (K.size() == 0) {
    r.rank = 0;
    r.controllable = n == 0;
    return r;
  }
  Eigen::VectorXd sv = singular_values(K);
  double tol = n * std::numeric_limits<double>::epsilon() * sv(0);
  r.rank = rank_with_tol(sv, tol);
  r.controllable = r.rank == n;
  return r;
}

EigenStructure eigen_table(const Mat& A) {
  if (A.rows() != A.cols()) fail(ErrorKind::DimensionMismatch, "A must be square");
  Spectrum s = spectrum(A);
  EigenStructure es;
  es.eigenvalues = s.ev;
  es.symmetric = s.symmetric;
  const int n = static_cast<int>(A.rows());
  for (const auto& c : s.clusters) {
    EigenCluster ec;
    ec.lambda = c.centroid;
    ec.algebraic = c.size;
    ec.geometric = n - shifted_rank(A, c.centroid, nullptr, s.tol);
    es.clusters.push_back(ec);
  }
  return es;
}

PbhResult pbh_min_drivers(const Mat& A, bool want_drivers) {
  if (A.rows() != A.cols()) fail(ErrorKind::DimensionMismatch, "A must be square");
  PbhResult r;
  const int n = static_cast<int>(A.rows());
  if (n == 0) return r;
  Spectrum s = spectrum(A);

  // Repeated clusters, plus the distinct diagonal entries: defective
  // eigenvalues split far beyond the cluster tolerance, and structural
  // multiplicities in weighted networks sit at the self-loop values.
  std::vector<cplx> cand;
  for (const auto& c : s.clusters)
    if (c.size >= 2) cand.push_back(c.centroid);
  std::vector<double> diag(A.diagonal().data(), A.diagonal().data() + n);
  std::sort(diag.begin(), diag.end());
  for (size_t i = 0; i < diag.size(); ++i) {
    if (i > 0 && diag[i] - diag[i - 1] <= s.tol) continue;
    bool dup = false;
    for (const auto& c : cand) dup = dup || std::abs(c - cplx(diag[i], 0)) <= s.tol;
    if (!dup) cand.emplace_back(diag[i], 0.0);
  }
  r.mu_max = 0;
  r.lambda_max = s.ev.front();
  for (const auto& lam : cand) {
    int mu = n - shifted_rank(A, lam, nullptr, s.tol);
    if (mu > r.mu_max) {
      r.mu_max = mu;
      r.lambda_max = lam;
    }
  }
  if (r.mu_max == 0) {
    r.mu_max = 1;
    r.lambda_max = s.ev.front();
  }
  r.n_d = r.mu_max;
  if (!want_drivers) return r;

  const cplx lam = r.lambda_max;
  if (std::abs(lam.imag()) <= s.tol) {
    Mat M = A - lam.real() * Mat::Identity(n, n);
    r.drivers = dependent_rows(M, s.tol);
  } else {
    CMat M = A.cast<cplx>() - lam * CMat::Identity(n, n);
    r.drivers = dependent_rows(M, s.tol);
  }
  if (r.drivers.empty()) r.drivers.push_back(n - 1);

  // Check every cluster; patch with the row carrying the largest weight in a
  // left null vector if some eigenvalue is still uncontrolled.
  // Simple eigenvalues are settled by a left eigenvector touching a driver,
  // which avoids one SVD per cluster.
  CMat W;
  std::vector<cplx> wev;
  if (s.symmetric) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    W = es.eigenvectors().cast<cplx>();
    for (Eigen::Index i = 0; i < n; ++i) wev.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Mat> es(A.transpose());
    W = es.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i) wev.push_back(es.eigenvalues()(i));
  }
  auto touches_driver = [&](cplx lam) {
    int k = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(wev[i] - lam) < std::abs(wev[k] - lam)) k = i;
    double big = 0;
    for (int d : r.drivers) big = std::max(big, std::abs(W(d, k)));
    return big > 1e-6 * W.col(k).norm();
  };

  r.verified = true;
  for (const auto& c : s.clusters) {
    if (c.size == 1 && touches_driver(c.centroid)) continue;
    for (int guard = 0; guard < n; ++guard) {
      Mat B = input_matrix(n, r.drivers);
      if (shifted_rank(A, c.centroid, &B, s.tol) == n) break;
      if (guard == n - 1) r.verified = false;
      r.extended = true;
      CMat M(n, n + B.cols());
      M.leftCols(n) = A.cast<cplx>() - c.centroid * CMat::Identity(n, n);
      M.rightCols(B.cols()) = B.cast<cplx>();
      Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullU);
      CVec v = svd.matrixU().col(n - 1);
      Eigen::Index best = 0;
      v.cwiseAbs().maxCoeff(&best);
      r.drivers = make_node_set([&] {
        auto d = r.drivers;
        d.push_back(static_cast<int>(best));
        return d;
      }());
    }
  }
  return r;
}

bool pbh_controllable(const Mat& A, const Mat& B) {
  if (A.rows() != A.cols() || B.rows() != A.rows())
    fail(ErrorKind::DimensionMismatch, "PBH test needs square A and matching B");
  const int n = static_cast<int>(A.rows());
  if (n == 0) return true;
  Spectrum s = spectrum(A);
  for (const auto& c : s.clusters)
    if (shifted_rank(A, c.centroid, &B, s.tol) < n) return false;
  return true;
}

std::vector<SweepPoint> self_loop_sweep(const Mat& A, const std::vector<double>& loop_weights,
                                        const std::vector<std::vector<double>>& densities,
                                        const std::vector<std::uint64_t>& seeds) {
  if (A.rows() != A.cols()) fail(ErrorKind::DimensionMismatch, "A must be square");
  const int n = static_cast<int>(A.rows());
  std::vector<SweepPoint> out;
  for (size_t p = 0; p < densities.size(); ++p) {
    const auto& rho = densities[p];
    if (rho.size() != loop_weights.size())
      fail(ErrorKind::DimensionMismatch, "one density per loop weight required");
    double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) fail(ErrorKind::InvalidArgument, "densities must sum to 1");
    SweepPoint sp;
    sp.densities = rho;
    for (auto seed : seeds) {
      Rng rng = make_rng(seed, p);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Mat M = A;
      int pos = 0;
      double acc = 0;
      for (size_t k = 0; k < rho.size(); ++k) {
        acc += rho[k];
        int upto = k + 1 == rho.size() ? n : static_cast<int>(std::lround(acc * n));
        for (; pos < upto; ++pos) M(perm[pos], perm[pos]) = loop_weights[k];
      }
      sp.samples.push_back(static_cast<double>(pbh_min_drivers(M, false).n_d) / n);
    }
    double m = 0;
    for (double x : sp.samples) m += x;
    m /= sp.samples.size();
    double v = 0;
    for (double x : sp.samples) v += (x - m) * (x - m);
    sp.mean = m;
    sp.stderr_ = sp.samples.size() > 1
                     ? std::sqrt(v / (sp.samples.size() - 1) / sp.samples.size())
                     : 0.0;
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace netctl
