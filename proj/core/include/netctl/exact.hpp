#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "netctl/graph.hpp"
#include "netctl/ode.hpp"

namespace netctl {

using cplx = std::complex<double>;

struct DenseSystem {
  Mat A;
  Mat B;
  Mat C;  // optional, may have zero rows

  int n() const { return static_cast<int>(A.rows()); }
  // Throws DimensionMismatch when shapes disagree, InvalidArgument on non-finite entries.
  void validate(bool need_b = true, bool need_c = false) const;
};

// A[dst][src] = weight for each edge src -> dst.
Mat adjacency_matrix(const DiGraph& g);
Mat adjacency_matrix(const UnGraph& g);
// L = D - A for the undirected graph, unit weights.
Mat laplacian_matrix(const UnGraph& g);
// Columns e_i for each driver.
Mat input_matrix(int n, const NodeSet& drivers);

struct KalmanResult {
  int rank = 0;  // -1 when only the PBH route was used
  bool controllable = false;
  bool used_pbh = false;
};

Mat kalman_matrix(const Mat& A, const Mat& B);
KalmanResult kalman_rank(const DenseSystem& sys);
int numeric_rank(const Mat& M, double tol = -1.0);

struct EigenCluster {
  cplx lambda;
  int algebraic = 0;  // delta
  int geometric = 0;  // mu = N - rank(lambda I - A)
};

struct EigenStructure {
  std::vector<cplx> eigenvalues;  // sorted by (real, imag)
  std::vector<EigenCluster> clusters;
  bool symmetric = false;
};

EigenStructure eigen_table(const Mat& A);

struct PbhResult {
  int n_d = 0;
  cplx lambda_max;
  int mu_max = 0;
  NodeSet drivers;
  bool verified = false;  // [A - lambda I, B] full rank at every eigenvalue cluster
  bool extended = false;  // rows beyond those of lambda_max were needed
};

// With want_drivers = false only N_D and lambda_max are computed.
PbhResult pbh_min_drivers(const Mat& A, bool want_drivers = true);

// PBH test of (A, B) at every eigenvalue cluster.
bool pbh_controllable(const Mat& A, const Mat& B);

struct SweepPoint {
  std::vector<double> densities;
  std::vector<double> samples;  // n_D = N_D / N per seed
  double mean = 0;
  double stderr_ = 0;
};

// Self-loop weights loop_weights[k] on a random node subset of density densities[k]
// (one independent assignment per seed), n_D via PBH.
std::vector<SweepPoint> self_loop_sweep(const Mat& A, const std::vector<double>& loop_weights,
                                        const std::vector<std::vector<double>>& densities,
                                        const std::vector<std::uint64_t>& seeds);

}  // namespace netctl
