#pragma once

#include <cstdint>
#include <vector>

#include "netctl/exact.hpp"
#include "netctl/graph.hpp"
#include "netctl/ode.hpp"
#include "netctl/rng.hpp"
#include "netctl/trace.hpp"

namespace netctl {

// Zero row sums: L = D - A, with in-degrees for a digraph (A[dst][src] = w).
Mat laplacian(const UnGraph& g);
Mat laplacian(const DiGraph& g);

struct EigenRatio {
  double lambda2 = 0;
  double lambda_n = 0;
  double ratio = 0;
  std::vector<cplx> spectrum;  // sorted by real part
};

EigenRatio msf_eigenratio(const UnGraph& g);
EigenRatio msf_eigenratio(const DiGraph& g);
EigenRatio msf_eigenratio(const Mat& laplacian);

struct PinningConfig {
  Mat G;                      // coupling matrix, zero row sums
  double sigma = 1.0;         // coupling gain
  std::vector<double> kappa;  // per node; a single entry means uniform
  NodeSet pinned;

  double gain(int i) const { return kappa.size() == 1 ? kappa[0] : kappa.at(i); }
};

// (N+1) x (N+1) matrix with the virtual reference node last.
Mat pinning_matrix(const PinningConfig& cfg);
EigenRatio pinning_eigenratio(const PinningConfig& cfg);

NodeSet pin_by_degree(const UnGraph& g, int count);
NodeSet pin_random(int n, int count, Rng& rng);

struct SyncOptions {
  double T = 100;
  int samples = 500;
  bool adaptive = false;
  std::vector<double> q;    // adaptive rates, one per node or a single value
  double spread = 1.0;      // initial offsets uniform in [-spread, spread]
  std::uint64_t seed = 0;
};

// x_i' = f(x_i) - sigma sum_j g_ij H x_j + delta_i sigma kappa_i H (s - x_i), s' = f(s).
// Adaptive mode integrates kappa_i' = q_i |x_i - s| for the pinned nodes.
// Columns: e (max_i |x_i - s|), kappa_min, kappa_max. summary: final_error, and
// kappa_final_<i> in adaptive mode.
SimTrace pinning_sync_simulate(const PinningConfig& cfg, const OdeSystem& osc, const Mat& H,
                               const Vec& s0, const SyncOptions& opt);

struct VicsekParams {
  int n = 300;
  double L = 5;
  double v0 = 0.03;
  double r = 1;
  double eta = 0.1;
  std::uint64_t seed = 0;
};

struct VicsekState {
  VicsekParams p;
  long step = 0;
  std::vector<double> x, y, theta;  // positions in [0, L), headings in (-pi, pi]
};

VicsekState vicsek_init(const VicsekParams& p);
// Vectorial neighbour average including the agent, uniform noise, periodic wrap.
VicsekState vicsek_step(const VicsekState& s);
double vicsek_phi(const VicsekState& s);
// Indices of agents within r of agent i under periodic distance, i included.
std::vector<int> vicsek_neighbors(const VicsekState& s, int i);

struct OrderParameter {
  double mean = 0;
  double stderr_ = 0;  // batch means over the retained window
  SimTrace trace;      // columns: phi
};

// Transient defaults to steps / 2 when negative.
OrderParameter vicsek_order_parameter(const VicsekParams& p, int steps, int transient = -1);

// Scalar-average followers plus one leader at fixed heading theta0 (agent n).
// Columns: max_dev (max_i |theta_i - theta0|), spread (max - min follower heading).
SimTrace vicsek_leader_run(const VicsekParams& p, double theta0, int steps, bool leader = true);

}  // namespace netctl
