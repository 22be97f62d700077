#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "netctl/graph.hpp"
#include "netctl/ode.hpp"
#include "netctl/trace.hpp"

namespace netctl {

// Registered toy systems: "rossler" (a, b, c; one input added to dy),
// "toggle" (alpha, n), "bistable" (x' = x - x^3 + u), "lorenz" (sigma, rho, beta).
OdeSystem make_system(const std::string& name, const std::map<std::string, double>& overrides = {});
std::vector<std::string> system_names();

// x' = F(x) + B u with u(t) = B^{-1}[g'(t) - F(g(t))], F = sys with zero input.
// Columns: err, u1..uN, x1..xN.
SimTrace hubler_input(const OdeSystem& sys, const Mat& B, const std::function<Vec(double)>& goal,
                      const std::function<Vec(double)>& goal_dot, const Vec& x0, double T,
                      int samples = 500);

struct HenonParams {
  double p = 1.4;
  double b = 0.3;
  double delta = 0.5;   // activation radius around the fixed point
  double cap = 0.014;   // |dp| limit, 1% of p
  Eigen::RowVector2d gain{0.0, 0.0};  // zero means derive the deadbeat gain
};

struct HenonFixedPoint {
  double x = 0;
  Eigen::Matrix2d jacobian;
  Eigen::Vector2d sensitivity;  // d(map)/dp
  double lambda_u = 0, lambda_s = 0;
  Eigen::RowVector2d gain;       // places lambda_u at zero
};

HenonFixedPoint henon_fixed_point(const HenonParams& hp);

// Columns: x, y, u, dist. summary: capture_step, max_post_dev, max_abs_u.
// Captured once the state stays within 1e-3 of the fixed point for 100 steps;
// the seed jitters x0 by up to 0.01 per coordinate.
SimTrace ogy_stabilize_henon(const HenonParams& hp, Eigen::Vector2d x0, int n_steps,
                             std::uint64_t seed);

// Largest Lyapunov exponent of the uncontrolled map, two-trajectory renormalization.
double henon_lyapunov(double p, double b, int n_steps, std::uint64_t seed);

struct PyragasOptions {
  double dt = 0.005;  // adjusted so tau is an integer number of steps
};

// u(t) = K [y(t) - y(t - tau)] fed to input 0. The history on [-tau, 0] is the
// uncontrolled flow from x0; the controlled run starts where it ends.
// Columns: u, y, x1..xN. summary: mismatch (max |y - y_tau| over the last 10%,
// infinite when the run blows up).
SimTrace pyragas_feedback(const OdeSystem& sys, const std::function<double(const Vec&)>& output,
                          double K, double tau, const Vec& x0, double T,
                          const PyragasOptions& opt = {});

struct PeriodicOrbit {
  Vec x;             // point on the orbit
  double period = 0;
  double residual = 0;
  double close_return = 0;  // distance of the seed close return
};

// Period-one orbit through the section {x_k = 0, x_k decreasing}, located by a
// close-return search on the attractor and refined by Newton on the return map.
PeriodicOrbit find_period_one_orbit(const OdeSystem& sys, const Vec& x0, int section_coord = 1,
                                    double transient = 200, double horizon = 2000,
                                    double threshold = 1e-3);

struct PerturbationConstraints {
  NodeSet control_set;  // empty means every coordinate
  Vec lower, upper;     // bounds on the total shift x0' - x0; empty means unbounded
};

struct CompensationResult {
  Vec x0_new;
  bool success = false;
  int iterations = 0;
  double closest = 0;  // min |x* - x(t)| of the final orbit
};

// M(t) = d x(t) / d x0 along the uncontrolled flow.
Mat variational_matrix(const OdeSystem& sys, const Vec& x0, double t);

CompensationResult compensatory_perturbation(const OdeSystem& sys, const Vec& x0,
                                             const Vec& target,
                                             const PerturbationConstraints& cons,
                                             int budget = 50, double kappa = 1e-2,
                                             double t_check = 20.0);

struct FvsResult {
  NodeSet nodes;
  std::vector<int> order;  // topological order of the remainder
  bool minimal = false;
  bool exact = false;
};

enum class FvsMode { Exact, Heuristic };

FvsResult fvs_find(const DiGraph& g, FvsMode mode);
bool is_fvs(const DiGraph& g, const NodeSet& s);

// Clamped coordinates follow the target samples (linear interpolation between
// sample times); the rest is integrated with RK4 on the sample grid. Columns
// x1..xN. summary: terminal_distance.
SimTrace fvs_clamp(const OdeSystem& sys, const NodeSet& fvs, const Vec& x0,
                   const std::vector<double>& times, const std::vector<Vec>& target, double T,
                   int substeps = 20);

// End points of free runs from each start, merged when closer than tol.
std::vector<Vec> find_stable_states(const OdeSystem& sys, const std::vector<Vec>& starts,
                                    double T = 200, double tol = 1e-4);

}  // namespace netctl
