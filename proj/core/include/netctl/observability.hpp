#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netctl/exact.hpp"
#include "netctl/graph.hpp"
#include "netctl/structural.hpp"
#include "netctl/trace.hpp"

namespace netctl {

struct Reaction {
  std::map<int, double> reactants;  // species -> alpha
  std::map<int, double> products;   // species -> beta
  double k = 1.0;
};

struct ReactionSystem {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  int n() const { return static_cast<int>(species.size()); }
  int r() const { return static_cast<int>(reactions.size()); }
  int species_index(const std::string& name);  // interns
  Mat stoichiometry() const;                   // Gamma, N x R
  Vec rates(const Vec& x) const;               // mass action
  Vec rhs(const Vec& x) const { return stoichiometry() * rates(x); }
};

// Lines "k: a A + b B -> c C", "<->" for reversible pairs, "0" for the empty side.
// A line "species: A B ..." fixes the index order; otherwise first appearance.
ReactionSystem parse_reactions(std::string_view text);

// Edge i -> j when x_j appears in the balance equation of x_i.
DiGraph inference_diagram(const ReactionSystem& sys);
// Same rule from a sparsity pattern: S(i, j) != 0 gives i -> j.
DiGraph inference_diagram(const Mat& sparsity);

// System digraph used by the steering tools (edge j -> i when x_j drives x_i).
DiGraph system_digraph(const DiGraph& inference);

struct SensorReport {
  std::vector<NodeSet> root_sccs;  // ascending by lowest member
  int n_sensors = 0;
  NodeSet sensors;                 // lowest member of each root SCC
  NodeSet singleton_roots;         // root SCCs of size one, always sensors
  double multiplicity = 1;         // product of root SCC sizes
};

SensorReport min_sensors(const DiGraph& g_inf);
// Every root SCC contains a sensor.
bool is_sensor_set(const DiGraph& g_inf, const NodeSet& sensors);

DriverReport sensors_via_duality(const DiGraph& g);

struct TargetSensor {
  int sensor = -1;
  int cost = 0;
};

TargetSensor target_sensor(const DiGraph& g_inf, const NodeSet& targets);

struct MdsResult {
  NodeSet nodes;
  bool exact = false;
  int core_size = 0;  // nodes left when leaf removal first stalled
};

MdsResult mds_solve(const UnGraph& g);
bool is_dominating(const UnGraph& g, const NodeSet& s);
// Exhaustive search, N <= 24.
NodeSet mds_brute_force(const UnGraph& g);

struct TransitionPoint {
  double phi = 0;
  double mean = 0;
  double stderr_ = 0;
};

// Largest connected component of the observed subgraph (PMUs and their
// neighbours) as a fraction of N, averaged over trials.
TransitionPoint observability_transition(const UnGraph& g, double phi, int trials,
                                         std::uint64_t seed);
// Largest-component fraction for a fixed PMU set.
double observable_fraction(const UnGraph& g, const NodeSet& pmus);
// phi where the mean fraction crosses 0.5, by bisection.
double observability_threshold(const UnGraph& g, int trials, std::uint64_t seed,
                               double tol = 1e-3);

// Plant x' = Ax + Bu, observer z' = Az + L(y - Cz) + Bu with u = 0.
// Columns: e_norm, x1..xN, z1..zN.
SimTrace luenberger_observe(const DenseSystem& sys, const Mat& L, const Vec& x0, const Vec& z0,
                            double T, int samples = 200);

}  // namespace netctl
