#pragma once

#include <string>
#include <vector>

#include "netctl/graph.hpp"

namespace netctl {

struct DriverReport {
  int n_d = 0;
  NodeSet drivers;
  Matching matching;
  bool perfect = false;
};

// N_D = max(N - |M*|, 1); drivers are the unmatched heads of the canonical
// matching, or node 0 when the matching is perfect.
DriverReport min_driver_set(const DiGraph& g);

enum class WitnessKind { None, Inaccessible, Dilation };

struct ControllabilityCheck {
  bool controllable = false;
  WitnessKind witness_kind = WitnessKind::None;
  NodeSet witness;        // inaccessible nodes, or the dilation set S
  // T(S) for a dilation, |T(S)| < |S|. Input vertex j is encoded as -1 - j.
  std::vector<int> neighborhood;
};

ControllabilityCheck structural_controllability_check(const DiGraph& g, const NodeSet& drivers);

enum class LinkClass { Critical, Redundant, Ordinary };
enum class NodeClass { Critical, Intermittent, Redundant };
enum class DeletionClass { Critical, Ordinary, Redundant };

const char* to_string(LinkClass c);
const char* to_string(NodeClass c);
const char* to_string(DeletionClass c);

// Indexed like g.edges().
std::vector<LinkClass> classify_links(const DiGraph& g);
std::vector<NodeClass> classify_nodes(const DiGraph& g);
std::vector<DeletionClass> classify_nodes_deletion(const DiGraph& g);

struct ClassFractions {
  double critical = 0, middle = 0, redundant = 0;  // middle = ordinary / intermittent
};
ClassFractions fractions(const std::vector<LinkClass>& c);
ClassFractions fractions(const std::vector<NodeClass>& c);
ClassFractions fractions(const std::vector<DeletionClass>& c);

struct ControlProfile {
  int n = 0, n_d = 0;
  int n_s = 0, n_t = 0, n_e = 0, n_i = 0;
  double eta_s = 0, eta_e = 0, eta_i = 0;
};

ControlProfile control_profile(const DiGraph& g);

int control_centrality(const DiGraph& g, const NodeSet& controlled);

struct ActuatorReport {
  int n_d = 0;
  int beta = 0;
  int alpha = 0;
  int n_da = 0;
  NodeSet actuators;
};

ActuatorReport min_actuators(const DiGraph& g);

NodeSet switchboard_drivers(const DiGraph& g);

}  // namespace netctl
