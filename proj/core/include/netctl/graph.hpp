#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace netctl {

// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<int>;

NodeSet make_node_set(std::vector<int> v);

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

// Directed graph. Edge src -> dst means x_src enters the equation of x_dst,
// i.e. A[dst][src] = weight.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(int n);

  int add_node(const std::string& label);
  int add_edge(int src, int dst, double weight = 1.0);
  int add_edge(const std::string& src, const std::string& dst, double weight = 1.0);

  int n() const { return static_cast<int>(labels_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(std::string_view label) const;

  const std::vector<int>& out_edges(int i) const { return out_[i]; }
  const std::vector<int>& in_edges(int i) const { return in_[i]; }
  int out_degree(int i) const { return static_cast<int>(out_[i].size()); }
  int in_degree(int i) const { return static_cast<int>(in_[i].size()); }
  bool has_edge(int src, int dst) const { return edge_id(src, dst) >= 0; }
  int edge_id(int src, int dst) const;

  // Successor / predecessor node lists in edge order.
  std::vector<int> successors(int i) const;
  std::vector<int> predecessors(int i) const;

 private:
  static std::uint64_t key(int s, int d) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s)) << 32) |
           static_cast<std::uint32_t>(d);
  }
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::vector<std::vector<int>> out_, in_;
};

class UnGraph {
 public:
  UnGraph() = default;
  explicit UnGraph(int n);

  int add_node(const std::string& label);
  void add_edge(int u, int v);
  void add_edge(const std::string& u, const std::string& v);

  int n() const { return static_cast<int>(labels_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  bool has_edge(int u, int v) const;
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(std::string_view label) const;

 private:
  static std::uint64_t key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_set<std::uint64_t> edge_set_;
  std::vector<std::vector<int>> adj_;
};

DiGraph parse_digraph(std::string_view text);
UnGraph parse_ungraph(std::string_view text);
std::variant<DiGraph, UnGraph> parse_edge_list(std::string_view text, bool directed);
std::string to_edge_list(const DiGraph& g, bool with_weights = true);
std::string to_edge_list(const UnGraph& g);

DiGraph transpose(const DiGraph& g);
// Keeps nodes with keep[i] != 0; labels and weights carried over, order preserved.
DiGraph induced_subgraph(const DiGraph& g, const std::vector<char>& keep,
                         std::vector<int>* old_to_new = nullptr);
UnGraph as_undirected(const DiGraph& g);

// H(A): left copy x_j^+ and right copy x_i^- for every edge j -> i.
struct BipartiteRep {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)
  std::vector<std::vector<int>> adj;        // left -> rights, ascending
};

BipartiteRep bipartite_rep(const DiGraph& g);

struct Matching {
  std::vector<int> mate_left;   // left (tail) -> right (head) or -1
  std::vector<int> mate_right;  // right (head) -> left (tail) or -1
  int size = 0;

  bool matched(int i) const { return mate_right[i] >= 0; }
  std::vector<std::pair<int, int>> edges() const;  // (tail, head), by tail
};

// Hopcroft-Karp on a general bipartite graph. Free left vertices are
// augmented in index order and adjacency is scanned in stored order, so the
// result is deterministic. `init` may hold a valid starting matching.
Matching hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>>& adj,
                       const Matching* init = nullptr);
Matching maximum_matching(const BipartiteRep& b);
Matching maximum_matching(const DiGraph& g);

struct SccDecomposition {
  std::vector<int> comp;                  // node -> component id
  std::vector<std::vector<int>> members;  // ascending node lists
  std::vector<std::vector<int>> dag;      // condensation successors, ascending
  std::vector<char> root;                 // no incoming condensation edge

  int count() const { return static_cast<int>(members.size()); }
  std::vector<int> roots() const;
};

// Tarjan, iterative. Component ids follow a topological order of the condensation.
SccDecomposition scc_decompose(const DiGraph& g);
// Same kernel on a bare adjacency list; ids are topological as above.
std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int* count = nullptr);

struct CyclePartition {
  int weight = 0;
  int n_state = 0;
  // next[v] for v in [0, n_state + inputs): successor in the cycle cover of G'.
  // Indices >= n_state are the added input vertices, in input order.
  std::vector<int> next;
};

CyclePartition max_weight_cycle_partition(const DiGraph& g, const NodeSet& inputs);

// Dense maximum-weight perfect assignment (Hungarian). weight[i][j] < 0 marks
// a forbidden pair. Returns col for each row, or empty if no perfect assignment.
std::vector<int> max_weight_assignment(const std::vector<std::vector<int>>& weight,
                                       long long* total = nullptr);

struct DirectedCore {
  NodeSet nodes;
  double n_core = 0.0;
};

DirectedCore directed_core(const DiGraph& g);

NodeSet reachable_from(const DiGraph& g, const NodeSet& sources);

// Weakly connected components of a digraph / components of an undirected graph.
std::vector<int> weak_components(const DiGraph& g, int* count = nullptr);
std::vector<int> connected_components(const UnGraph& g, int* count = nullptr);

bool is_acyclic(const DiGraph& g, const std::vector<char>* removed = nullptr,
                std::vector<int>* order = nullptr);

}  // namespace netctl
