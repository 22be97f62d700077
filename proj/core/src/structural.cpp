#include "netctl/structural.hpp"

#include <algorithm>

#include "netctl/error.hpp"

namespace netctl {

namespace {

int nd_from(int n, int matched) { return std::max(n - matched, 1); }

// Alternating-structure view of one maximum matching. Vertices [0,n) are the
// tails (x+), [n,2n) the heads (x-). Unmatched edges point tail -> head,
// matched edges head -> tail.
struct Alternating {
  int n = 0;
  Matching m;
  std::vector<std::vector<int>> adj, radj;
  std::vector<int> comp;
  std::vector<char> fwd;  // reachable from a free tail
  std::vector<char> bwd;  // reachable from a free head in the reversed graph
};

std::vector<char> bfs(const std::vector<std::vector<int>>& adj, const std::vector<int>& seeds) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> q;
  for (int s : seeds)
    if (!seen[s]) {
      seen[s] = 1;
      q.push_back(s);
    }
  for (size_t i = 0; i < q.size(); ++i)
    for (int w : adj[q[i]])
      if (!seen[w]) {
        seen[w] = 1;
        q.push_back(w);
      }
  return seen;
}

Alternating alternating(const DiGraph& g) {
  Alternating a;
  const int n = g.n();
  a.n = n;
  a.m = maximum_matching(g);
  a.adj.assign(2 * n, {});
  a.radj.assign(2 * n, {});
  for (const auto& e : g.edges()) {
    int l = e.src, r = n + e.dst;
    if (a.m.mate_left[e.src] == e.dst) {
      a.adj[r].push_back(l);
      a.radj[l].push_back(r);
    } else {
      a.adj[l].push_back(r);
      a.radj[r].push_back(l);
    }
  }
  a.comp = scc_ids(a.adj);
  std::vector<int> free_left, free_right;
  for (int i = 0; i < n; ++i) {
    if (a.m.mate_left[i] < 0) free_left.push_back(i);
    if (a.m.mate_right[i] < 0) free_right.push_back(n + i);
  }
  a.fwd = bfs(a.adj, free_left);
  a.bwd = bfs(a.radj, free_right);
  return a;
}

}  // namespace

const char* to_string(LinkClass c) {
  switch (c) {
    case LinkClass::Critical: return "critical";
    case LinkClass::Redundant: return "redundant";
    case LinkClass::Ordinary: return "ordinary";
  }
  return "?";
}

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Critical: return "critical";
    case NodeClass::Intermittent: return "intermittent";
    case NodeClass::Redundant: return "redundant";
  }
  return "?";
}

const char* to_string(DeletionClass c) {
  switch (c) {
    case DeletionClass::Critical: return "deletion-critical";
    case DeletionClass::Ordinary: return "deletion-ordinary";
    case DeletionClass::Redundant: return "deletion-redundant";
  }
  return "?";
}

DriverReport min_driver_set(const DiGraph& g) {
  DriverReport r;
  r.matching = maximum_matching(g);
  const int n = g.n();
  if (n == 0) return r;
  for (int i = 0; i < n; ++i)
    if (!r.matching.matched(i)) r.drivers.push_back(i);
  r.perfect = r.drivers.empty();
  if (r.perfect) r.drivers.push_back(0);
  r.n_d = nd_from(n, r.matching.size);
  return r;
}

ControllabilityCheck structural_controllability_check(const DiGraph& g, const NodeSet& drivers) {
  if (drivers.empty()) fail(ErrorKind::EmptyDriverSet, "no driver nodes given");
  const int n = g.n();
  ControllabilityCheck c;
  NodeSet ds = make_node_set(drivers);
  NodeSet reach = reachable_from(g, ds);
  if (static_cast<int>(reach.size()) < n) {
    std::vector<char> in(n, 0);
    for (int v : reach) in[v] = 1;
    for (int v = 0; v < n; ++v)
      if (!in[v]) c.witness.push_back(v);
    c.witness_kind = WitnessKind::Inaccessible;
    return c;
  }
  // Tails: state nodes then one input vertex per driver. Heads: state nodes.
  const int k = static_cast<int>(ds.size());
  std::vector<std::vector<int>> adj(n + k);
  for (int v = 0; v < n; ++v) {
    adj[v] = g.successors(v);
    std::sort(adj[v].begin(), adj[v].end());
  }
  for (int j = 0; j < k; ++j) adj[n + j] = {ds[j]};
  Matching m = hopcroft_karp(n + k, n, adj);
  if (m.size == n) {
    c.controllable = true;
    return c;
  }
  // Hall violator: heads reached from a free head along alternating paths.
  std::vector<std::vector<int>> into(n);
  for (int u = 0; u < n + k; ++u)
    for (int r : adj[u]) into[r].push_back(u);
  int r0 = -1;
  for (int r = 0; r < n; ++r)
    if (m.mate_right[r] < 0) {
      r0 = r;
      break;
    }
  std::vector<char> seen_r(n, 0), seen_l(n + k, 0);
  std::vector<int> q{r0};
  seen_r[r0] = 1;
  for (size_t i = 0; i < q.size(); ++i)
    for (int l : into[q[i]]) {
      if (seen_l[l]) continue;
      seen_l[l] = 1;
      int r = m.mate_left[l];
      if (r >= 0 && !seen_r[r]) {
        seen_r[r] = 1;
        q.push_back(r);
      }
    }
  for (int r = 0; r < n; ++r)
    if (seen_r[r]) c.witness.push_back(r);
  for (int l = 0; l < n + k; ++l)
    if (seen_l[l]) c.neighborhood.push_back(l < n ? l : -(l - n) - 1);
  c.witness_kind = WitnessKind::Dilation;
  return c;
}

std::vector<LinkClass> classify_links(const DiGraph& g) {
  Alternating a = alternating(g);
  const int n = g.n();
  std::vector<LinkClass> out;
  out.reserve(g.m());
  for (const auto& e : g.edges()) {
    bool matched = a.m.mate_left[e.src] == e.dst;
    int x = matched ? n + e.dst : e.src;  // tail in the alternating graph
    int y = matched ? e.src : n + e.dst;
    bool flexible = a.comp[x] == a.comp[y] || a.fwd[x] || a.bwd[y];
    if (matched)
      out.push_back(flexible ? LinkClass::Ordinary : LinkClass::Critical);
    else
      out.push_back(flexible ? LinkClass::Ordinary : LinkClass::Redundant);
  }
  return out;
}

std::vector<NodeClass> classify_nodes(const DiGraph& g) {
  Alternating a = alternating(g);
  const int n = g.n();
  std::vector<NodeClass> out(n);
  for (int i = 0; i < n; ++i) {
    if (g.in_degree(i) == 0)
      out[i] = NodeClass::Critical;
    else if (a.m.mate_right[i] < 0 || a.bwd[n + i])
      out[i] = NodeClass::Intermittent;
    else
      out[i] = NodeClass::Redundant;
  }
  return out;
}

std::vector<DeletionClass> classify_nodes_deletion(const DiGraph& g) {
  const int n = g.n();
  BipartiteRep b = bipartite_rep(g);
  Matching base = maximum_matching(b);
  const int nd = nd_from(n, base.size);
  std::vector<DeletionClass> out(n);
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int u = 0; u < n; ++u) {
      adj[u].clear();
      if (u == i) continue;
      for (int r : b.adj[u])
        if (r != i) adj[u].push_back(r);
    }
    // Warm start: the base matching minus the edges touching i.
    Matching init = base;
    if (int r = init.mate_left[i]; r >= 0) init.mate_right[r] = -1, init.mate_left[i] = -1;
    if (int l = init.mate_right[i]; l >= 0) init.mate_left[l] = -1, init.mate_right[i] = -1;
    Matching m = hopcroft_karp(n, n, adj, &init);
    int nd2 = nd_from(n - 1, m.size);
    if (n == 1) nd2 = 0;
    out[i] = nd2 > nd ? DeletionClass::Critical
                      : (nd2 < nd ? DeletionClass::Redundant : DeletionClass::Ordinary);
  }
  return out;
}

namespace {
template <class C>
ClassFractions tally(const std::vector<C>& v, C crit, C red) {
  ClassFractions f;
  if (v.empty()) return f;
  std::size_t c = 0, r = 0;
  for (C x : v) {
    c += x == crit;
    r += x == red;
  }
  double n = static_cast<double>(v.size());
  f.critical = c / n;
  f.redundant = r / n;
  f.middle = (v.size() - c - r) / n;
  return f;
}
}  // namespace

ClassFractions fractions(const std::vector<LinkClass>& c) {
  return tally(c, LinkClass::Critical, LinkClass::Redundant);
}
ClassFractions fractions(const std::vector<NodeClass>& c) {
  return tally(c, NodeClass::Critical, NodeClass::Redundant);
}
ClassFractions fractions(const std::vector<DeletionClass>& c) {
  return tally(c, DeletionClass::Critical, DeletionClass::Redundant);
}

ControlProfile control_profile(const DiGraph& g) {
  ControlProfile p;
  p.n = g.n();
  if (p.n == 0) return p;
  p.n_d = min_driver_set(g).n_d;
  for (int i = 0; i < p.n; ++i) {
    p.n_s += g.in_degree(i) == 0;
    p.n_t += g.out_degree(i) == 0;
  }
  p.n_e = std::max(0, p.n_t - p.n_s);
  p.n_i = p.n_d - p.n_s - p.n_e;
  double n = p.n;
  p.eta_s = p.n_s / n;
  p.eta_e = p.n_e / n;
  p.eta_i = p.n_i / n;
  return p;
}

int control_centrality(const DiGraph& g, const NodeSet& controlled) {
  if (controlled.empty()) fail(ErrorKind::EmptyDriverSet, "no controlled nodes given");
  NodeSet c = make_node_set(controlled);
  NodeSet reach = reachable_from(g, c);
  std::vector<char> keep(g.n(), 0);
  for (int v : reach) keep[v] = 1;
  std::vector<int> map;
  DiGraph sub = induced_subgraph(g, keep, &map);
  NodeSet inputs;
  for (int v : c) inputs.push_back(map[v]);
  return max_weight_cycle_partition(sub, inputs).weight;
}

ActuatorReport min_actuators(const DiGraph& g) {
  ActuatorReport r;
  const int n = g.n();
  if (n == 0) return r;
  SccDecomposition scc = scc_decompose(g);
  std::vector<int> roots = scc.roots();
  r.beta = static_cast<int>(roots.size());

  BipartiteRep b = bipartite_rep(g);
  Matching base = maximum_matching(b);
  r.n_d = nd_from(n, base.size);

  // One virtual tail per root SCC, adjacent to the heads of its members.
  // Augmenting from them keeps the real cardinality and maximizes the number
  // of root SCCs that hold an unmatched head.
  const int R = r.beta;
  std::vector<std::vector<int>> adj = b.adj;
  adj.resize(n + R);
  for (int s = 0; s < R; ++s) adj[n + s] = scc.members[roots[s]];
  Matching init = base;
  init.mate_left.resize(n + R, -1);
  Matching m = hopcroft_karp(n + R, n, adj, &init);

  std::vector<char> root_has_driver(scc.count(), 0);
  NodeSet drivers;
  if (base.size == n) {
    int c = roots.front();
    drivers.push_back(scc.members[c].front());
    root_has_driver[c] = 1;
    r.alpha = 1;
  } else {
    for (int v = 0; v < n; ++v) {
      int l = m.mate_right[v];
      if (l < 0 || l >= n) {
        drivers.push_back(v);
        if (scc.root[scc.comp[v]]) root_has_driver[scc.comp[v]] = 1;
      }
    }
    for (int c : roots) r.alpha += root_has_driver[c];
  }
  r.actuators = drivers;
  for (int c : roots)
    if (!root_has_driver[c]) r.actuators.push_back(scc.members[c].front());
  r.actuators = make_node_set(std::move(r.actuators));
  r.n_da = r.n_d + r.beta - r.alpha;
  return r;
}

NodeSet switchboard_drivers(const DiGraph& g) {
  const int n = g.n();
  int k = 0;
  std::vector<int> comp = weak_components(g, &k);
  std::vector<char> balanced(k, 1), has_edge(k, 0);
  std::vector<int> rep(k, -1);
  NodeSet out;
  for (int v = 0; v < n; ++v) {
    int c = comp[v];
    if (rep[c] < 0) rep[c] = v;
    if (g.out_degree(v) != g.in_degree(v) || g.out_degree(v) == 0) balanced[c] = 0;
    if (g.out_degree(v) > 0) has_edge[c] = 1;
    if (g.out_degree(v) > g.in_degree(v)) out.push_back(v);
  }
  for (int c = 0; c < k; ++c)
    if (balanced[c] && has_edge[c]) out.push_back(rep[c]);
  return make_node_set(std::move(out));
}

}  // namespace netctl
