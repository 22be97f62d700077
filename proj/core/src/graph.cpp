#include "netctl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <sstream>

#include "netctl/error.hpp"

namespace netctl {

NodeSet make_node_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ---------------------------------------------------------------- DiGraph

DiGraph::DiGraph(int n) {
  for (int i = 0; i < n; ++i) add_node(std::to_string(i));
}

int DiGraph::add_node(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  int id = n();
  labels_.push_back(label);
  index_.emplace(label, id);
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

int DiGraph::add_edge(int src, int dst, double weight) {
  if (src < 0 || dst < 0 || src >= n() || dst >= n())
    fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
  auto [it, fresh] = edge_index_.emplace(key(src, dst), m());
  if (!fresh)
    fail(ErrorKind::DuplicateEdge, "duplicate edge " + labels_[src] + " -> " + labels_[dst]);
  int id = it->second;
  edges_.push_back({src, dst, weight});
  out_[src].push_back(id);
  in_[dst].push_back(id);
  return id;
}

int DiGraph::add_edge(const std::string& src, const std::string& dst, double weight) {
  int s = add_node(src);
  int d = add_node(dst);
  return add_edge(s, d, weight);
}

std::optional<int> DiGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int DiGraph::edge_id(int src, int dst) const {
  auto it = edge_index_.find(key(src, dst));
  return it == edge_index_.end() ? -1 : it->second;
}

std::vector<int> DiGraph::successors(int i) const {
  std::vector<int> r;
  r.reserve(out_[i].size());
  for (int e : out_[i]) r.push_back(edges_[e].dst);
  return r;
}

std::vector<int> DiGraph::predecessors(int i) const {
  std::vector<int> r;
  r.reserve(in_[i].size());
  for (int e : in_[i]) r.push_back(edges_[e].src);
  return r;
}

// ---------------------------------------------------------------- UnGraph

UnGraph::UnGraph(int n) {
  for (int i = 0; i < n; ++i) add_node(std::to_string(i));
}

int UnGraph::add_node(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  int id = n();
  labels_.push_back(label);
  index_.emplace(label, id);
  adj_.emplace_back();
  return id;
}

void UnGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n() || v >= n())
    fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
  if (u == v) fail(ErrorKind::InvalidArgument, "self-pair " + labels_[u]);
  if (!edge_set_.insert(key(u, v)).second)
    fail(ErrorKind::DuplicateEdge, "duplicate edge " + labels_[u] + " -- " + labels_[v]);
  edges_.emplace_back(u, v);
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

void UnGraph::add_edge(const std::string& u, const std::string& v) {
  int a = add_node(u);
  int b = add_node(v);
  add_edge(a, b);
}

bool UnGraph::has_edge(int u, int v) const { return edge_set_.count(key(u, v)) > 0; }

std::optional<int> UnGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::vector<std::string> tok;
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      if (j > i) tok.emplace_back(raw.substr(i, j - i));
      i = j;
    }
    if (!tok.empty()) out.push_back({number, std::move(tok)});
    if (end == text.size()) break;
  }
  return out;
}

double parse_weight(const std::string& s, int line) {
  char* end = nullptr;
  double w = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(w))
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad weight '" + s + "'");
  return w;
}

[[noreturn]] void bad_line(int line) {
  fail(ErrorKind::ParseError,
       "line " + std::to_string(line) + ": expected 'src dst [weight]'");
}

}  // namespace

DiGraph parse_digraph(std::string_view text) {
  DiGraph g;
  for (const auto& ln : tokenize(text)) {
    const auto& t = ln.tokens;
    if (t.size() == 1) {
      g.add_node(t[0]);
      continue;
    }
    if (t.size() > 3) bad_line(ln.number);
    double w = t.size() == 3 ? parse_weight(t[2], ln.number) : 1.0;
    int s = g.add_node(t[0]);
    int d = g.add_node(t[1]);
    if (g.has_edge(s, d))
      fail(ErrorKind::DuplicateEdge, "line " + std::to_string(ln.number) + ": duplicate edge " +
                                         t[0] + " -> " + t[1]);
    g.add_edge(s, d, w);
  }
  return g;
}

UnGraph parse_ungraph(std::string_view text) {
  UnGraph g;
  for (const auto& ln : tokenize(text)) {
    const auto& t = ln.tokens;
    if (t.size() == 1) {
      g.add_node(t[0]);
      continue;
    }
    if (t.size() > 3) bad_line(ln.number);
    if (t.size() == 3) parse_weight(t[2], ln.number);
    if (t[0] == t[1])
      fail(ErrorKind::ParseError, "line " + std::to_string(ln.number) + ": self-pair " + t[0]);
    int u = g.add_node(t[0]);
    int v = g.add_node(t[1]);
    if (g.has_edge(u, v))
      fail(ErrorKind::DuplicateEdge, "line " + std::to_string(ln.number) + ": duplicate edge " +
                                         t[0] + " -- " + t[1]);
    g.add_edge(u, v);
  }
  return g;
}

std::variant<DiGraph, UnGraph> parse_edge_list(std::string_view text, bool directed) {
  if (directed) return parse_digraph(text);
  return parse_ungraph(text);
}

std::string to_edge_list(const DiGraph& g, bool with_weights) {
  std::ostringstream os;
  os.precision(17);
  std::vector<char> seen(g.n(), 0);
  for (const auto& e : g.edges()) {
    os << g.label(e.src) << ' ' << g.label(e.dst);
    if (with_weights) os << ' ' << e.weight;
    os << '\n';
    seen[e.src] = seen[e.dst] = 1;
  }
  for (int i = 0; i < g.n(); ++i)
    if (!seen[i]) os << g.label(i) << '\n';
  return os.str();
}

std::string to_edge_list(const UnGraph& g) {
  std::ostringstream os;
  std::vector<char> seen(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    os << g.label(u) << ' ' << g.label(v) << '\n';
    seen[u] = seen[v] = 1;
  }
  for (int i = 0; i < g.n(); ++i)
    if (!seen[i]) os << g.label(i) << '\n';
  return os.str();
}

// ---------------------------------------------------------------- transforms

DiGraph transpose(const DiGraph& g) {
  DiGraph t;
  for (const auto& l : g.labels()) t.add_node(l);
  for (const auto& e : g.edges()) t.add_edge(e.dst, e.src, e.weight);
  return t;
}

DiGraph induced_subgraph(const DiGraph& g, const std::vector<char>& keep,
                         std::vector<int>* old_to_new) {
  DiGraph s;
  std::vector<int> map(g.n(), -1);
  for (int i = 0; i < g.n(); ++i)
    if (keep[i]) map[i] = s.add_node(g.label(i));
  for (const auto& e : g.edges())
    if (map[e.src] >= 0 && map[e.dst] >= 0) s.add_edge(map[e.src], map[e.dst], e.weight);
  if (old_to_new) *old_to_new = std::move(map);
  return s;
}

UnGraph as_undirected(const DiGraph& g) {
  UnGraph u;
  for (const auto& l : g.labels()) u.add_node(l);
  for (const auto& e : g.edges())
    if (e.src != e.dst && !u.has_edge(e.src, e.dst)) u.add_edge(e.src, e.dst);
  return u;
}

// ---------------------------------------------------------------- matching

BipartiteRep bipartite_rep(const DiGraph& g) {
  BipartiteRep b;
  b.n = g.n();
  b.adj.assign(g.n(), {});
  b.edges.reserve(g.m());
  for (const auto& e : g.edges()) {
    b.edges.emplace_back(e.src, e.dst);
    b.adj[e.src].push_back(e.dst);
  }
  for (auto& a : b.adj) std::sort(a.begin(), a.end());
  return b;
}

std::vector<std::pair<int, int>> Matching::edges() const {
  std::vector<std::pair<int, int>> r;
  for (int u = 0; u < static_cast<int>(mate_left.size()); ++u)
    if (mate_left[u] >= 0) r.emplace_back(u, mate_left[u]);
  return r;
}

Matching hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>>& adj,
                       const Matching* init) {
  Matching m;
  if (init) {
    m = *init;
  } else {
    m.mate_left.assign(n_left, -1);
    m.mate_right.assign(n_right, -1);
  }
  const int INF = std::numeric_limits<int>::max();
  std::vector<int> dist(n_left), it(n_left), queue;
  std::vector<int> stack;
  queue.reserve(n_left);

  for (;;) {
    queue.clear();
    for (int u = 0; u < n_left; ++u) {
      if (m.mate_left[u] < 0) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = INF;
      }
    }
    bool found = false;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int r : adj[u]) {
        int w = m.mate_right[r];
        if (w < 0) {
          found = true;
        } else if (dist[w] == INF) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (!found) break;

    std::fill(it.begin(), it.end(), 0);
    for (int root = 0; root < n_left; ++root) {
      if (m.mate_left[root] >= 0) continue;
      stack.assign(1, root);
      while (!stack.empty()) {
        int u = stack.back();
        if (it[u] >= static_cast<int>(adj[u].size())) {
          dist[u] = INF;
          stack.pop_back();
          if (!stack.empty()) ++it[stack.back()];
          continue;
        }
        int r = adj[u][it[u]];
        int w = m.mate_right[r];
        if (w < 0) {
          for (int v : stack) {
            int rr = adj[v][it[v]];
            m.mate_left[v] = rr;
            m.mate_right[rr] = v;
          }
          ++m.size;
          break;
        }
        if (dist[w] != INF && dist[w] == dist[u] + 1) {
          stack.push_back(w);
        } else {
          ++it[u];
        }
      }
    }
  }
  int sz = 0;
  for (int v : m.mate_left) sz += v >= 0;
  m.size = sz;
  return m;
}

Matching maximum_matching(const BipartiteRep& b) { return hopcroft_karp(b.n, b.n, b.adj); }

Matching maximum_matching(const DiGraph& g) { return maximum_matching(bipartite_rep(g)); }

// ---------------------------------------------------------------- SCC

std::vector<int> SccDecomposition::roots() const {
  std::vector<int> r;
  for (int c = 0; c < count(); ++c)
    if (root[c]) r.push_back(c);
  return r;
}

std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int* count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), it(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> st, call;
  int counter = 0, found = 0;

  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back(s);
    index[s] = low[s] = counter++;
    st.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      int v = call.back();
      if (it[v] < static_cast<int>(adj[v].size())) {
        int w = adj[v][it[v]++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          st.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = st.back();
          st.pop_back();
          on_stack[w] = 0;
          comp[w] = found;
        } while (w != v);
        ++found;
      }
    }
  }
  // Tarjan emits sinks first; reverse for a topological numbering.
  for (int& c : comp) c = found - 1 - c;
  if (count) *count = found;
  return comp;
}

SccDecomposition scc_decompose(const DiGraph& g) {
  std::vector<std::vector<int>> adj(g.n());
  for (int v = 0; v < g.n(); ++v) adj[v] = g.successors(v);
  int k = 0;
  SccDecomposition d;
  d.comp = scc_ids(adj, &k);
  d.members.assign(k, {});
  for (int v = 0; v < g.n(); ++v) d.members[d.comp[v]].push_back(v);
  d.dag.assign(k, {});
  d.root.assign(k, 1);
  for (const auto& e : g.edges()) {
    int a = d.comp[e.src], b = d.comp[e.dst];
    if (a != b) {
      d.dag[a].push_back(b);
      d.root[b] = 0;
    }
  }
  for (auto& s : d.dag) s = make_node_set(std::move(s));
  return d;
}

// ---------------------------------------------------------------- assignment

std::vector<int> max_weight_assignment(const std::vector<std::vector<int>>& weight,
                                       long long* total) {
  const int n = static_cast<int>(weight.size());
  if (n == 0) {
    if (total) *total = 0;
    return {};
  }
  // Minimize cost = -weight; forbidden pairs carry a cost no feasible
  // assignment can beat.
  const long long BIG = 4LL * (n + 1) * (n + 1);
  int wmax = 0;
  for (const auto& row : weight)
    for (int w : row) wmax = std::max(wmax, w);
  const long long forbid = BIG + static_cast<long long>(wmax) * n;
  auto cost = [&](int i, int j) -> long long {
    int w = weight[i - 1][j - 1];
    return w < 0 ? forbid : -static_cast<long long>(w);
  };
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), INF);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      long long delta = INF;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long long cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  long long sum = 0;
  for (int j = 1; j <= n; ++j) {
    int i = p[j];
    if (weight[i - 1][j - 1] < 0) return {};
    row_to_col[i - 1] = j - 1;
    sum += weight[i - 1][j - 1];
  }
  if (total) *total = sum;
  return row_to_col;
}

CyclePartition max_weight_cycle_partition(const DiGraph& g, const NodeSet& inputs) {
  const int n = g.n();
  const int k = static_cast<int>(inputs.size());
  const int size = n + k;
  // Row = tail, column = head in G'. Weight 1 for original and input edges,
  // 0 for the added state->input edges and missing self-loops.
  std::vector<std::vector<int>> w(size, std::vector<int>(size, -1));
  for (int i = 0; i < n; ++i) w[i][i] = 0;
  for (const auto& e : g.edges()) w[e.src][e.dst] = 1;
  for (int j = 0; j < k; ++j) {
    int target = inputs[j];
    if (target < 0 || target >= n) fail(ErrorKind::InvalidArgument, "input node out of range");
    w[n + j][target] = 1;
    for (int i = 0; i < n; ++i) w[i][n + j] = 0;
  }
  long long total = 0;
  auto assign = max_weight_assignment(w, &total);
  CyclePartition cp;
  cp.n_state = n;
  cp.weight = static_cast<int>(total);
  cp.next = std::move(assign);
  return cp;
}

// ---------------------------------------------------------------- core

DirectedCore directed_core(const DiGraph& g) {
  const int n = g.n();
  const int V = 2 * n;  // left copies [0,n), right copies [n,2n)
  std::vector<std::vector<int>> inc(V);
  const int m = g.m();
  std::vector<int> a(m), b(m);
  for (int e = 0; e < m; ++e) {
    a[e] = g.edge(e).src;
    b[e] = n + g.edge(e).dst;
    inc[a[e]].push_back(e);
    inc[b[e]].push_back(e);
  }
  std::vector<int> deg(V);
  for (int v = 0; v < V; ++v) deg[v] = static_cast<int>(inc[v].size());
  std::vector<char> alive(m, 1), removed(V, 0);
  std::deque<int> leaves;
  for (int v = 0; v < V; ++v)
    if (deg[v] == 1) leaves.push_back(v);

  auto other = [&](int e, int v) { return a[e] == v ? b[e] : a[e]; };
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop_front();
    if (removed[v] || deg[v] != 1) continue;
    int u = -1;
    for (int e : inc[v])
      if (alive[e]) {
        u = other(e, v);
        break;
      }
    removed[v] = 1;
    removed[u] = 1;
    for (int e : inc[u]) {
      if (!alive[e]) continue;
      alive[e] = 0;
      int w = other(e, u);
      --deg[u];
      --deg[w];
      if (!removed[w] && deg[w] == 1) leaves.push_back(w);
    }
  }
  DirectedCore c;
  for (int i = 0; i < n; ++i) {
    bool in_core = (!removed[i] && deg[i] > 0) || (!removed[n + i] && deg[n + i] > 0);
    if (in_core) c.nodes.push_back(i);
  }
  c.n_core = n == 0 ? 0.0 : static_cast<double>(c.nodes.size()) / n;
  return c;
}

// ---------------------------------------------------------------- traversal

NodeSet reachable_from(const DiGraph& g, const NodeSet& sources) {
  std::vector<char> seen(g.n(), 0);
  std::vector<int> queue;
  for (int s : sources) {
    if (s < 0 || s >= g.n()) fail(ErrorKind::InvalidArgument, "source out of range");
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  NodeSet r;
  for (int i = 0; i < g.n(); ++i)
    if (seen[i]) r.push_back(i);
  return r;
}

std::vector<int> weak_components(const DiGraph& g, int* count) {
  std::vector<int> comp(g.n(), -1), queue;
  int c = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    queue.assign(1, s);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int e : g.out_edges(v))
        if (int w = g.edge(e).dst; comp[w] < 0) {
          comp[w] = c;
          queue.push_back(w);
        }
      for (int e : g.in_edges(v))
        if (int w = g.edge(e).src; comp[w] < 0) {
          comp[w] = c;
          queue.push_back(w);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

std::vector<int> connected_components(const UnGraph& g, int* count) {
  std::vector<int> comp(g.n(), -1), queue;
  int c = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    queue.assign(1, s);
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (int w : g.neighbors(queue[qi]))
        if (comp[w] < 0) {
          comp[w] = c;
          queue.push_back(w);
        }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

bool is_acyclic(const DiGraph& g, const std::vector<char>* removed, std::vector<int>* order) {
  const int n = g.n();
  auto gone = [&](int v) { return removed && (*removed)[v]; };
  std::vector<int> indeg(n, 0), queue;
  for (const auto& e : g.edges())
    if (!gone(e.src) && !gone(e.dst)) ++indeg[e.dst];
  int alive = 0;
  for (int v = 0; v < n; ++v) {
    if (gone(v)) continue;
    ++alive;
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (gone(w)) continue;
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  if (order) *order = queue;
  return static_cast<int>(queue.size()) == alive;
}

}  // namespace netctl
