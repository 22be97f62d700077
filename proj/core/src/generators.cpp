#include "netctl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "netctl/error.hpp"

namespace netctl {

namespace {

std::uint64_t pair_key(int s, int d) {
  return (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(d);
}

long long edge_target(int n, double k_mean, long long max_edges) {
  long long l = std::llround(n * k_mean / 2.0);
  if (l > max_edges) fail(ErrorKind::InvalidArgument, "mean degree too large for graph size");
  return l;
}

}  // namespace

DiGraph er_digraph(int n, double k_mean, Rng& rng, bool self_loops) {
  DiGraph g(n);
  if (n == 0) return g;
  long long maxe = static_cast<long long>(n) * (self_loops ? n : n - 1);
  long long l = edge_target(n, k_mean, maxe);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<size_t>(l) * 2);
  while (static_cast<long long>(seen.size()) < l) {
    int s = pick(rng), d = pick(rng);
    if (s == d && !self_loops) continue;
    if (!seen.insert(pair_key(s, d)).second) continue;
    g.add_edge(s, d);
  }
  return g;
}

DiGraph gnp_digraph(int n, double p, Rng& rng, bool self_loops) {
  DiGraph g(n);
  std::bernoulli_distribution coin(p);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      if (s == d && !self_loops) continue;
      if (coin(rng)) g.add_edge(s, d);
    }
  return g;
}

UnGraph er_ungraph(int n, double k_mean, Rng& rng) {
  UnGraph g(n);
  if (n < 2) return g;
  long long l = edge_target(n, k_mean, static_cast<long long>(n) * (n - 1) / 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (g.m() < l) {
    int u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v);
  }
  return g;
}

UnGraph preferential_attachment(int n, int m, Rng& rng) {
  if (m < 1 || n <= m) fail(ErrorKind::InvalidArgument, "preferential_attachment needs n > m >= 1");
  UnGraph g(n);
  std::vector<int> ends;
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      g.add_edge(i, j);
      ends.push_back(i);
      ends.push_back(j);
    }
  std::vector<int> chosen;
  for (int v = m + 1; v < n; ++v) {
    chosen.clear();
    std::uniform_int_distribution<size_t> pick(0, ends.size() - 1);
    while (static_cast<int>(chosen.size()) < m) {
      int t = ends[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (int t : chosen) {
      g.add_edge(v, t);
      ends.push_back(v);
      ends.push_back(t);
    }
  }
  return g;
}

DiGraph sf_static_digraph(int n, double k_mean, double gamma, Rng& rng) {
  if (gamma <= 2.0) fail(ErrorKind::InvalidArgument, "static model needs gamma > 2");
  DiGraph g(n);
  if (n < 2) return g;
  long long l = edge_target(n, k_mean, static_cast<long long>(n) * (n - 1));
  double alpha = 1.0 / (gamma - 1.0);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::pow(i + 1.0, -alpha);
  std::vector<int> perm_out(n), perm_in(n);
  std::iota(perm_out.begin(), perm_out.end(), 0);
  std::iota(perm_in.begin(), perm_in.end(), 0);
  std::shuffle(perm_out.begin(), perm_out.end(), rng);
  std::shuffle(perm_in.begin(), perm_in.end(), rng);
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::unordered_set<std::uint64_t> seen;
  long long guard = 0;
  while (static_cast<long long>(seen.size()) < l) {
    if (++guard > 1000 * (l + 10)) fail(ErrorKind::RejectionFailure, "static model saturated");
    int s = perm_out[pick(rng)], d = perm_in[pick(rng)];
    if (s == d) continue;
    if (!seen.insert(pair_key(s, d)).second) continue;
    g.add_edge(s, d);
  }
  return g;
}

UnGraph sf_static_ungraph(int n, double k_mean, double gamma, Rng& rng) {
  if (gamma <= 2.0) fail(ErrorKind::InvalidArgument, "static model needs gamma > 2");
  UnGraph g(n);
  if (n < 2) return g;
  long long l = edge_target(n, k_mean, static_cast<long long>(n) * (n - 1) / 2);
  double alpha = 1.0 / (gamma - 1.0);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::pow(i + 1.0, -alpha);
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::unordered_set<std::uint64_t> seen;
  long long guard = 0;
  while (static_cast<long long>(seen.size()) < l) {
    if (++guard > 1000 * (l + 10)) fail(ErrorKind::RejectionFailure, "static model saturated");
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (!seen.insert(pair_key(std::min(a, b), std::max(a, b))).second) continue;
    g.add_edge(a, b);
  }
  return g;
}

DiGraph configuration_digraph(const std::vector<int>& in_deg, const std::vector<int>& out_deg,
                              Rng& rng, int attempts) {
  const int n = static_cast<int>(in_deg.size());
  if (static_cast<int>(out_deg.size()) != n)
    fail(ErrorKind::DimensionMismatch, "degree sequences differ in length");
  std::vector<int> outs, ins;
  for (int i = 0; i < n; ++i) {
    outs.insert(outs.end(), out_deg[i], i);
    ins.insert(ins.end(), in_deg[i], i);
  }
  if (outs.size() != ins.size()) fail(ErrorKind::InvalidArgument, "stub counts differ");
  const size_t L = outs.size();
  std::shuffle(ins.begin(), ins.end(), rng);

  std::unordered_multiset<std::uint64_t> used;
  used.reserve(L * 2);
  for (size_t k = 0; k < L; ++k) used.insert(pair_key(outs[k], ins[k]));
  auto bad = [&](size_t k) {
    return outs[k] == ins[k] || used.count(pair_key(outs[k], ins[k])) > 1;
  };
  std::uniform_int_distribution<size_t> pick(0, L ? L - 1 : 0);
  for (size_t k = 0; k < L; ++k) {
    int tries = 0;
    while (bad(k)) {
      if (++tries > attempts)
        fail(ErrorKind::RejectionFailure, "could not resolve loop or multi-edge by redraw");
      // Redraw: exchange this in-stub with a random partner if both new pairs are valid.
      size_t j = pick(rng);
      if (j == k) continue;
      std::uint64_t a_old = pair_key(outs[k], ins[k]), b_old = pair_key(outs[j], ins[j]);
      std::uint64_t a_new = pair_key(outs[k], ins[j]), b_new = pair_key(outs[j], ins[k]);
      if (outs[k] == ins[j] || outs[j] == ins[k]) continue;
      if (used.count(a_new) || used.count(b_new)) continue;
      used.erase(used.find(a_old));
      used.erase(used.find(b_old));
      std::swap(ins[k], ins[j]);
      used.insert(a_new);
      used.insert(b_new);
    }
  }
  DiGraph g(n);
  for (size_t k = 0; k < L; ++k) g.add_edge(outs[k], ins[k]);
  return g;
}

DiGraph poisson_configuration_digraph(int n, double k_mean, Rng& rng, int attempts) {
  std::poisson_distribution<int> pois(k_mean / 2.0);
  std::vector<int> out(n), in(n, 0);
  long long total = 0;
  for (int i = 0; i < n; ++i) total += (out[i] = pois(rng));
  // Multinomial placement of the in-stubs gives Poisson in-degrees with the same total.
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (long long k = 0; k < total; ++k) ++in[pick(rng)];
  return configuration_digraph(in, out, rng, attempts);
}

DiGraph random_relabel(const DiGraph& g, Rng& rng, std::vector<int>* perm) {
  std::vector<int> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  DiGraph h(g.n());
  for (const auto& e : g.edges()) h.add_edge(p[e.src], p[e.dst], e.weight);
  if (perm) *perm = p;
  return h;
}

DiGraph directed_path(int n) {
  DiGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

DiGraph directed_cycle(int n) {
  DiGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

DiGraph out_star(int leaves) {
  DiGraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

DiGraph symmetric_digraph(const UnGraph& u) {
  DiGraph g;
  for (const auto& l : u.labels()) g.add_node(l);
  for (auto [a, b] : u.edges()) {
    g.add_edge(a, b);
    g.add_edge(b, a);
  }
  return g;
}

UnGraph path_graph(int n) {
  UnGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

UnGraph ring_graph(int n) {
  UnGraph g(n);
  for (int i = 0; i < n; ++i)
    if (n > 2 || i == 0) g.add_edge(i, (i + 1) % n);
  return g;
}

UnGraph star_graph(int n) {
  UnGraph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

UnGraph complete_graph(int n) {
  UnGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

}  // namespace netctl
