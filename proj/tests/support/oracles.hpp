#pragma once

// Independent brute-force references. Nothing here calls the matching code.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "netctl/graph.hpp"
#include "netctl/rng.hpp"

namespace oracle {

using netctl::DiGraph;
using netctl::UnGraph;

// Loopless digraph from an adjacency bit mask over ordered pairs (i != j).
inline DiGraph digraph_from_mask(int n, std::uint64_t mask, bool loops = false) {
  DiGraph g(n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && !loops) continue;
      if (mask >> bit & 1) g.add_edge(i, j);
      ++bit;
    }
  return g;
}

// One representative per isomorphism class of loopless digraphs on n <= 5 nodes.
inline std::vector<std::uint64_t> nonisomorphic_digraphs(int n) {
  const int bits = n * (n - 1);
  std::vector<std::pair<int, int>> pair_of;
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        index[i][j] = static_cast<int>(pair_of.size());
        pair_of.push_back({i, j});
      }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Per permutation, byte-chunk lookup tables mapping mask bits to permuted bits.
  const int chunks = (bits + 7) / 8;
  std::vector<std::vector<std::array<std::uint64_t, 256>>> tables;
  do {
    std::vector<std::array<std::uint64_t, 256>> t(chunks);
    for (int c = 0; c < chunks; ++c)
      for (int v = 0; v < 256; ++v) {
        std::uint64_t m = 0;
        for (int b = 0; b < 8 && c * 8 + b < bits; ++b)
          if (v >> b & 1) {
            auto [i, j] = pair_of[c * 8 + b];
            m |= std::uint64_t{1} << index[perm[i]][perm[j]];
          }
        t[c][v] = m;
      }
    tables.push_back(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::uint64_t> reps;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool canonical = true;
    for (const auto& t : tables) {
      std::uint64_t m = 0;
      for (int c = 0; c < chunks; ++c) m |= t[c][mask >> (8 * c) & 0xff];
      if (m < mask) {
        canonical = false;
        break;
      }
    }
    if (canonical) reps.push_back(mask);
  }
  return reps;
}

inline Eigen::MatrixXd random_weights(const DiGraph& g, netctl::Rng& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  std::bernoulli_distribution sign(0.5);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) A(e.dst, e.src) = sign(rng) ? mag(rng) : -mag(rng);
  return A;
}

// Rank of [B, AB, ..., A^{N-1}B] with columns of each block normalised.
inline int kalman_rank(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int n = static_cast<int>(A.rows());
  if (B.cols() == 0) return 0;
  Eigen::MatrixXd K(n, n * B.cols());
  Eigen::MatrixXd blk = B;
  for (int k = 0; k < n; ++k) {
    for (int c = 0; c < blk.cols(); ++c) {
      double nr = blk.col(c).norm();
      if (nr > 0) blk.col(c) /= nr;
    }
    K.middleCols(k * B.cols(), B.cols()) = blk;
    blk = A * blk;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

inline Eigen::MatrixXd columns(int n, const std::vector<int>& nodes) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, static_cast<int>(nodes.size()));
  for (size_t k = 0; k < nodes.size(); ++k) B(nodes[k], static_cast<int>(k)) = 1.0;
  return B;
}

// Fewest independent inputs m such that a dense random N x m input matrix gives
// full Kalman rank for at least one weight draw (generic rank is the maximum).
inline int brute_min_inputs(const DiGraph& g, int draws, std::uint64_t seed) {
  const int n = g.n();
  netctl::Rng rng = netctl::make_rng(seed, 77);
  std::normal_distribution<double> nd;
  std::vector<Eigen::MatrixXd> As;
  for (int d = 0; d < draws; ++d) As.push_back(random_weights(g, rng));
  for (int m = 1; m <= n; ++m)
    for (const auto& A : As) {
      Eigen::MatrixXd B(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) B(i, j) = nd(rng);
      if (kalman_rank(A, B) == n) return m;
    }
  return n;
}

// Every maximum matching of the digraph, as edge-id bit masks (m <= 64).
struct MatchingSet {
  int size = 0;
  std::vector<std::uint64_t> masks;
};

inline MatchingSet all_maximum_matchings(const DiGraph& g) {
  MatchingSet out;
  std::vector<char> head_used(g.n(), 0);
  std::vector<std::uint64_t> found;
  int best = 0;
  std::function<void(int, int, std::uint64_t)> rec = [&](int tail, int size, std::uint64_t mask) {
    if (tail == g.n()) {
      if (size > best) {
        best = size;
        found.clear();
      }
      if (size == best) found.push_back(mask);
      return;
    }
    rec(tail + 1, size, mask);
    for (int e : g.out_edges(tail)) {
      int h = g.edge(e).dst;
      if (head_used[h]) continue;
      head_used[h] = 1;
      rec(tail + 1, size + 1, mask | std::uint64_t{1} << e);
      head_used[h] = 0;
    }
  };
  rec(0, 0, 0);
  out.size = best;
  out.masks = std::move(found);
  return out;
}

// 0 critical (in every maximum matching), 1 redundant (in none), 2 ordinary.
inline std::vector<int> brute_link_classes(const DiGraph& g) {
  MatchingSet ms = all_maximum_matchings(g);
  std::vector<int> cls(g.m());
  for (int e = 0; e < g.m(); ++e) {
    int in = 0;
    for (auto m : ms.masks) in += static_cast<int>(m >> e & 1);
    cls[e] = in == static_cast<int>(ms.masks.size()) ? 0 : in == 0 ? 1 : 2;
  }
  return cls;
}

// 0 critical (unmatched head in every maximum matching), 2 redundant (always matched), 1 otherwise.
inline std::vector<int> brute_node_classes(const DiGraph& g) {
  MatchingSet ms = all_maximum_matchings(g);
  std::vector<int> cls(g.n());
  for (int v = 0; v < g.n(); ++v) {
    int matched = 0;
    for (auto m : ms.masks) {
      bool hit = false;
      for (int e : g.in_edges(v)) hit |= (m >> e & 1) != 0;
      matched += hit;
    }
    cls[v] = matched == 0 ? 0 : matched == static_cast<int>(ms.masks.size()) ? 2 : 1;
  }
  return cls;
}

// One input per actuator: every node reachable from S, and the state+input
// bipartite graph saturates every state head (Kuhn augmenting paths).
inline bool structurally_controllable(const DiGraph& g, const std::vector<int>& S) {
  const int n = g.n();
  std::vector<char> seen(n, 0);
  std::vector<int> stack(S.begin(), S.end());
  for (int s : S) seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (char c : seen)
    if (!c) return false;
  // Left vertices: states 0..n-1, inputs n..n+|S|-1.
  std::vector<std::vector<int>> adj(n + S.size());
  for (const auto& e : g.edges()) adj[e.src].push_back(e.dst);
  for (size_t k = 0; k < S.size(); ++k) adj[n + k].push_back(S[k]);
  std::vector<int> mate(n, -1);
  int size = 0;
  for (int l = 0; l < static_cast<int>(adj.size()); ++l) {
    std::vector<char> vis(n, 0);
    std::function<bool(int)> aug = [&](int u) {
      for (int h : adj[u]) {
        if (vis[h]) continue;
        vis[h] = 1;
        if (mate[h] < 0 || aug(mate[h])) {
          mate[h] = u;
          return true;
        }
      }
      return false;
    };
    size += aug(l);
  }
  return size == n;
}

inline int brute_min_actuators(const DiGraph& g) {
  const int n = g.n();
  int best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int c = __builtin_popcount(mask);
    if (c >= best) continue;
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) S.push_back(i);
    if (structurally_controllable(g, S)) best = c;
  }
  return best;
}

// Fewest independent outputs giving full observability rank, dense random C.
inline int brute_min_outputs(const DiGraph& g, int draws, std::uint64_t seed) {
  const int n = g.n();
  netctl::Rng rng = netctl::make_rng(seed, 78);
  std::normal_distribution<double> nd;
  std::vector<Eigen::MatrixXd> As;
  for (int d = 0; d < draws; ++d) As.push_back(random_weights(g, rng));
  for (int m = 1; m <= n; ++m)
    for (const auto& A : As) {
      Eigen::MatrixXd Ct(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) Ct(i, j) = nd(rng);
      if (kalman_rank(A.transpose(), Ct) == n) return m;
    }
  return n;
}

// Minimum dominating set size by exhaustive search.
inline int brute_mds(const UnGraph& g) {
  const int n = g.n();
  std::vector<std::uint32_t> closed(n);
  for (int v = 0; v < n; ++v) {
    closed[v] = 1u << v;
    for (int w : g.neighbors(v)) closed[v] |= 1u << w;
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  int best = n;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    int c = __builtin_popcount(mask);
    if (c >= best) continue;
    std::uint32_t cov = 0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) cov |= closed[v];
    if (cov == full) best = c;
    if (mask == full) break;
  }
  return best;
}

// Minimum feedback vertex set size by exhaustive search.
inline int brute_fvs(const DiGraph& g) {
  const int n = g.n();
  auto acyclic_without = [&](std::uint32_t removed) {
    std::vector<int> indeg(n, 0);
    for (const auto& e : g.edges())
      if (!(removed >> e.src & 1) && !(removed >> e.dst & 1)) ++indeg[e.dst];
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
      if (!(removed >> v & 1) && indeg[v] == 0) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
      int v = q.back();
      q.pop_back();
      ++seen;
      for (int e : g.out_edges(v)) {
        int w = g.edge(e).dst;
        if (removed >> w & 1) continue;
        if (--indeg[w] == 0) q.push_back(w);
      }
    }
    return seen == n - __builtin_popcount(removed);
  };
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int c = __builtin_popcount(mask);
    if (c < best && acyclic_without(mask)) best = c;
  }
  return best;
}

}  // namespace oracle
