#include "netctl/observability.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "netctl/error.hpp"
#include "netctl/rng.hpp"
#include "netctl/stats.hpp"

namespace netctl {

int ReactionSystem::species_index(const std::string& name) {
  for (int i = 0; i < n(); ++i)
    if (species[i] == name) return i;
  species.push_back(name);
  return n() - 1;
}

Mat ReactionSystem::stoichiometry() const {
  Mat G = Mat::Zero(n(), r());
  for (int j = 0; j < r(); ++j) {
    for (auto [s, a] : reactions[j].reactants) G(s, j) -= a;
    for (auto [s, b] : reactions[j].products) G(s, j) += b;
  }
  return G;
}

Vec ReactionSystem::rates(const Vec& x) const {
  if (x.size() != n()) fail(ErrorKind::DimensionMismatch, "state size differs from species count");
  Vec v(r());
  for (int j = 0; j < r(); ++j) {
    double p = reactions[j].k;
    for (auto [s, a] : reactions[j].reactants) p *= std::pow(x(s), a);
    v(j) = p;
  }
  return v;
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::map<int, double> parse_side(ReactionSystem& sys, const std::string& side, int line) {
  std::map<int, double> out;
  std::string t = trim(side);
  if (t.empty() || t == "0" || t == "\xE2\x88\x85") return out;  // empty set sign
  std::stringstream ss(t);
  std::string term;
  while (std::getline(ss, term, '+')) {
    std::istringstream ts(term);
    std::vector<std::string> tok;
    for (std::string w; ts >> w;) tok.push_back(w);
    double coef = 1.0;
    std::string name;
    if (tok.size() == 1) {
      name = tok[0];
    } else if (tok.size() == 2 && parse_number(tok[0], coef)) {
      name = tok[1];
    } else {
      fail(ErrorKind::ParseError, "bad reaction term on line " + std::to_string(line));
    }
    double dummy;
    if (!(coef > 0) || parse_number(name, dummy))
      fail(ErrorKind::ParseError, "bad reaction term on line " + std::to_string(line));
    out[sys.species_index(name)] += coef;
  }
  return out;
}

}  // namespace

ReactionSystem parse_reactions(std::string_view text) {
  ReactionSystem sys;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.rfind("species:", 0) == 0) {
      std::istringstream names(s.substr(8));
      for (std::string w; names >> w;) sys.species_index(w);
      continue;
    }
    double kf = 1.0, kr = 1.0;
    if (auto c = s.find(':'); c != std::string::npos) {
      std::string rate = trim(std::string_view(s).substr(0, c));
      s = s.substr(c + 1);
      // "k1", "0.5" or "kf,kr"; symbolic names keep unit rates.
      auto comma = rate.find(',');
      double v;
      if (parse_number(trim(rate.substr(0, comma)), v)) kf = kr = v;
      if (comma != std::string::npos && parse_number(trim(rate.substr(comma + 1)), v)) kr = v;
    }
    bool reversible = false;
    size_t arrow = s.find("<->");
    size_t len = 3;
    if (arrow != std::string::npos) {
      reversible = true;
    } else {
      arrow = s.find("->");
      len = 2;
    }
    if (arrow == std::string::npos)
      fail(ErrorKind::ParseError, "missing arrow on line " + std::to_string(line));
    Reaction fwd;
    fwd.reactants = parse_side(sys, s.substr(0, arrow), line);
    fwd.products = parse_side(sys, s.substr(arrow + len), line);
    fwd.k = kf;
    sys.reactions.push_back(fwd);
    if (reversible) {
      Reaction back{fwd.products, fwd.reactants, kr};
      sys.reactions.push_back(back);
    }
  }
  return sys;
}

DiGraph inference_diagram(const ReactionSystem& sys) {
  DiGraph g;
  for (const auto& s : sys.species) g.add_node(s);
  Mat G = sys.stoichiometry();
  for (int i = 0; i < sys.n(); ++i)
    for (int j = 0; j < sys.r(); ++j) {
      if (G(i, j) == 0) continue;
      for (auto [s, a] : sys.reactions[j].reactants)
        if (a > 0 && !g.has_edge(i, s)) g.add_edge(i, s);
    }
  return g;
}

DiGraph inference_diagram(const Mat& S) {
  if (S.rows() != S.cols()) fail(ErrorKind::DimensionMismatch, "sparsity pattern must be square");
  DiGraph g(static_cast<int>(S.rows()));
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j)
      if (S(i, j) != 0) g.add_edge(i, j);
  return g;
}

DiGraph system_digraph(const DiGraph& inference) { return transpose(inference); }

SensorReport min_sensors(const DiGraph& g) {
  SccDecomposition d = scc_decompose(g);
  SensorReport r;
  for (int c : d.roots()) r.root_sccs.push_back(d.members[c]);
  std::sort(r.root_sccs.begin(), r.root_sccs.end());
  std::vector<int> picks;
  for (const auto& m : r.root_sccs) {
    picks.push_back(m.front());
    if (m.size() == 1) r.singleton_roots.push_back(m.front());
    r.multiplicity *= static_cast<double>(m.size());
  }
  r.n_sensors = static_cast<int>(r.root_sccs.size());
  r.sensors = make_node_set(picks);
  std::sort(r.singleton_roots.begin(), r.singleton_roots.end());
  return r;
}

bool is_sensor_set(const DiGraph& g, const NodeSet& sensors) {
  SccDecomposition d = scc_decompose(g);
  std::vector<char> hit(d.count(), 0);
  for (int s : sensors) {
    if (s < 0 || s >= g.n()) fail(ErrorKind::InvalidArgument, "sensor out of range");
    hit[d.comp[s]] = 1;
  }
  for (int c : d.roots())
    if (!hit[c]) return false;
  return true;
}

DriverReport sensors_via_duality(const DiGraph& g) { return min_driver_set(transpose(g)); }

TargetSensor target_sensor(const DiGraph& g, const NodeSet& targets) {
  if (targets.empty()) fail(ErrorKind::InvalidArgument, "target set is empty");
  const int n = g.n();
  std::vector<int> reach_count(n, 0);
  for (int t : targets) {
    if (t < 0 || t >= n) fail(ErrorKind::InvalidArgument, "target out of range");
    // Nodes with a path to t.
    std::vector<char> seen(n, 0);
    std::vector<int> st{t};
    seen[t] = 1;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int e : g.in_edges(v)) {
        int u = g.edge(e).src;
        if (!seen[u]) seen[u] = 1, st.push_back(u);
      }
    }
    for (int v = 0; v < n; ++v) reach_count[v] += seen[v];
  }
  SccDecomposition d = scc_decompose(g);
  std::vector<int> cost_of(d.count(), -1);
  TargetSensor best;
  const int need = static_cast<int>(targets.size());
  for (int v = 0; v < n; ++v) {
    if (reach_count[v] != need || std::binary_search(targets.begin(), targets.end(), v)) continue;
    int c = d.comp[v];
    if (cost_of[c] < 0) {
      std::vector<char> seen(d.count(), 0);
      std::vector<int> st{c};
      seen[c] = 1;
      int total = 0;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        total += static_cast<int>(d.members[x].size());
        for (int y : d.dag[x])
          if (!seen[y]) seen[y] = 1, st.push_back(y);
      }
      cost_of[c] = total;
    }
    if (best.sensor < 0 || cost_of[c] < best.cost) best = {v, cost_of[c]};
  }
  if (best.sensor < 0) fail(ErrorKind::NoPathToTarget, "no node reaches every target");
  return best;
}

// Leaf removal for dominating sets. Occupied nodes leave the graph; observed
// nodes keep only edges to unobserved neighbours.
MdsResult mds_solve(const UnGraph& g) {
  const int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) adj[u].insert(v), adj[v].insert(u);
  std::vector<char> observed(n, 0), gone(n, 0);
  std::vector<int> picked;
  std::vector<int> work(n);
  std::iota(work.rbegin(), work.rend(), 0);
  int alive = n;
  MdsResult res;
  res.exact = true;
  res.core_size = -1;

  auto drop_edge = [&](int a, int b) {
    adj[a].erase(b);
    adj[b].erase(a);
    work.push_back(a);
    work.push_back(b);
  };
  auto remove = [&](int v) {
    for (int u : std::vector<int>(adj[v].begin(), adj[v].end())) drop_edge(v, u);
    gone[v] = 1;
    --alive;
  };
  auto occupy = [&](int j) {
    picked.push_back(j);
    std::vector<int> nb(adj[j].begin(), adj[j].end());
    observed[j] = 1;
    remove(j);
    for (int u : nb) {
      observed[u] = 1;
      work.push_back(u);
      for (int w : std::vector<int>(adj[u].begin(), adj[u].end()))
        if (observed[w]) drop_edge(u, w);
    }
  };

  while (alive > 0) {
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      if (gone[v]) continue;
      if (observed[v]) {
        if (adj[v].size() <= 1) remove(v);
      } else if (adj[v].empty()) {
        occupy(v);
      } else if (adj[v].size() == 1) {
        occupy(*adj[v].begin());
      }
    }
    if (alive == 0) break;
    if (res.core_size < 0) res.core_size = alive;
    res.exact = false;
    int best = -1, best_gain = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      int gain = observed[v] ? 0 : 1;
      for (int u : adj[v]) gain += !observed[u];
      if (gain > best_gain) best = v, best_gain = gain;
    }
    occupy(best);
  }
  if (res.core_size < 0) res.core_size = 0;
  res.nodes = make_node_set(picked);
  return res;
}

bool is_dominating(const UnGraph& g, const NodeSet& s) {
  std::vector<char> cov(g.n(), 0);
  for (int v : s) {
    cov[v] = 1;
    for (int u : g.neighbors(v)) cov[u] = 1;
  }
  return std::all_of(cov.begin(), cov.end(), [](char c) { return c != 0; });
}

NodeSet mds_brute_force(const UnGraph& g) {
  const int n = g.n();
  if (n > 24) fail(ErrorKind::InvalidArgument, "exhaustive MDS limited to N <= 24");
  if (n == 0) return {};
  std::vector<std::uint32_t> closed(n);
  for (int v = 0; v < n; ++v) {
    closed[v] = 1u << v;
    for (int u : g.neighbors(v)) closed[v] |= 1u << u;
  }
  const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  // Grow subsets by size via Gosper's hack.
  for (int k = 1; k <= n; ++k) {
    std::uint32_t s = (1u << k) - 1;
    while (s <= all) {
      std::uint32_t cov = 0;
      for (std::uint32_t t = s; t; t &= t - 1) cov |= closed[__builtin_ctz(t)];
      if (cov == all) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
          if (s >> v & 1) out.push_back(v);
        return out;
      }
      std::uint32_t c = s & -s, r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return {};
}

namespace {

struct Dsu {
  std::vector<int> p, sz;
  explicit Dsu(int n) : p(n), sz(n, 1) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  int unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return sz[a];
    if (sz[a] < sz[b]) std::swap(a, b);
    p[b] = a;
    return sz[a] += sz[b];
  }
};

double fraction_from_observed(const UnGraph& g, const std::vector<char>& obs) {
  const int n = g.n();
  Dsu d(n);
  int best = 0;
  for (int v = 0; v < n; ++v) best = std::max(best, obs[v] ? 1 : 0);
  for (auto [u, v] : g.edges())
    if (obs[u] && obs[v]) best = std::max(best, d.unite(u, v));
  return n ? static_cast<double>(best) / n : 0.0;
}

std::vector<char> observe(const UnGraph& g, const int* pmu, int count) {
  std::vector<char> obs(g.n(), 0);
  for (int i = 0; i < count; ++i) {
    obs[pmu[i]] = 1;
    for (int u : g.neighbors(pmu[i])) obs[u] = 1;
  }
  return obs;
}

// Trial t places PMUs on a prefix of a fixed random order, so the fraction is
// monotone in phi for a given seed.
std::vector<std::vector<int>> pmu_orders(int n, int trials, std::uint64_t seed) {
  std::vector<std::vector<int>> out(trials, std::vector<int>(n));
  for (int t = 0; t < trials; ++t) {
    std::iota(out[t].begin(), out[t].end(), 0);
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    std::shuffle(out[t].begin(), out[t].end(), rng);
  }
  return out;
}

TransitionPoint transition_at(const UnGraph& g, double phi,
                              const std::vector<std::vector<int>>& orders) {
  const int count = static_cast<int>(std::floor(phi * g.n() + 1e-9));
  std::vector<double> f;
  for (const auto& o : orders) f.push_back(fraction_from_observed(g, observe(g, o.data(), count)));
  MeanErr me = mean_stderr(f);
  return {phi, me.mean, me.stderr_};
}

}  // namespace

double observable_fraction(const UnGraph& g, const NodeSet& pmus) {
  for (int v : pmus)
    if (v < 0 || v >= g.n()) fail(ErrorKind::InvalidArgument, "PMU out of range");
  return fraction_from_observed(g, observe(g, pmus.data(), static_cast<int>(pmus.size())));
}

TransitionPoint observability_transition(const UnGraph& g, double phi, int trials,
                                         std::uint64_t seed) {
  if (!(phi >= 0 && phi <= 1)) fail(ErrorKind::InvalidArgument, "phi must lie in [0, 1]");
  if (trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  return transition_at(g, phi, pmu_orders(g.n(), trials, seed));
}

double observability_threshold(const UnGraph& g, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  auto orders = pmu_orders(g.n(), trials, seed);
  double lo = 0, hi = 1;
  if (transition_at(g, hi, orders).mean < 0.5) return 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (transition_at(g, mid, orders).mean >= 0.5)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

SimTrace luenberger_observe(const DenseSystem& sys, const Mat& L, const Vec& x0, const Vec& z0,
                            double T, int samples) {
  const int n = sys.n();
  if (sys.A.cols() != n || sys.C.cols() != n || L.rows() != n || L.cols() != sys.C.rows() ||
      x0.size() != n || z0.size() != n)
    fail(ErrorKind::DimensionMismatch, "observer dimensions are inconsistent");
  if (!(T > 0) || samples < 2) fail(ErrorKind::InvalidArgument, "need T > 0 and samples >= 2");
  Mat LC = L * sys.C;
  Rhs f = [&](double, const Vec& s, Vec& ds) {
    auto x = s.head(n);
    auto z = s.tail(n);
    ds.resize(2 * n);
    ds.head(n) = sys.A * x;
    ds.tail(n) = sys.A * z + LC * (x - z);
  };
  Vec s0(2 * n);
  s0 << x0, z0;
  OdeOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  auto times = linspace(0, T, samples);
  auto states = integrate_samples(f, s0, times, opt);
  SimTrace tr;
  tr.columns.push_back("e_norm");
  for (int i = 0; i < n; ++i) tr.columns.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) tr.columns.push_back("z" + std::to_string(i + 1));
  for (size_t k = 0; k < times.size(); ++k) {
    const Vec& s = states[k];
    std::vector<double> row{(s.head(n) - s.tail(n)).norm()};
    for (int i = 0; i < 2 * n; ++i) row.push_back(s(i));
    tr.add(times[k], row);
  }
  tr.summary["final_error"] = tr.rows.back()[0];
  return tr;
}

}  // namespace netctl
