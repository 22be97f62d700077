#include "netctl/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "netctl/cavity.hpp"
#include "netctl/collective.hpp"
#include "netctl/energy.hpp"
#include "netctl/error.hpp"
#include "netctl/exact.hpp"
#include "netctl/generators.hpp"
#include "netctl/graph.hpp"
#include "netctl/observability.hpp"
#include "netctl/stats.hpp"
#include "netctl/steering.hpp"
#include "netctl/structural.hpp"

namespace netctl::cli {

using json = nlohmann::ordered_json;

const std::vector<CommandInfo>& dispatch_table() {
  static const std::vector<CommandInfo> table = {
      {"drivers", "minimum driver set from a maximum matching",
       {"parse_edge_list", "bipartite_rep", "maximum_matching", "min_driver_set"}},
      {"check", "structural controllability of a driver set",
       {"reachable_from", "structural_controllability_check"}},
      {"classify-links", "critical / redundant / ordinary links and the directed core",
       {"classify_links", "directed_core"}},
      {"classify-nodes", "node classes by driver role and by deletion",
       {"classify_nodes", "classify_nodes_deletion"}},
      {"profile", "control profile (source, external dilation, internal dilation)",
       {"control_profile"}},
      {"centrality", "control centrality through cycle partitions",
       {"max_weight_cycle_partition", "control_centrality"}},
      {"actuators", "minimum actuator set", {"min_actuators"}},
      {"switchboard", "drivers of switchboard (edge) dynamics", {"switchboard_drivers"}},
      {"cavity", "cavity estimate of the driver density", {"solve_cavity", "nd_asymptotic"}},
      {"exact-nd", "exact controllability by eigenvalue multiplicity",
       {"pbh_min_drivers", "eigen_table", "kalman_rank", "self_loop_sweep"}},
      {"energy", "Gramian, energy bounds and the minimum-energy input",
       {"gramian", "min_energy_input", "energy_bounds"}},
      {"spectrum", "control energy spectrum", {"energy_spectrum"}},
      {"sensors", "inference diagram and minimum sensor set",
       {"transpose", "scc_decompose", "inference_diagram", "min_sensors", "sensors_via_duality"}},
      {"target-sensor", "cheapest sensor observing a target set", {"target_sensor"}},
      {"mds", "minimum dominating set by leaf removal", {"mds_solve"}},
      {"obs-transition", "largest observable component versus PMU density",
       {"observability_transition"}},
      {"observer", "Luenberger observer error trace", {"luenberger_observe"}},
      {"hubler", "open-loop entrainment to a goal dynamics", {"hubler_input"}},
      {"ogy", "OGY stabilisation of the Henon map", {"ogy_stabilize_henon"}},
      {"pyragas", "delayed feedback control", {"pyragas_feedback"}},
      {"compensate", "compensatory initial-state perturbation", {"compensatory_perturbation"}},
      {"fvs", "feedback vertex set", {"fvs_find"}},
      {"clamp", "attractor switching by clamping a feedback vertex set", {"fvs_clamp"}},
      {"msf", "Laplacian eigenratio", {"msf_eigenratio"}},
      {"pinning", "eigenratio of the pinned coupling matrix", {"pinning_eigenratio"}},
      {"pinning-sim", "pinned synchronisation run", {"pinning_sync_simulate"}},
      {"vicsek", "Vicsek flocking order parameter", {"vicsek_step", "vicsek_order_parameter"}},
      {"vicsek-leader", "followers aligning to a leader", {"vicsek_leader_run"}},
  };
  return table;
}

namespace {

struct Opts {
  std::string output, format, seed_text;
  int jobs = 1;

  std::string input, reactions, system, drivers, nodes, targets, validate, shape, mode;
  std::string xi, xf, x0, z0, lower, upper, control, fvs, pinned, loop_weights = "0,1",
                                                                   rho = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
                                                                   amp = "1", omega = "1",
                                                                   center = "0", kappa_grid, q = "1",
                                                                   strategy = "degree", dist = "er";
  std::vector<std::string> params;
  int n = 10, m = 2, steps = 1000, samples = 500, bins = 20, trials = 10, seeds = 1, budget = 50,
      coord = 1, from = -1, to = 0, transient = -1, substeps = 20;
  double T = 1.0, kmean = 4, gamma = 3, diag = 0, phi = 0.1, p = 1.4, b = 0.3, delta = 0.5,
         cap = 0.014, K = -0.2, tau = 0, dt = 0.005, kappa = 1, sigma = 1, fraction = 0.1,
         tcheck = 20, ball = 1e-2, L = 5, v0 = 0.03, r = 1, eta = 0.1, theta0 = 0, spread = 1;
  bool sweep = false, threshold = false, brute = false, adaptive = false, no_leader = false,
       directed = false, random_weights = false, snapshot = false;
  std::uint64_t seed = 0;
};

struct Out {
  json j;
  std::string csv;  // natural table, if the command has one
};

std::string read_text(const std::string& path) {
  if (path.empty()) fail(ErrorKind::InvalidArgument, "an input file is required (--input)");
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

DiGraph load_digraph(const std::string& path) {
  return std::get<DiGraph>(parse_edge_list(read_text(path), true));
}

UnGraph load_ungraph(const std::string& path) {
  return std::get<UnGraph>(parse_edge_list(read_text(path), false));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> v;
  for (const auto& t : split_list(s)) {
    char* end = nullptr;
    double x = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) fail(ErrorKind::InvalidArgument, "not a number: '" + t + "'");
    v.push_back(x);
  }
  return v;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (double x : parse_doubles(s)) {
    if (x != std::floor(x)) fail(ErrorKind::InvalidArgument, "expected an integer list");
    v.push_back(static_cast<int>(x));
  }
  return v;
}

Vec vec_of(const std::string& s, int n, double fill = 0.0) {
  if (s.empty()) return Vec::Constant(n, fill);
  auto v = parse_doubles(s);
  if (v.size() == 1 && n > 1) return Vec::Constant(n, v[0]);
  if (static_cast<int>(v.size()) != n)
    fail(ErrorKind::DimensionMismatch, "vector '" + s + "' needs " + std::to_string(n) + " entries");
  return Eigen::Map<Vec>(v.data(), n);
}

template <class G>
NodeSet nodes_of(const G& g, const std::string& s) {
  std::vector<int> out;
  for (const auto& lab : split_list(s)) {
    auto id = g.find(lab);
    if (!id) fail(ErrorKind::InvalidArgument, "unknown node '" + lab + "'");
    out.push_back(*id);
  }
  return make_node_set(out);
}

template <class G>
json labels(const G& g, const std::vector<int>& nodes) {
  json a = json::array();
  for (int v : nodes) a.push_back(g.label(v));
  return a;
}

std::map<std::string, double> param_map(const std::vector<std::string>& ps) {
  std::map<std::string, double> m;
  for (const auto& p : ps) {
    auto eq = p.find('=');
    if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "parameter '" + p + "' is not k=v");
    m[p.substr(0, eq)] = parse_doubles(p.substr(eq + 1)).at(0);
  }
  return m;
}

Mat json_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    fail(ErrorKind::ParseError, std::string("matrix '") + what + "' must be a list of rows");
  Mat M(j.size(), j[0].size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != j[0].size())
      fail(ErrorKind::DimensionMismatch, std::string("ragged matrix '") + what + "'");
    for (size_t k = 0; k < j[i].size(); ++k) M(i, k) = j[i][k].get<double>();
  }
  return M;
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Either a JSON file {"A": .., "B": .., "C": .., "L": ..} or an edge list with
// driver labels and an optional uniform self-loop.
DenseSystem load_system(const Opts& o, Mat* gain = nullptr) {
  DenseSystem s;
  if (!o.system.empty()) {
    json j;
    try {
      j = json::parse(read_text(o.system));
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("system file: ") + e.what());
    }
    s.A = json_matrix(j.at("A"), "A");
    s.B = j.contains("B") ? json_matrix(j["B"], "B") : Mat(s.A.rows(), 0);
    s.C = j.contains("C") ? json_matrix(j["C"], "C") : Mat(0, s.A.cols());
    if (gain && j.contains("L")) *gain = json_matrix(j["L"], "L");
    return s;
  }
  DiGraph g = load_digraph(o.input);
  s.A = adjacency_matrix(g);
  s.A.diagonal().array() += o.diag;
  // without --drivers, a PBH driver set makes the pair controllable
  s.B = input_matrix(g.n(), o.drivers.empty() ? pbh_min_drivers(s.A).drivers : nodes_of(g, o.drivers));
  s.C = Mat(0, g.n());
  return s;
}

std::string trace_csv(const SimTrace& t) { return t.to_csv(); }

json summary_json(const SimTrace& t) {
  json s = json::object();
  for (const auto& [k, v] : t.summary) s[k] = v;
  return s;
}

json trace_json(const SimTrace& t) {
  json j;
  j["columns"] = t.columns;
  j["t"] = t.t;
  j["rows"] = t.rows;
  return j;
}

template <class Fn>
void parallel_for(int count, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (int i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// ---- structural ----

Out cmd_drivers(const Opts& o) {
  auto parsed = parse_edge_list(read_text(o.input), true);
  const DiGraph& g = std::get<DiGraph>(parsed);
  BipartiteRep b = bipartite_rep(g);
  Matching mm = maximum_matching(b);
  DriverReport r = min_driver_set(g);
  Out out;
  out.j["n"] = g.n();
  out.j["m"] = g.m();
  out.j["n_d"] = r.n_d;
  out.j["drivers"] = labels(g, r.drivers);
  out.j["matching_size"] = mm.size;
  out.j["perfect"] = r.perfect;
  json me = json::array();
  for (auto [t, h] : r.matching.edges()) me.push_back({g.label(t), g.label(h)});
  out.j["matching"] = me;
  return out;
}

Out cmd_check(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  NodeSet d = nodes_of(g, o.drivers);
  ControllabilityCheck c = structural_controllability_check(g, d);
  NodeSet reached = reachable_from(g, d);
  Out out;
  out.j["controllable"] = c.controllable;
  out.j["reached"] = static_cast<int>(reached.size());
  const char* kinds[] = {"none", "inaccessible", "dilation"};
  out.j["witness_kind"] = kinds[static_cast<int>(c.witness_kind)];
  out.j["witness"] = labels(g, c.witness);
  json nb = json::array();
  for (int v : c.neighborhood) nb.push_back(v >= 0 ? g.label(v) : "u" + std::to_string(-v));
  out.j["neighborhood"] = nb;
  return out;
}

Out cmd_classify_links(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  auto cls = classify_links(g);
  DirectedCore core = directed_core(g);
  ClassFractions f = fractions(cls);
  Out out;
  out.j["l_c"] = f.critical;
  out.j["l_r"] = f.redundant;
  out.j["l_o"] = f.middle;
  out.j["n_core"] = core.n_core;
  out.j["core"] = labels(g, core.nodes);
  json links = json::array();
  std::ostringstream csv;
  csv << "src,dst,class\n";
  for (size_t e = 0; e < cls.size(); ++e) {
    const Edge& ed = g.edge(static_cast<int>(e));
    links.push_back({{"src", g.label(ed.src)}, {"dst", g.label(ed.dst)}, {"class", to_string(cls[e])}});
    csv << g.label(ed.src) << ',' << g.label(ed.dst) << ',' << to_string(cls[e]) << '\n';
  }
  out.j["links"] = links;
  out.csv = csv.str();
  return out;
}

Out cmd_classify_nodes(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  auto a = classify_nodes(g);
  auto d = classify_nodes_deletion(g);
  ClassFractions fa = fractions(a), fd = fractions(d);
  Out out;
  out.j["critical"] = fa.critical;
  out.j["intermittent"] = fa.middle;
  out.j["redundant"] = fa.redundant;
  out.j["deletion_critical"] = fd.critical;
  out.j["deletion_ordinary"] = fd.middle;
  out.j["deletion_redundant"] = fd.redundant;
  json nodes = json::array();
  std::ostringstream csv;
  csv << "node,class,deletion\n";
  for (int v = 0; v < g.n(); ++v) {
    nodes.push_back({{"node", g.label(v)}, {"class", to_string(a[v])}, {"deletion", to_string(d[v])}});
    csv << g.label(v) << ',' << to_string(a[v]) << ',' << to_string(d[v]) << '\n';
  }
  out.j["nodes"] = nodes;
  out.csv = csv.str();
  return out;
}

Out cmd_profile(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  ControlProfile p = control_profile(g);
  Out out;
  out.j["n"] = p.n;
  out.j["n_d"] = p.n_d;
  out.j["n_s"] = p.n_s;
  out.j["n_t"] = p.n_t;
  out.j["n_e"] = p.n_e;
  out.j["n_i"] = p.n_i;
  out.j["eta_s"] = p.eta_s;
  out.j["eta_e"] = p.eta_e;
  out.j["eta_i"] = p.eta_i;
  return out;
}

Out cmd_centrality(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  Out out;
  if (!o.nodes.empty()) {
    NodeSet s = nodes_of(g, o.nodes);
    CyclePartition cp = max_weight_cycle_partition(g, s);
    out.j["nodes"] = labels(g, s);
    out.j["cycle_partition_weight"] = cp.weight;
    out.j["centrality"] = control_centrality(g, s);
    return out;
  }
  json all = json::array();
  std::ostringstream csv;
  csv << "node,centrality\n";
  std::vector<int> c(g.n());
  parallel_for(g.n(), o.jobs, [&](int v) { c[v] = control_centrality(g, {v}); });
  for (int v = 0; v < g.n(); ++v) {
    all.push_back({{"node", g.label(v)}, {"centrality", c[v]}});
    csv << g.label(v) << ',' << c[v] << '\n';
  }
  out.j["centrality"] = all;
  out.csv = csv.str();
  return out;
}

Out cmd_actuators(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  ActuatorReport a = min_actuators(g);
  Out out;
  out.j["n_d"] = a.n_d;
  out.j["beta"] = a.beta;
  out.j["alpha"] = a.alpha;
  out.j["n_da"] = a.n_da;
  out.j["actuators"] = labels(g, a.actuators);
  return out;
}

Out cmd_switchboard(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  NodeSet d = switchboard_drivers(g);
  Out out;
  out.j["n_d"] = static_cast<int>(d.size());
  out.j["drivers"] = labels(g, d);
  return out;
}

Out cmd_cavity(const Opts& o) {
  Out out;
  DegreeDistribution dist = DegreeDistribution::poisson(o.kmean / 2);
  EnsembleKind kind = EnsembleKind::ER;
  if (o.dist == "sf") {
    dist = DegreeDistribution::sf_static(o.kmean, o.gamma);
    kind = EnsembleKind::SfStatic;
  }
  CavityResult r = solve_cavity(dist, dist, o.kmean);
  double asym = nd_asymptotic(kind, o.kmean, o.gamma);
  out.j["dist"] = o.dist;
  out.j["kmean"] = o.kmean;
  if (o.dist == "sf") out.j["gamma"] = o.gamma;
  out.j["n_d"] = r.n_d;
  out.j["asymptotic"] = asym;
  out.j["iterations"] = r.iterations;
  out.j["residual"] = r.residual;
  return out;
}

// ---- exact ----

Mat shape_matrix(const std::string& shape, int n) {
  if (shape == "chain") return adjacency_matrix(path_graph(n));
  if (shape == "ring") return adjacency_matrix(ring_graph(n));
  if (shape == "star") return adjacency_matrix(star_graph(n));
  if (shape == "complete") return adjacency_matrix(complete_graph(n));
  fail(ErrorKind::InvalidArgument, "unknown shape '" + shape + "'");
}

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Out cmd_exact(const Opts& o) {
  Out out;
  Mat A;
  std::vector<std::string> names;
  if (!o.shape.empty()) {
    A = shape_matrix(o.shape, o.n);
    for (int i = 0; i < o.n; ++i) names.push_back(std::to_string(i));
  } else if (!o.input.empty()) {
    DiGraph g = load_digraph(o.input);
    A = adjacency_matrix(g);
    names = g.labels();
  } else {
    Rng rng = make_rng(o.seed, 0);
    DiGraph g = er_digraph(o.n, o.kmean, rng);
    A = adjacency_matrix(g);
    if (o.random_weights) {
      std::uniform_real_distribution<double> w(0.5, 1.5);
      for (const Edge& e : g.edges()) A(e.dst, e.src) = w(rng);
    }
    for (int i = 0; i < o.n; ++i) names.push_back(std::to_string(i));
  }
  if (o.sweep) {
    auto lw = parse_doubles(o.loop_weights);
    if (lw.size() == 1) lw.insert(lw.begin(), 0.0);
    auto grid = parse_doubles(o.rho);
    std::vector<std::vector<double>> dens;
    for (double r : grid) {
      if (lw.size() == 2)
        dens.push_back({1 - r, r});
      else
        fail(ErrorKind::InvalidArgument, "sweep takes one or two loop weights");
    }
    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < o.seeds; ++s) seeds.push_back(o.seed + s);
    std::vector<SweepPoint> pts(dens.size());
    parallel_for(static_cast<int>(dens.size()), o.jobs, [&](int i) {
      pts[i] = self_loop_sweep(A, lw, {dens[i]}, seeds).front();
    });
    json arr = json::array();
    std::ostringstream csv;
    csv << "rho,mean,stderr\n";
    csv.precision(10);
    for (size_t i = 0; i < pts.size(); ++i) {
      arr.push_back({{"rho", grid[i]}, {"mean", pts[i].mean}, {"stderr", pts[i].stderr_}});
      csv << grid[i] << ',' << pts[i].mean << ',' << pts[i].stderr_ << '\n';
    }
    out.j["sweep"] = arr;
    out.csv = csv.str();
    return out;
  }
  PbhResult p = pbh_min_drivers(A);
  EigenStructure es = eigen_table(A);
  out.j["n"] = static_cast<int>(A.rows());
  out.j["n_d"] = p.n_d;
  out.j["lambda_max"] = cplx_json(p.lambda_max);
  out.j["mu_max"] = p.mu_max;
  json dr = json::array();
  for (int v : p.drivers) dr.push_back(names[v]);
  out.j["drivers"] = dr;
  out.j["verified"] = p.verified;
  out.j["extended"] = p.extended;
  json cl = json::array();
  for (const auto& c : es.clusters)
    cl.push_back({{"re", c.lambda.real()}, {"im", c.lambda.imag()}, {"algebraic", c.algebraic},
                  {"geometric", c.geometric}});
  out.j["eigenvalues"] = cl;
  DenseSystem sys{A, input_matrix(static_cast<int>(A.rows()), p.drivers), Mat()};
  KalmanResult k = kalman_rank(sys);
  out.j["kalman_rank"] = k.rank;
  out.j["controllable"] = k.controllable;
  out.j["kalman_used_pbh"] = k.used_pbh;
  return out;
}

// ---- energy ----

Out cmd_energy(const Opts& o) {
  DenseSystem s = load_system(o);
  GramianResult g = gramian(s, o.T);
  EnergyBounds eb = energy_bounds(s, o.T);
  Out out;
  out.j["T"] = o.T;
  out.j["cond"] = std::isfinite(g.cond) ? json(g.cond) : json("inf");
  out.j["ill_conditioned"] = g.ill_conditioned;
  out.j["eta"] = vec_json(g.eta);
  out.j["e_min"] = eb.e_min;
  out.j["e_max"] = eb.e_max_infinite ? json("inf") : json(eb.e_max);
  out.j["e_max_infinite"] = eb.e_max_infinite;
  if (!o.xf.empty()) {
    Vec xi = vec_of(o.xi, s.n()), xf = vec_of(o.xf, s.n());
    MinEnergyResult me = min_energy_input(s, xi, xf, o.T, o.steps);
    out.j["energy"] = me.energy;
    out.j["energy_quadrature"] = me.energy_quad;
    out.j["terminal_error"] = (me.x_final - xf).norm();
    out.csv = trace_csv(me.trace);
  }
  return out;
}

Out cmd_spectrum(const Opts& o) {
  DenseSystem s = load_system(o);
  SpectrumMode mode = SpectrumMode::Reach;
  if (o.mode == "return")
    mode = SpectrumMode::Return;
  else if (!o.mode.empty() && o.mode != "reach")
    fail(ErrorKind::InvalidArgument, "mode must be reach or return");
  EnergySpectrum sp = energy_spectrum(s, o.T, mode, o.bins);
  Out out;
  out.j["T"] = o.T;
  out.j["mode"] = mode == SpectrumMode::Reach ? "reach" : "return";
  out.j["energies"] = sp.energies;
  out.j["tail_slope"] = sp.tail_slope;
  json bins = json::array();
  std::ostringstream csv;
  csv.precision(10);
  csv << "E,density\n";
  for (size_t b = 0; b < sp.bin_center.size(); ++b) {
    bins.push_back({sp.bin_center[b], sp.density[b]});
    csv << sp.bin_center[b] << ',' << sp.density[b] << '\n';
  }
  out.j["density"] = bins;
  out.csv = csv.str();
  return out;
}

// ---- observability ----

DiGraph inference_input(const Opts& o, json* extra) {
  if (!o.reactions.empty()) {
    ReactionSystem rs = parse_reactions(read_text(o.reactions));
    DiGraph g = inference_diagram(rs);
    if (extra) {
      (*extra)["species"] = rs.species;
      (*extra)["reactions"] = rs.r();
      json ed = json::array();
      for (const Edge& e : g.edges()) ed.push_back({g.label(e.src), g.label(e.dst)});
      (*extra)["inference_edges"] = ed;
    }
    return g;
  }
  return load_digraph(o.input);
}

Out cmd_sensors(const Opts& o) {
  Out out;
  DiGraph g = inference_input(o, &out.j);
  SccDecomposition d = scc_decompose(g);
  SensorReport r = min_sensors(g);
  DiGraph t = transpose(g);
  DriverReport dual = sensors_via_duality(g);
  out.j["scc_count"] = d.count();
  json roots = json::array();
  for (const auto& m : r.root_sccs) roots.push_back(labels(g, m));
  out.j["root_sccs"] = roots;
  out.j["n_sensors"] = r.n_sensors;
  out.j["sensors"] = labels(g, r.sensors);
  out.j["singleton_roots"] = labels(g, r.singleton_roots);
  out.j["multiplicity"] = r.multiplicity;
  out.j["transpose_edges"] = t.m();
  out.j["structural_sensors"] = dual.n_d;
  out.j["structural_sensor_set"] = labels(g, dual.drivers);
  if (!o.validate.empty()) out.j["valid"] = is_sensor_set(g, nodes_of(g, o.validate));
  return out;
}

Out cmd_target_sensor(const Opts& o) {
  DiGraph g = inference_input(o, nullptr);
  TargetSensor ts = target_sensor(g, nodes_of(g, o.targets));
  Out out;
  out.j["targets"] = labels(g, nodes_of(g, o.targets));
  out.j["sensor"] = g.label(ts.sensor);
  out.j["cost"] = ts.cost;
  return out;
}

Out cmd_mds(const Opts& o) {
  UnGraph g = load_ungraph(o.input);
  MdsResult r = mds_solve(g);
  Out out;
  out.j["size"] = static_cast<int>(r.nodes.size());
  out.j["nodes"] = labels(g, r.nodes);
  out.j["exact"] = r.exact;
  out.j["core_size"] = r.core_size;
  if (o.brute) out.j["optimum"] = static_cast<int>(mds_brute_force(g).size());
  return out;
}

Out cmd_obs_transition(const Opts& o) {
  UnGraph g;
  if (!o.input.empty()) {
    g = load_ungraph(o.input);
  } else {
    Rng rng = make_rng(o.seed, 0);
    g = er_ungraph(o.n, o.kmean, rng);
  }
  Out out;
  out.j["n"] = g.n();
  if (o.threshold) {
    out.j["threshold"] = observability_threshold(g, o.trials, o.seed);
    return out;
  }
  TransitionPoint tp = observability_transition(g, o.phi, o.trials, o.seed);
  out.j["phi"] = tp.phi;
  out.j["fraction"] = tp.mean;
  out.j["stderr"] = tp.stderr_;
  return out;
}

Out cmd_observer(const Opts& o) {
  Mat L;
  DenseSystem s = load_system(o, &L);
  if (L.size() == 0) fail(ErrorKind::InvalidArgument, "system file needs an observer gain \"L\"");
  SimTrace tr = luenberger_observe(s, L, vec_of(o.x0, s.n(), 1.0), vec_of(o.z0, s.n()), o.T, o.samples);
  Out out;
  out.j["summary"] = summary_json(tr);
  out.j["trace"] = trace_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

// ---- steering ----

Out cmd_hubler(const Opts& o) {
  OdeSystem sys = make_system(o.system.empty() ? "lorenz" : o.system, param_map(o.params));
  const int n = sys.dim;
  Vec amp = vec_of(o.amp, n), om = vec_of(o.omega, n), c = vec_of(o.center, n);
  auto goal = [=](double t) -> Vec { return c + amp.cwiseProduct((om * t).array().sin().matrix()); };
  auto goal_dot = [=](double t) -> Vec {
    return amp.cwiseProduct(om).cwiseProduct((om * t).array().cos().matrix());
  };
  Vec x0 = goal(0) + vec_of(o.x0, n);
  SimTrace tr = hubler_input(sys, Mat::Identity(n, n), goal, goal_dot, x0, o.T, o.samples);
  Out out;
  out.j["system"] = sys.name;
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

Out cmd_ogy(const Opts& o) {
  HenonParams hp;
  hp.p = o.p;
  hp.b = o.b;
  hp.delta = o.delta;
  hp.cap = o.cap;
  Vec x0 = vec_of(o.x0, 2);
  SimTrace tr = ogy_stabilize_henon(hp, Eigen::Vector2d(x0(0), x0(1)), o.steps, o.seed);
  HenonFixedPoint fp = henon_fixed_point(hp);
  Out out;
  out.j["fixed_point"] = fp.x;
  out.j["gain"] = {fp.gain(0), fp.gain(1)};
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

Out cmd_pyragas(const Opts& o) {
  OdeSystem sys = make_system(o.system.empty() ? "rossler" : o.system, param_map(o.params));
  Vec x0 = vec_of(o.x0.empty() ? "1,1,0" : o.x0, sys.dim);
  Out out;
  double tau = o.tau;
  if (!(tau > 0)) {
    PeriodicOrbit po = find_period_one_orbit(sys, x0);
    tau = po.period;
    out.j["orbit_residual"] = po.residual;
    out.j["close_return"] = po.close_return;
  }
  if (o.coord < 0 || o.coord >= sys.dim) fail(ErrorKind::InvalidArgument, "output coordinate out of range");
  const int c = o.coord;
  PyragasOptions po;
  po.dt = o.dt;
  SimTrace tr = pyragas_feedback(sys, [c](const Vec& x) { return x(c); }, o.K, tau, x0, o.T, po);
  out.j["tau"] = tau;
  out.j["K"] = o.K;
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

Out cmd_compensate(const Opts& o) {
  OdeSystem sys = make_system(o.system.empty() ? "bistable" : o.system, param_map(o.params));
  const int n = sys.dim;
  PerturbationConstraints pc;
  pc.control_set = make_node_set(parse_ints(o.control));
  if (!o.lower.empty()) pc.lower = vec_of(o.lower, n);
  if (!o.upper.empty()) pc.upper = vec_of(o.upper, n);
  Vec x0 = vec_of(o.x0.empty() ? "-0.5" : o.x0, n);
  Vec target = vec_of(o.targets.empty() ? "1" : o.targets, n);
  CompensationResult r = compensatory_perturbation(sys, x0, target, pc, o.budget, o.ball, o.tcheck);
  Out out;
  out.j["success"] = r.success;
  out.j["iterations"] = r.iterations;
  out.j["x0_new"] = vec_json(r.x0_new);
  out.j["closest"] = r.closest;
  return out;
}

Out cmd_fvs(const Opts& o) {
  DiGraph g = load_digraph(o.input);
  FvsMode mode = FvsMode::Heuristic;
  if (o.mode == "exact" || (o.mode.empty() && g.n() <= 15)) mode = FvsMode::Exact;
  else if (!o.mode.empty() && o.mode != "heuristic")
    fail(ErrorKind::InvalidArgument, "mode must be exact or heuristic");
  FvsResult r = fvs_find(g, mode);
  Out out;
  out.j["size"] = static_cast<int>(r.nodes.size());
  out.j["nodes"] = labels(g, r.nodes);
  out.j["exact"] = r.exact;
  out.j["minimal"] = r.minimal;
  out.j["order"] = labels(g, r.order);
  return out;
}

Out cmd_clamp(const Opts& o) {
  OdeSystem sys = make_system(o.system.empty() ? "toggle" : o.system, param_map(o.params));
  const int d = sys.dim;
  if (d > 4) fail(ErrorKind::InvalidArgument, "attractor search supports at most 4 variables");
  // Stable states from a start grid on [0, 5]^d.
  std::vector<Vec> starts;
  const int per = 6;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= per;
  for (int k = 0; k < total; ++k) {
    Vec v(d);
    for (int i = 0, r = k; i < d; ++i, r /= per) v(i) = 5.0 * (r % per) / (per - 1);
    starts.push_back(v);
  }
  auto att = find_stable_states(sys, starts);
  if (att.size() < 2) fail(ErrorKind::InvalidArgument, "system has fewer than two stable states");
  int from = o.from < 0 ? static_cast<int>(att.size()) - 1 : o.from;
  if (from >= static_cast<int>(att.size()) || o.to < 0 || o.to >= static_cast<int>(att.size()))
    fail(ErrorKind::InvalidArgument, "attractor index out of range");
  NodeSet fvs;
  Out out;
  if (!o.fvs.empty()) {
    fvs = make_node_set(parse_ints(o.fvs));
  } else {
    // Interaction digraph from the Jacobian pattern at a few points; decay terms excluded.
    Rng rng = make_rng(o.seed, 11);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    Mat S = Mat::Zero(d, d);
    for (int k = 0; k < 3; ++k) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x(i) = u(rng);
      S += sys.jacobian(0, x).cwiseAbs();
    }
    S.diagonal().setZero();
    DiGraph g = system_digraph(inference_diagram(S));
    fvs = fvs_find(g, FvsMode::Exact).nodes;
  }
  SimTrace tr = fvs_clamp(sys, fvs, att[from], {0.0, o.T}, {att[o.to], att[o.to]}, o.T, o.substeps);
  json a = json::array();
  for (const Vec& v : att) a.push_back(vec_json(v));
  out.j["attractors"] = a;
  out.j["from"] = from;
  out.j["to"] = o.to;
  out.j["fvs"] = fvs;
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

// ---- collective ----

UnGraph shape_graph(const std::string& shape, int n) {
  if (shape == "chain") return path_graph(n);
  if (shape == "ring") return ring_graph(n);
  if (shape == "star") return star_graph(n);
  if (shape == "complete") return complete_graph(n);
  fail(ErrorKind::InvalidArgument, "unknown shape '" + shape + "'");
}

Out cmd_msf(const Opts& o) {
  EigenRatio r;
  if (!o.shape.empty())
    r = msf_eigenratio(shape_graph(o.shape, o.n));
  else if (o.directed)
    r = msf_eigenratio(load_digraph(o.input));
  else
    r = msf_eigenratio(load_ungraph(o.input));
  Out out;
  out.j["lambda2"] = r.lambda2;
  out.j["lambda_n"] = r.lambda_n;
  out.j["ratio"] = r.ratio;
  return out;
}

Out cmd_pinning(const Opts& o) {
  UnGraph g;
  if (!o.input.empty()) {
    g = load_ungraph(o.input);
  } else {
    Rng rng = make_rng(o.seed, 0);
    g = preferential_attachment(o.n, o.m, rng);
  }
  const int count = std::max(o.fraction > 0 ? 1 : 0, static_cast<int>(std::lround(o.fraction * g.n())));
  NodeSet pins;
  if (o.strategy == "degree") {
    pins = pin_by_degree(g, count);
  } else if (o.strategy == "random") {
    Rng rng = make_rng(o.seed, 1);
    pins = pin_random(g.n(), count, rng);
  } else {
    fail(ErrorKind::InvalidArgument, "strategy must be degree or random");
  }
  PinningConfig cfg;
  cfg.G = laplacian(g);
  cfg.sigma = o.sigma;
  cfg.pinned = pins;
  std::vector<double> kappas{o.kappa};
  if (!o.kappa_grid.empty()) {
    auto gv = parse_doubles(o.kappa_grid);
    if (gv.size() != 3 || !(gv[0] > 0) || !(gv[1] > gv[0]) || gv[2] < 2)
      fail(ErrorKind::InvalidArgument, "--kappa-grid is lo,hi,count with 0 < lo < hi, count >= 2");
    kappas.clear();
    for (int i = 0; i < static_cast<int>(gv[2]); ++i)
      kappas.push_back(gv[0] * std::pow(gv[1] / gv[0], i / (gv[2] - 1)));
  }
  std::vector<EigenRatio> res(kappas.size());
  parallel_for(static_cast<int>(kappas.size()), o.jobs, [&](int i) {
    PinningConfig c = cfg;
    c.kappa = {kappas[i]};
    res[i] = pinning_eigenratio(c);
  });
  Out out;
  out.j["n"] = g.n();
  out.j["pinned"] = static_cast<int>(pins.size());
  json arr = json::array();
  std::ostringstream csv;
  csv.precision(10);
  csv << "kappa,lambda2,lambda_max,ratio\n";
  for (size_t i = 0; i < kappas.size(); ++i) {
    arr.push_back({{"kappa", kappas[i]}, {"lambda2", res[i].lambda2}, {"lambda_max", res[i].lambda_n},
                   {"ratio", res[i].ratio}});
    csv << kappas[i] << ',' << res[i].lambda2 << ',' << res[i].lambda_n << ',' << res[i].ratio << '\n';
  }
  out.j["points"] = arr;
  out.csv = csv.str();
  return out;
}

Out cmd_pinning_sim(const Opts& o) {
  OdeSystem osc = make_system(o.system.empty() ? "rossler" : o.system, param_map(o.params));
  UnGraph g = o.input.empty() ? ring_graph(o.n) : load_ungraph(o.input);
  PinningConfig cfg;
  cfg.G = laplacian(g);
  cfg.sigma = o.sigma;
  cfg.kappa = {o.kappa};
  cfg.pinned = o.pinned.empty() ? pin_by_degree(g, std::max(1, static_cast<int>(std::lround(o.fraction * g.n()))))
                                : nodes_of(g, o.pinned);
  SyncOptions so;
  so.T = o.T;
  so.samples = o.samples;
  so.adaptive = o.adaptive;
  so.q = parse_doubles(o.q);
  so.spread = o.spread;
  so.seed = o.seed;
  Vec s0 = integrate(osc.autonomous(), Vec::Ones(osc.dim), 0, 100);
  SimTrace tr = pinning_sync_simulate(cfg, osc, Mat::Identity(osc.dim, osc.dim), s0, so);
  Out out;
  out.j["pinned"] = labels(g, cfg.pinned);
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

VicsekParams vicsek_params(const Opts& o) {
  VicsekParams p;
  p.n = o.n;
  p.L = o.L;
  p.v0 = o.v0;
  p.r = o.r;
  p.eta = o.eta;
  p.seed = o.seed;
  return p;
}

Out cmd_vicsek(const Opts& o) {
  VicsekParams base = vicsek_params(o);
  const int k = std::max(1, o.seeds);
  std::vector<OrderParameter> res(k);
  parallel_for(k, o.jobs, [&](int i) {
    VicsekParams p = base;
    p.seed = base.seed + i;
    res[i] = vicsek_order_parameter(p, o.steps, o.transient);
  });
  std::vector<double> means;
  json per = json::array();
  for (int i = 0; i < k; ++i) {
    means.push_back(res[i].mean);
    per.push_back({{"seed", base.seed + i}, {"mean", res[i].mean}, {"stderr", res[i].stderr_}});
  }
  MeanErr me = mean_stderr(means);
  Out out;
  out.j["phi"] = k > 1 ? me.mean : res[0].mean;
  out.j["stderr"] = k > 1 ? me.stderr_ : res[0].stderr_;
  out.j["runs"] = per;
  if (o.snapshot) {
    VicsekState s = vicsek_init(base);
    for (int t = 0; t < o.steps; ++t) s = vicsek_step(s);
    std::ostringstream csv;
    csv.precision(10);
    csv << "t,i,x,y,theta\n";
    for (int i = 0; i < base.n; ++i)
      csv << s.step << ',' << i << ',' << s.x[i] << ',' << s.y[i] << ',' << s.theta[i] << '\n';
    out.csv = csv.str();
  } else {
    out.csv = trace_csv(res[0].trace);
  }
  return out;
}

Out cmd_vicsek_leader(const Opts& o) {
  SimTrace tr = vicsek_leader_run(vicsek_params(o), o.theta0, o.steps, !o.no_leader);
  Out out;
  out.j["theta0"] = o.theta0;
  out.j["summary"] = summary_json(tr);
  out.csv = trace_csv(tr);
  return out;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ' ';
      s += csv_cell(e);
    }
    return s;
  }
  return v.dump();
}

std::string flatten_csv(const json& j) {
  std::string head, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) {
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        if (jt.value().is_object()) continue;
        head += (head.empty() ? "" : ",") + it.key() + "." + jt.key();
        row += (row.empty() ? "" : ",") + csv_cell(jt.value());
      }
      continue;
    }
    if (it.value().is_array() && !it.value().empty() && it.value()[0].is_object()) continue;
    head += (head.empty() ? "" : ",") + it.key();
    row += (row.empty() ? "" : ",") + csv_cell(it.value());
  }
  return head + "\n" + row + "\n";
}

using Handler = Out (*)(const Opts&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"drivers", cmd_drivers},
      {"check", cmd_check},
      {"classify-links", cmd_classify_links},
      {"classify-nodes", cmd_classify_nodes},
      {"profile", cmd_profile},
      {"centrality", cmd_centrality},
      {"actuators", cmd_actuators},
      {"switchboard", cmd_switchboard},
      {"cavity", cmd_cavity},
      {"exact-nd", cmd_exact},
      {"energy", cmd_energy},
      {"spectrum", cmd_spectrum},
      {"sensors", cmd_sensors},
      {"target-sensor", cmd_target_sensor},
      {"mds", cmd_mds},
      {"obs-transition", cmd_obs_transition},
      {"observer", cmd_observer},
      {"hubler", cmd_hubler},
      {"ogy", cmd_ogy},
      {"pyragas", cmd_pyragas},
      {"compensate", cmd_compensate},
      {"fvs", cmd_fvs},
      {"clamp", cmd_clamp},
      {"msf", cmd_msf},
      {"pinning", cmd_pinning},
      {"pinning-sim", cmd_pinning_sim},
      {"vicsek", cmd_vicsek},
      {"vicsek-leader", cmd_vicsek_leader},
  };
  return h;
}

void add_options(const std::string& name, CLI::App* s, Opts& o) {
  auto input = [&](const char* help = "edge list file, '-' for stdin") {
    s->add_option("--input,-i", o.input, help);
  };
  auto sys_opts = [&] {
    s->add_option("--system", o.system, "JSON file with matrices A, B (C, L)");
    input("edge list giving A (alternative to --system)");
    s->add_option("--drivers", o.drivers, "driver labels, comma separated");
    s->add_option("--diag", o.diag, "value added to every diagonal entry of A");
    s->add_option("--T", o.T, "time horizon");
  };
  auto toy = [&](const char* def) {
    s->add_option("--system", o.system, std::string("toy system name (default ") + def + ")");
    s->add_option("--param", o.params, "parameter override k=v, repeatable");
  };
  auto vicsek = [&] {
    s->add_option("--n", o.n, "agents");
    s->add_option("--L", o.L, "box side");
    s->add_option("--v0", o.v0, "speed");
    s->add_option("--r", o.r, "interaction radius");
    s->add_option("--eta", o.eta, "noise amplitude");
    s->add_option("--steps", o.steps, "time steps");
  };
  if (name == "drivers" || name == "classify-links" || name == "classify-nodes" ||
      name == "profile" || name == "actuators" || name == "switchboard") {
    input();
  } else if (name == "check") {
    input();
    s->add_option("--drivers", o.drivers, "driver labels, comma separated")->required();
  } else if (name == "centrality") {
    input();
    s->add_option("--nodes", o.nodes, "controlled node labels (default: every node alone)");
  } else if (name == "cavity") {
    s->add_option("--dist", o.dist, "degree distribution")->check(CLI::IsMember({"er", "sf"}));
    s->add_option("--kmean", o.kmean, "mean total degree");
    s->add_option("--gamma", o.gamma, "scale-free exponent");
  } else if (name == "exact-nd") {
    input("weighted edge list");
    s->add_option("--shape", o.shape, "chain, ring, star or complete");
    s->add_option("--n", o.n, "nodes for --shape or the random graph");
    s->add_option("--kmean", o.kmean, "mean degree of the random graph");
    s->add_flag("--random-weights", o.random_weights, "edge weights uniform in [0.5, 1.5]");
    s->add_flag("--sweep", o.sweep, "self-loop density sweep");
    s->add_option("--loop-weights", o.loop_weights, "self-loop weights");
    s->add_option("--rho", o.rho, "densities of the last loop weight");
    s->add_option("--seeds", o.seeds, "assignments per density");
  } else if (name == "energy") {
    sys_opts();
    s->add_option("--xi", o.xi, "initial state");
    s->add_option("--xf", o.xf, "final state (enables the optimal input)");
    s->add_option("--steps", o.steps, "time steps of the sampled input");
  } else if (name == "spectrum") {
    sys_opts();
    s->add_option("--mode", o.mode, "reach or return");
    s->add_option("--bins", o.bins, "log bins");
  } else if (name == "sensors" || name == "target-sensor") {
    input("inference diagram edge list");
    s->add_option("--reactions", o.reactions, "reaction file");
    if (name == "sensors")
      s->add_option("--validate", o.validate, "candidate sensor labels");
    else
      s->add_option("--targets", o.targets, "target labels")->required();
  } else if (name == "mds") {
    input("undirected edge list");
    s->add_flag("--brute", o.brute, "also report the exhaustive optimum");
  } else if (name == "obs-transition") {
    input("undirected edge list (default: random graph)");
    s->add_option("--n", o.n, "nodes of the random graph");
    s->add_option("--kmean", o.kmean, "mean degree of the random graph");
    s->add_option("--phi", o.phi, "fraction of nodes carrying a PMU");
    s->add_option("--trials", o.trials, "random placements");
    s->add_flag("--threshold", o.threshold, "bisect for the 0.5 crossing");
  } else if (name == "observer") {
    s->add_option("--system", o.system, "JSON file with A, C and gain L")->required();
    s->add_option("--x0", o.x0, "plant start (default ones)");
    s->add_option("--z0", o.z0, "observer start (default zeros)");
    s->add_option("--T", o.T, "horizon");
    s->add_option("--samples", o.samples, "output samples");
  } else if (name == "hubler") {
    toy("lorenz");
    s->add_option("--amp", o.amp, "goal amplitude per coordinate");
    s->add_option("--omega", o.omega, "goal frequency per coordinate");
    s->add_option("--center", o.center, "goal centre per coordinate");
    s->add_option("--x0", o.x0, "offset of the start from g(0)");
    s->add_option("--T", o.T, "horizon");
    s->add_option("--samples", o.samples, "output samples");
  } else if (name == "ogy") {
    s->add_option("--p", o.p, "nominal parameter");
    s->add_option("--b", o.b, "contraction");
    s->add_option("--delta", o.delta, "activation radius");
    s->add_option("--cap", o.cap, "parameter perturbation cap");
    s->add_option("--steps", o.steps, "iterations");
    s->add_option("--x0", o.x0, "start point");
  } else if (name == "pyragas") {
    toy("rossler");
    s->add_option("--K", o.K, "feedback gain");
    s->add_option("--tau", o.tau, "delay (default: period-one orbit)");
    s->add_option("--T", o.T, "horizon");
    s->add_option("--x0", o.x0, "start state");
    s->add_option("--coord", o.coord, "observed coordinate");
    s->add_option("--dt", o.dt, "step");
  } else if (name == "compensate") {
    toy("bistable");
    s->add_option("--x0", o.x0, "start state");
    s->add_option("--target", o.targets, "target state");
    s->add_option("--lower", o.lower, "lower bound on the total shift");
    s->add_option("--upper", o.upper, "upper bound on the total shift");
    s->add_option("--control", o.control, "perturbable coordinates");
    s->add_option("--budget", o.budget, "iterations");
    s->add_option("--kappa", o.ball, "target ball radius");
    s->add_option("--tcheck", o.tcheck, "check horizon");
  } else if (name == "fvs") {
    input();
    s->add_option("--mode", o.mode, "exact or heuristic (default exact for N <= 15)");
  } else if (name == "clamp") {
    toy("toggle");
    s->add_option("--fvs", o.fvs, "clamped coordinates (default: minimum FVS)");
    s->add_option("--from", o.from, "start attractor index (default last)");
    s->add_option("--to", o.to, "target attractor index");
    s->add_option("--T", o.T, "horizon");
    s->add_option("--substeps", o.substeps, "RK4 steps per sample interval");
  } else if (name == "msf") {
    input("edge list");
    s->add_flag("--directed", o.directed, "read a weighted digraph");
    s->add_option("--shape", o.shape, "chain, ring, star or complete");
    s->add_option("--n", o.n, "nodes for --shape");
  } else if (name == "pinning") {
    input("undirected edge list (default: preferential attachment)");
    s->add_option("--n", o.n, "nodes");
    s->add_option("--m", o.m, "links per new node");
    s->add_option("--sigma", o.sigma, "coupling gain");
    s->add_option("--kappa", o.kappa, "control gain");
    s->add_option("--kappa-grid", o.kappa_grid, "lo,hi,count log grid");
    s->add_option("--fraction", o.fraction, "pinned fraction");
    s->add_option("--strategy", o.strategy, "degree or random");
  } else if (name == "pinning-sim") {
    toy("rossler");
    input("undirected edge list (default: ring)");
    s->add_option("--n", o.n, "ring size");
    s->add_option("--sigma", o.sigma, "coupling gain");
    s->add_option("--kappa", o.kappa, "initial control gain");
    s->add_option("--pinned", o.pinned, "pinned labels");
    s->add_option("--fraction", o.fraction, "pinned fraction when --pinned is absent");
    s->add_flag("--adaptive", o.adaptive, "adapt gains");
    s->add_option("--q", o.q, "adaptation rates");
    s->add_option("--T", o.T, "horizon");
    s->add_option("--samples", o.samples, "output samples");
    s->add_option("--spread", o.spread, "initial offset amplitude");
  } else if (name == "vicsek") {
    vicsek();
    s->add_option("--transient", o.transient, "discarded steps (default half)");
    s->add_option("--seeds", o.seeds, "independent runs");
    s->add_flag("--snapshot", o.snapshot, "emit final agent states as CSV");
  } else if (name == "vicsek-leader") {
    vicsek();
    s->add_option("--theta0", o.theta0, "leader heading");
    s->add_flag("--no-leader", o.no_leader, "run the followers alone");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Opts o;
  o.steps = 1000;
  CLI::App app{"netctl: controllability, observability and steering of complex networks"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--output,-o", o.output, "write the report here instead of stdout");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = app.add_option("--seed", o.seed_text, "64-bit seed (default 0 or NETCTL_SEED)");
  app.add_option("--jobs,-j", o.jobs, "worker threads for independent runs")->check(CLI::PositiveNumber);
  for (const auto& c : dispatch_table()) add_options(c.name, app.add_subcommand(c.name, c.summary), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    std::string seed_text = o.seed_text;
    if (seed_opt->count() == 0) {
      if (const char* env = std::getenv("NETCTL_SEED")) seed_text = env;
    }
    if (!seed_text.empty()) {
      size_t pos = 0;
      try {
        o.seed = std::stoull(seed_text, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != seed_text.size() || seed_text[0] == '-') {
        err << "usage error: seed must be an unsigned 64-bit integer\n";
        return 2;
      }
    }
    // Some steering runs read --steps with their own default.
    if (name == "ogy" && sub->count("--steps") == 0) o.steps = 2000;
    if (name == "pyragas" && sub->count("--T") == 0) o.T = 300;
    if ((name == "hubler" || name == "observer") && sub->count("--T") == 0) o.T = 10;
    if (name == "clamp" && sub->count("--T") == 0) o.T = 30;
    if (name == "pinning-sim" && sub->count("--T") == 0) o.T = 200;
    if (name == "pinning" && sub->count("--n") == 0) o.n = 1000;
    if (name == "pinning" && sub->count("--sigma") == 0) o.sigma = 0.3;
    if (name == "pinning-sim" && sub->count("--sigma") == 0) o.sigma = 0.5;
    if ((name == "vicsek" || name == "vicsek-leader") && sub->count("--n") == 0) o.n = 300;
    if (name == "vicsek-leader" && sub->count("--eta") == 0) o.eta = 0;
    if (name == "obs-transition" && sub->count("--n") == 0) o.n = 10000;

    Out res = handlers().at(name)(o);
    std::string format = o.format.empty() ? (name == "cavity" ? "csv" : "json") : o.format;
    std::string text;
    if (format == "json") {
      json j;
      j["schema"] = "netctl/1";
      j["command"] = name;
      j["seed"] = o.seed;
      for (auto it = res.j.begin(); it != res.j.end(); ++it) j[it.key()] = it.value();
      text = j.dump(2) + "\n";
    } else {
      text = res.csv.empty() ? flatten_csv(res.j) : res.csv;
    }
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace netctl::cli
