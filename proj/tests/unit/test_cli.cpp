#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "netctl/cli.hpp"

namespace {

struct Run {
  int rc = 0;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  args.insert(args.begin(), "netctl");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.rc = netctl::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("netctl_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const std::vector<std::string> kOperations = {
    "parse_edge_list", "transpose", "bipartite_rep", "maximum_matching", "scc_decompose",
    "max_weight_cycle_partition", "directed_core", "reachable_from", "min_driver_set",
    "structural_controllability_check", "classify_links", "classify_nodes",
    "classify_nodes_deletion", "control_profile", "control_centrality", "min_actuators",
    "switchboard_drivers", "solve_cavity", "nd_asymptotic", "kalman_rank", "pbh_min_drivers",
    "eigen_table", "self_loop_sweep", "gramian", "min_energy_input", "energy_bounds",
    "energy_spectrum", "inference_diagram", "min_sensors", "sensors_via_duality",
    "target_sensor", "mds_solve", "observability_transition", "luenberger_observe",
    "hubler_input", "ogy_stabilize_henon", "pyragas_feedback", "compensatory_perturbation",
    "fvs_find", "fvs_clamp", "msf_eigenratio", "pinning_eigenratio", "pinning_sync_simulate",
    "vicsek_step", "vicsek_order_parameter", "vicsek_leader_run"};

}  // namespace

TEST_CASE("every operation is reachable from exactly one subcommand") {
  std::map<std::string, int> seen;
  std::set<std::string> names;
  for (const auto& c : netctl::cli::dispatch_table()) {
    CHECK(names.insert(c.name).second);
    for (const auto& op : c.operations) ++seen[op];
  }
  CHECK(names.size() == 28);
  for (const auto& op : kOperations) {
    INFO(op);
    CHECK(seen[op] == 1);
  }
  CHECK(seen.size() == kOperations.size());
}

TEST_CASE("drivers on a path") {
  std::string f = temp_file("path.edges", "a b\nb c\n");
  Run r = call({"drivers", "--input", f});
  REQUIRE(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "netctl/1");
  CHECK(j["command"] == "drivers");
  CHECK(j["n_d"] == 1);
  CHECK(j["drivers"] == nlohmann::json::array({"a"}));
}

TEST_CASE("cavity prints a CSV row") {
  Run r = call({"cavity", "--dist", "er", "--kmean", "8"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("n_d") != std::string::npos);
  CHECK(r.out.find("0.0221596") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  Run r = call({"drivers", "--bogus"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("usage") != std::string::npos);
  CHECK(call({"no-such-command"}).rc == 2);
  CHECK(call({"drivers", "--input", "x", "--seed", "abc"}).rc == 2);
}

TEST_CASE("analysis errors exit 1 and name the variant") {
  std::string bad = temp_file("bad.edges", "a b c d\n");
  Run r = call({"drivers", "--input", bad});
  CHECK(r.rc == 1);
  CHECK(r.err.find("ParseError") != std::string::npos);
  Run missing = call({"drivers", "--input", "/nonexistent/file.edges"});
  CHECK(missing.rc == 1);
}

TEST_CASE("help exits 0") {
  Run r = call({"--help"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("drivers") != std::string::npos);
}

TEST_CASE("identical inputs give identical bytes") {
  Run a = call({"vicsek", "--n", "60", "--steps", "100", "--seed", "5"});
  Run b = call({"vicsek", "--n", "60", "--steps", "100", "--seed", "5"});
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);
  Run c = call({"vicsek", "--n", "60", "--steps", "100", "--seed", "6"});
  CHECK(a.out != c.out);
}

TEST_CASE("NETCTL_SEED supplies the default seed") {
  setenv("NETCTL_SEED", "17", 1);
  Run env = call({"ogy"});
  unsetenv("NETCTL_SEED");
  Run flag = call({"ogy", "--seed", "17"});
  REQUIRE(env.rc == 0);
  CHECK(nlohmann::json::parse(env.out)["seed"] == 17);
  CHECK(env.out == flag.out);
}

TEST_CASE("jobs do not change results") {
  std::string g = temp_file("er.edges", "1 2\n2 3\n3 1\n3 4\n4 5\n5 6\n6 4\n1 5\n");
  Run one = call({"exact-nd", "--input", g, "--jobs", "1"});
  Run two = call({"exact-nd", "--input", g, "--jobs", "3"});
  REQUIRE(one.rc == 0);
  CHECK(one.out == two.out);
}

TEST_CASE("output file and csv format") {
  std::string f = temp_file("ring.edges", "a b\nb c\nc a\n");
  auto out = (std::filesystem::temp_directory_path() / "netctl_cli_out.csv").string();
  Run r = call({"drivers", "--input", f, "--format", "csv", "-o", out});
  REQUIRE(r.rc == 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.find("n_d") != std::string::npos);
}

TEST_CASE("every subcommand runs on a small input") {
  std::string g = temp_file("small.edges", "a b\nb c\nc a\nc d\n");
  std::string sys = temp_file("sys.json", R"({"A":[[0,1],[-2,-0.5]],"C":[[1,0]],"L":[[3],[2]]})");
  std::string rx = temp_file("rx.txt", "k1: A -> B\nk2: B <-> C\n");
  std::map<std::string, std::vector<std::string>> extra = {
      {"check", {"--input", g, "--drivers", "a"}},
      {"target-sensor", {"--input", g, "--targets", "a"}},
      {"observer", {"--system", sys}},
      {"sensors", {"--reactions", rx}},
      {"vicsek", {"--n", "40", "--steps", "60"}},
      {"vicsek-leader", {"--n", "40", "--steps", "60"}},
      {"obs-transition", {"--input", g, "--trials", "3"}},
      {"pinning-sim", {"--input", g, "--T", "5"}},
      {"pyragas", {"--T", "40"}},
  };
  const std::set<std::string> no_graph = {"cavity", "hubler", "ogy", "pyragas", "compensate", "clamp"};
  for (const auto& c : netctl::cli::dispatch_table()) {
    std::vector<std::string> args{c.name};
    if (extra.count(c.name))
      for (const auto& a : extra[c.name]) args.push_back(a);
    else if (!no_graph.count(c.name))
      args.insert(args.end(), {"--input", g});
    Run r = call(args);
    INFO(c.name, " ", r.err);
    CHECK(r.rc == 0);
  }
}
