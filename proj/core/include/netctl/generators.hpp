#pragma once

#include <vector>

#include "netctl/graph.hpp"
#include "netctl/rng.hpp"

namespace netctl {

// Directed ER with round(N<k>/2) distinct ordered pairs (<k> = <k_in> + <k_out>).
DiGraph er_digraph(int n, double k_mean, Rng& rng, bool self_loops = false);
// Each ordered pair independently with probability p.
DiGraph gnp_digraph(int n, double p, Rng& rng, bool self_loops = false);
UnGraph er_ungraph(int n, double k_mean, Rng& rng);
UnGraph preferential_attachment(int n, int m, Rng& rng);

// Directed static model: node weights i^{-1/(gamma-1)} for in and out ends,
// independently permuted; round(N<k>/2) edges, no loops or multi-edges.
DiGraph sf_static_digraph(int n, double k_mean, double gamma, Rng& rng);
UnGraph sf_static_ungraph(int n, double k_mean, double gamma, Rng& rng);

// Stub pairing; self-loops and multi-edges rejected by redrawing the whole
// pairing, up to `attempts` times, then RejectionFailure.
DiGraph configuration_digraph(const std::vector<int>& in_deg, const std::vector<int>& out_deg,
                              Rng& rng, int attempts = 100);
// Configuration-model graph with independent Poisson(<k>/2) in/out degrees.
// Individual bad stubs are redrawn (up to `attempts` per stub).
DiGraph poisson_configuration_digraph(int n, double k_mean, Rng& rng, int attempts = 100);

DiGraph random_relabel(const DiGraph& g, Rng& rng, std::vector<int>* perm = nullptr);

DiGraph directed_path(int n);
DiGraph directed_cycle(int n);
DiGraph out_star(int leaves);
DiGraph symmetric_digraph(const UnGraph& g);

UnGraph path_graph(int n);
UnGraph ring_graph(int n);
UnGraph star_graph(int n);
UnGraph complete_graph(int n);

}  // namespace netctl
