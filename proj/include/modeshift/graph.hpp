#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modeshift/rng.hpp"

namespace modeshift {

// Undirected simple graph in canonical form: neighbour lists strictly sorted,
// no self-loops, no multi-edges.
struct Graph {
    std::int64_t edge_count = 0;
    std::vector<std::vector<std::int32_t>> adj;

    int node_count() const { return static_cast<int>(adj.size()); }

    bool has_edge(std::int32_t a, std::int32_t b) const;

    // Sorts neighbour lists; call after bulk insertion.
    void canonicalize();
};

// Ring lattice of degree k rewired edge-by-edge with probability beta.
// Edge count is exactly n*k/2.
Graph watts_strogatz(int n, int k, double beta, RngStream& rng);

// Preferential attachment: seed clique on m0 nodes, then each new node
// attaches m distinct edges weighted by current degree.
// Edge count is exactly C(m0,2) + (n-m0)*m.
Graph barabasi_albert(int n, int m0, int m, RngStream& rng);

// Complete graph (fallback for tiny groups).
Graph complete_graph(int n);

// One preferential-attachment graph per group, over that group's members
// only. `groups[g]` lists the agent ids of group g; the returned graphs are
// indexed by local position within the group. Groups smaller than m0 fall
// back to a complete graph.
std::vector<Graph> build_group_networks(const std::vector<std::vector<std::int32_t>>& groups,
                                        int m0, int m, std::uint64_t master_seed,
                                        std::string_view label, std::uint64_t index_base);

struct GraphStats {
    std::vector<std::int64_t> degree_histogram;  // index = degree
    double mean_clustering = 0.0;
    double mean_path_length = 0.0;  // +inf when no pair is reachable
};

// Deterministic given the graph; path length is averaged over BFS trees from
// up to `path_samples` sources drawn from a fixed stream.
GraphStats graph_stats(const Graph& g, int path_samples = 100);

void write_edge_list(const Graph& g, const std::string& header, const std::string& path);
Graph read_edge_list(const std::string& path, std::string* header_out = nullptr);

}  // namespace modeshift
