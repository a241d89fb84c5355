#include "modeshift/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace modeshift {

namespace {

std::uint64_t pack_edge(std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

bool Graph::has_edge(std::int32_t a, std::int32_t b) const {
    const auto& list = adj[a];
    return std::binary_search(list.begin(), list.end(), b);
}

void Graph::canonicalize() {
    for (auto& list : adj) std::sort(list.begin(), list.end());
}

Graph watts_strogatz(int n, int k, double beta, RngStream& rng) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("watts_strogatz: k must be even and >= 2");
    if (n <= k) throw std::invalid_argument("watts_strogatz: requires n > k");
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("watts_strogatz: beta outside [0,1]");

    std::unordered_set<std::uint64_t> edges;
    edges.reserve(static_cast<std::size_t>(n) * k);
    std::vector<std::int32_t> degree(n, 0);

    auto add = [&](std::int32_t a, std::int32_t b) {
        edges.insert(pack_edge(a, b));
        ++degree[a];
        ++degree[b];
    };
    auto remove = [&](std::int32_t a, std::int32_t b) {
        edges.erase(pack_edge(a, b));
        --degree[a];
        --degree[b];
    };

    for (int j = 1; j <= k / 2; ++j)
        for (int i = 0; i < n; ++i) add(i, static_cast<std::int32_t>((i + j) % n));

    // Rewire lap by lap, keeping the near endpoint. A node already connected
    // to everyone is skipped so the edge count stays exactly n*k/2.
    for (int j = 1; j <= k / 2; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!(rng.next_double() < beta)) continue;
            if (degree[i] >= n - 1) continue;
            const std::int32_t old_target = static_cast<std::int32_t>((i + j) % n);
            if (!edges.count(pack_edge(i, old_target))) continue;  // already rewired away
            std::int32_t t;
            do {
                t = static_cast<std::int32_t>(rng.next_below(n));
            } while (t == i || edges.count(pack_edge(i, t)));
            remove(i, old_target);
            add(i, t);
        }
    }

    Graph g;
    g.adj.assign(n, {});
    for (int i = 0; i < n; ++i) g.adj[i].reserve(degree[i]);
    for (std::uint64_t e : edges) {
        const auto a = static_cast<std::int32_t>(e >> 32);
        const auto b = static_cast<std::int32_t>(e & 0xffffffffu);
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    g.edge_count = static_cast<std::int64_t>(edges.size());
    g.canonicalize();
    return g;
}

Graph barabasi_albert(int n, int m0, int m, RngStream& rng) {
    if (!(n >= m0 && m0 >= m && m >= 1))
        throw std::invalid_argument("barabasi_albert: requires n >= m0 >= m >= 1");

    Graph g;
    g.adj.assign(n, {});
    // Each node appears once per unit of degree; uniform draws from this list
    // are degree-proportional.
    std::vector<std::int32_t> endpoints;
    endpoints.reserve(static_cast<std::size_t>(m0) * (m0 - 1) +
                      2 * static_cast<std::size_t>(n - m0) * m);

    auto add_edge = [&](std::int32_t a, std::int32_t b) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
        endpoints.push_back(a);
        endpoints.push_back(b);
        ++g.edge_count;
    };

    for (std::int32_t a = 0; a < m0; ++a)
        for (std::int32_t b = a + 1; b < m0; ++b) add_edge(a, b);

    std::vector<std::int32_t> chosen;
    for (std::int32_t v = m0; v < n; ++v) {
        chosen.clear();
        while (static_cast<int>(chosen.size()) < m) {
            const std::int32_t t = endpoints[rng.next_below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (std::int32_t t : chosen) add_edge(v, t);
    }

    g.canonicalize();
    return g;
}

Graph complete_graph(int n) {
    Graph g;
    g.adj.assign(n, {});
    for (std::int32_t a = 0; a < n; ++a)
        for (std::int32_t b = a + 1; b < n; ++b) {
            g.adj[a].push_back(b);
            g.adj[b].push_back(a);
            ++g.edge_count;
        }
    g.canonicalize();
    return g;
}

std::vector<Graph> build_group_networks(const std::vector<std::vector<std::int32_t>>& groups,
                                        int m0, int m, std::uint64_t master_seed,
                                        std::string_view label, std::uint64_t index_base) {
    std::vector<Graph> nets(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const int size = static_cast<int>(groups[gi].size());
        if (size == 0) throw std::invalid_argument("build_group_networks: empty group");
        if (size < m0) {
            nets[gi] = complete_graph(size);
        } else {
            RngStream rng = derive_rng_stream(master_seed, label, index_base + gi);
            nets[gi] = barabasi_albert(size, m0, m, rng);
        }
    }
    return nets;
}

GraphStats graph_stats(const Graph& g, int path_samples) {
    GraphStats stats;
    const int n = g.node_count();

    int max_degree = 0;
    for (const auto& list : g.adj) max_degree = std::max(max_degree, static_cast<int>(list.size()));
    stats.degree_histogram.assign(max_degree + 1, 0);
    for (const auto& list : g.adj) ++stats.degree_histogram[list.size()];

    double clustering_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto& nb = g.adj[v];
        const int d = static_cast<int>(nb.size());
        if (d < 2) continue;
        std::int64_t links = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (g.has_edge(nb[a], nb[b])) ++links;
        clustering_sum += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    stats.mean_clustering = n > 0 ? clustering_sum / n : 0.0;

    // Sampled mean shortest path over reachable ordered pairs.
    RngStream rng = derive_rng_stream(0x6d6f646573ULL, "graph-stats", static_cast<std::uint64_t>(n));
    std::vector<int> sources;
    if (n <= path_samples) {
        sources.resize(n);
        for (int i = 0; i < n; ++i) sources[i] = i;
    } else {
        std::unordered_set<int> picked;
        while (static_cast<int>(picked.size()) < path_samples)
            picked.insert(static_cast<int>(rng.next_below(n)));
        sources.assign(picked.begin(), picked.end());
        std::sort(sources.begin(), sources.end());
    }

    std::vector<std::int32_t> dist(n);
    std::deque<std::int32_t> queue;
    double path_sum = 0.0;
    std::int64_t path_pairs = 0;
    for (int s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            const std::int32_t v = queue.front();
            queue.pop_front();
            for (std::int32_t w : g.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int v = 0; v < n; ++v)
            if (v != s && dist[v] > 0) {
                path_sum += dist[v];
                ++path_pairs;
            }
    }
    stats.mean_path_length =
        path_pairs > 0 ? path_sum / path_pairs : std::numeric_limits<double>::infinity();
    return stats;
}

void write_edge_list(const Graph& g, const std::string& header, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list to '" + path + "'");
    out << "# " << header << "\n";
    out << "# n=" << g.node_count() << " edges=" << g.edge_count << "\n";
    for (std::int32_t a = 0; a < g.node_count(); ++a)
        for (std::int32_t b : g.adj[a])
            if (a < b) out << a << ' ' << b << '\n';
}

Graph read_edge_list(const std::string& path, std::string* header_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
    Graph g;
    std::string line;
    int n = -1;
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_out && header_out->empty() && line.size() > 2)
                *header_out = line.substr(2);
            const auto pos = line.find("n=");
            if (pos != std::string::npos) n = std::stoi(line.substr(pos + 2));
            continue;
        }
        std::istringstream ss(line);
        std::int32_t a, b;
        if (!(ss >> a >> b)) throw std::runtime_error("bad edge line in '" + path + "'");
        edges.emplace_back(a, b);
        n = std::max({n, a + 1, b + 1});
    }
    g.adj.assign(std::max(n, 0), {});
    for (auto [a, b] : edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
        ++g.edge_count;
    }
    g.canonicalize();
    return g;
}

}  // namespace modeshift
