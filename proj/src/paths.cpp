#include "paths.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

namespace meshmon::topo {

PathGroup enumerate_ihop_paths(const MeshTopology& topology, int src, int dst, int hops) {
    if (src == dst) throw InvalidArgument("source and destination must differ");
    if (hops < 1) throw InvalidArgument("hop count must be >= 1");
    if (src < 0 || src >= topology.node_count() || dst < 0 || dst >= topology.node_count())
        throw NotFound("path endpoints out of range");

    PathGroup group;
    group.src = src;
    group.dst = dst;
    group.hop_count = hops;

    std::vector<int> path{src};
    std::vector<char> on_path(topology.node_count(), 0);
    on_path[src] = 1;

    std::function<void(int)> dfs = [&](int u) {
        const int used = static_cast<int>(path.size()) - 1;
        if (used == hops) {
            if (u == dst) group.paths.push_back(path);
            return;
        }
        if (u == dst) return;  // simple paths stop at the destination
        for (int v : topology.neighbors_out(u)) {
            if (on_path[v]) continue;
            on_path[v] = 1;
            path.push_back(v);
            dfs(v);
            path.pop_back();
            on_path[v] = 0;
        }
    };
    dfs(src);
    return group;
}

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

// Undirected hop distance to dst (links are stored symmetrically, so the
// outgoing adjacency doubles as the undirected view).
std::vector<int> hop_distance_to(const MeshTopology& topology, int dst) {
    std::vector<int> dist(topology.node_count(), kUnreachable);
    std::deque<int> queue{dst};
    dist[dst] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : topology.neighbors_out(u)) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

// Tie-break identity: the client sorts below every server.
int orientation_rank(const MeshTopology& topology, int node) {
    if (node == topology.client_index()) return 0;
    return std::stoi(topology.label_of(node).substr(1));
}

} // namespace

Dag build_dag(const MeshTopology& topology, int src, int dst) {
    if (src == dst) throw InvalidArgument("source and destination must differ");

    Dag dag;
    dag.src = src;
    dag.dst = dst;
    dag.node_count = topology.node_count();
    dag.successors.assign(dag.node_count, {});
    dag.predecessors.assign(dag.node_count, {});

    const auto dist = hop_distance_to(topology, dst);

    for (int id = 0; id < topology.link_count(); ++id) {
        const auto& link = topology.links()[id];
        if (link.from > link.to) continue;  // orient each undirected pair once
        int tail = link.from, head = link.to;
        const int df = dist[link.from], dt = dist[link.to];
        if (df > dt) {
            tail = link.from; head = link.to;
        } else if (dt > df) {
            tail = link.to; head = link.from;
        } else if (orientation_rank(topology, link.from) > orientation_rank(topology, link.to)) {
            tail = link.to; head = link.from;
        }
        const int oriented_id = topology.link_id(tail, head);
        dag.edges.push_back({tail, head, link.diagonal});
        dag.link_ids.push_back(oriented_id);
        dag.successors[tail].push_back(head);
        dag.predecessors[head].push_back(tail);
    }
    for (auto& v : dag.successors) std::sort(v.begin(), v.end());
    for (auto& v : dag.predecessors) std::sort(v.begin(), v.end());

    // Edges point strictly down the (distance, rank) order, so the graph is
    // acyclic and path counts follow from one pass in that order.
    dag.paths_from_src.assign(dag.node_count, 0);
    dag.paths_from_src[src] = 1;
    std::vector<int> order(dag.node_count);
    for (int i = 0; i < dag.node_count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const long long da = dist[a] == kUnreachable ? -1 : dist[a];
        const long long db = dist[b] == kUnreachable ? -1 : dist[b];
        if (da != db) return da > db;
        // Tie edges point toward the larger rank, so smaller ranks go first.
        return orientation_rank(topology, a) < orientation_rank(topology, b);
    });
    for (int u : order)
        for (int v : dag.successors[u]) dag.paths_from_src[v] += dag.paths_from_src[u];
    dag.path_count = dag.paths_from_src[dst];
    return dag;
}

} // namespace meshmon::topo
