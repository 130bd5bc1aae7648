#include "latency.hpp"

#include <cmath>
#include <queue>

namespace meshmon::latency {

double shortest_path_latency(const topo::MeshTopology& topology, const topo::LinkSample& sample,
                             int src, int dst) {
    if (src == dst) throw InvalidArgument("source and destination must differ");
    const int n = topology.node_count();
    if (src < 0 || src >= n || dst < 0 || dst >= n) throw NotFound("endpoint out of range");

    std::vector<double> dist(n, kUnreachable);
    dist[src] = 0.0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (u == dst) return d;
        if (d > dist[u]) continue;
        for (int v : topology.neighbors_out(u)) {
            const int id = topology.link_id(u, v);
            if (!sample.present[id]) continue;
            const double nd = d + sample.latency_ms[id];
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
    return kUnreachable;
}

LatencyStats average_latency(const topo::MeshTopology& topology,
                             const std::vector<topo::LinkSample>& samples, int src, int dst) {
    if (samples.empty()) throw InvalidArgument("no samples given");
    LatencyStats stats;
    stats.src = topology.label_of(src);
    stats.dst = topology.label_of(dst);
    stats.trials = static_cast<int>(samples.size());

    double sum = 0.0, sum_sq = 0.0;
    int reachable = 0;
    for (const auto& sample : samples) {
        const double d = shortest_path_latency(topology, sample, src, dst);
        if (std::isinf(d)) continue;
        sum += d;
        sum_sq += d * d;
        ++reachable;
    }
    stats.unreachable_fraction =
        static_cast<double>(stats.trials - reachable) / static_cast<double>(stats.trials);
    if (reachable > 0) {
        stats.mean_ms = sum / reachable;
        const double var = std::max(0.0, sum_sq / reachable - stats.mean_ms * stats.mean_ms);
        stats.std_ms = std::sqrt(var);
    }
    return stats;
}

std::vector<LatencyStats> latency_table(const topo::MeshTopology& topology,
                                        const std::vector<topo::LinkSample>& samples,
                                        const std::vector<int>& sources, int dst) {
    if (sources.empty()) throw InvalidArgument("no sources given");
    std::vector<LatencyStats> table;
    table.reserve(sources.size());
    for (int src : sources) table.push_back(average_latency(topology, samples, src, dst));
    return table;
}

} // namespace meshmon::latency
