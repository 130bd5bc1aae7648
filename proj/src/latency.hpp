#ifndef MESHMON_LATENCY_HPP
#define MESHMON_LATENCY_HPP

#include <limits>
#include <string>
#include <vector>

#include "sampling.hpp"
#include "topology.hpp"

namespace meshmon::latency {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct LatencyStats {
    std::string src;
    std::string dst;
    double mean_ms = kUnreachable;  // over reachable trials only
    double std_ms = 0.0;
    double unreachable_fraction = 0.0;
    int trials = 0;
};

// Minimum total directed weight for one trial; infinity when no path exists
// (absent intermittent links are skipped).
double shortest_path_latency(const topo::MeshTopology& topology, const topo::LinkSample& sample,
                             int src, int dst);

// Mean/std over the reachable trials; unreachable trials surface only in
// unreachable_fraction so they cannot poison the averages.
LatencyStats average_latency(const topo::MeshTopology& topology,
                             const std::vector<topo::LinkSample>& samples, int src, int dst);

// One row per source toward a shared destination.
std::vector<LatencyStats> latency_table(const topo::MeshTopology& topology,
                                        const std::vector<topo::LinkSample>& samples,
                                        const std::vector<int>& sources, int dst);

} // namespace meshmon::latency

#endif
