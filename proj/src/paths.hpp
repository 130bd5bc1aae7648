#ifndef MESHMON_PATHS_HPP
#define MESHMON_PATHS_HPP

#include <cstdint>
#include <vector>

#include "topology.hpp"

namespace meshmon::topo {

// All simple paths with exactly `hop_count` links between one pair.
struct PathGroup {
    int src = -1;
    int dst = -1;
    int hop_count = 0;
    std::vector<std::vector<int>> paths;  // node index sequences, src..dst
};

// Exhaustive depth-bounded enumeration; empty result is valid.
PathGroup enumerate_ihop_paths(const MeshTopology& topology, int src, int dst, int hops);

// Orientation of the undirected adjacency toward a destination: each edge
// points from the endpoint with strictly larger hop distance to dst toward
// the smaller; equal distances break toward the larger node index. Nodes
// the destination cannot reach keep an infinite distance and sort last.
struct Dag {
    int src = -1;
    int dst = -1;
    int node_count = 0;
    std::vector<DirectedLink> edges;          // oriented, canonical order
    std::vector<int> link_ids;                // matching topology link id per edge
    std::vector<std::vector<int>> successors; // by node index
    std::vector<std::vector<int>> predecessors;
    std::vector<std::int64_t> paths_from_src; // simple-path counts src -> node
    std::int64_t path_count = 0;              // src -> dst
};

Dag build_dag(const MeshTopology& topology, int src, int dst);

} // namespace meshmon::topo

#endif
