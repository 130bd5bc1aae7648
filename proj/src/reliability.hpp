#ifndef MESHMON_RELIABILITY_HPP
#define MESHMON_RELIABILITY_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace meshmon::rel {

// Two-terminal reachability reliability of a fixed digraph: the probability
// that dst is reachable from src when edge e independently operates with
// probability p_e. The structure is compiled once per graph into a binary
// decision diagram (condition edge up/down, prune decided subproblems), then
// evaluated cheaply per probability vector. Monte-Carlo trial loops lean on
// this: one compile, thousands of evals.
class ReliabilityDd {
public:
    // edges as (tail, head) pairs over nodes 0..node_count-1; parallel edges
    // are allowed and keep their own probability slot.
    ReliabilityDd(int node_count, std::vector<std::pair<int, int>> edges, int src, int dst,
                  std::size_t max_nodes = 4'000'000);

    // pass_probabilities[i] is the per-trial operating probability of edge i.
    double eval(std::span<const double> pass_probabilities) const;

    std::size_t compiled_size() const { return nodes_.size(); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

private:
    struct DdNode {
        int edge;  // conditioned edge index
        int lo;    // child when the edge is down (see encoding below)
        int hi;    // child when the edge is up
    };
    // child encoding: 0 -> constant 0, 1 -> constant 1, k+2 -> nodes_[k]
    std::vector<DdNode> nodes_;
    int root_ = 0;
    std::vector<std::pair<int, int>> edges_;

    friend class DdBuilder;
};

} // namespace meshmon::rel

#endif
