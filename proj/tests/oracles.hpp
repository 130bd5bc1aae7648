// Test-side reference implementations, deliberately independent of the
// library's algorithms: brute-force enumerations, Bellman-Ford, quadrature.

#ifndef MESHMON_TESTS_ORACLES_HPP
#define MESHMON_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "bayes.hpp"
#include "sampling.hpp"
#include "topology.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Gate CPDs by explicit enumeration of all inhibitor on/off combinations.
// ---------------------------------------------------------------------------

// P(child = state | parent states) for a Noisy-OR or Noisy-IntAdd gate.
inline std::vector<double> gate_distribution_bruteforce(meshmon::bayes::CpdKind kind,
                                                        const std::vector<int>& parent_states,
                                                        const std::vector<double>& inhibitions,
                                                        int cardinality) {
    const int k = static_cast<int>(parent_states.size());
    std::vector<double> dist(cardinality, 0.0);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        double prob = 1.0;
        int total = 0;
        bool fired = false;
        for (int j = 0; j < k; ++j) {
            const bool pass = mask >> j & 1;
            prob *= pass ? 1.0 - inhibitions[j] : inhibitions[j];
            if (pass && parent_states[j] > 0) {
                total += parent_states[j];
                fired = true;
            }
        }
        const int state = kind == meshmon::bayes::CpdKind::NoisyOr ? (fired ? 1 : 0) : total;
        dist.at(state) += prob;
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Posterior by full joint enumeration (uses only the brute-force CPDs above).
// ---------------------------------------------------------------------------

inline std::vector<double> joint_enumeration_posterior(
    const meshmon::bayes::BayesNet& net, const std::map<int, int>& evidence, int query) {
    const int n = static_cast<int>(net.nodes.size());
    std::vector<int> state(n, 0);
    std::vector<double> marginal(net.nodes[query].cardinality, 0.0);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;

    // Odometer over the full joint state space.
    while (true) {
        bool consistent = true;
        for (const auto& [var, s] : evidence)
            if (state[var] != s) {
                consistent = false;
                break;
            }
        if (consistent) {
            double prob = 1.0;
            for (int v = 0; v < n && prob > 0.0; ++v) {
                const auto& node = net.nodes[v];
                double p;
                if (node.kind == meshmon::bayes::CpdKind::RootPrior) {
                    p = node.cardinality == 1
                            ? 1.0
                            : (state[v] == 1 ? node.prior_active : 1.0 - node.prior_active);
                    if (state[v] > 1) p = 0.0;
                } else {
                    std::vector<int> parent_states;
                    for (int parent : node.parents) parent_states.push_back(state[parent]);
                    const auto dist = gate_distribution_bruteforce(
                        node.kind, parent_states, node.inhibitions, node.cardinality);
                    p = dist[state[v]];
                }
                prob *= p;
            }
            marginal[state[query]] += prob;
        }
        int d = n - 1;
        for (; d >= 0; --d) {
            if (++state[d] < net.nodes[d].cardinality) break;
            state[d] = 0;
        }
        if (d < 0) break;
    }
    double total = 0.0;
    for (double m : marginal) total += m;
    for (double& m : marginal) m /= total;
    return marginal;
}

// ---------------------------------------------------------------------------
// Bellman-Ford shortest path (positive weights, so it agrees with Dijkstra).
// ---------------------------------------------------------------------------

inline double bellman_ford_latency(const meshmon::topo::MeshTopology& topology,
                                   const meshmon::topo::LinkSample& sample, int src, int dst) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(topology.node_count(), inf);
    dist[src] = 0.0;
    for (int round = 0; round + 1 < topology.node_count(); ++round) {
        bool changed = false;
        for (int id = 0; id < topology.link_count(); ++id) {
            const auto& link = topology.links()[id];
            if (!sample.present[id]) continue;
            if (dist[link.from] + sample.latency_ms[id] < dist[link.to]) {
                dist[link.to] = dist[link.from] + sample.latency_ms[id];
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist[dst];
}

// ---------------------------------------------------------------------------
// All simple paths via an iterative stack walk, grouped by length.
// ---------------------------------------------------------------------------

inline std::map<int, int> simple_path_counts_by_length(
    const std::vector<std::vector<int>>& adjacency, int src, int dst, int max_len) {
    std::map<int, int> counts;
    struct Frame {
        int node;
        size_t next = 0;
    };
    std::vector<Frame> stack{{src}};
    std::vector<char> on_path(adjacency.size(), 0);
    on_path[src] = 1;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.node == dst && stack.size() > 1) {
            ++counts[static_cast<int>(stack.size()) - 1];
            on_path[top.node] = 0;
            stack.pop_back();
            continue;
        }
        if (static_cast<int>(stack.size()) - 1 >= max_len || top.next >= adjacency[top.node].size()) {
            on_path[top.node] = 0;
            stack.pop_back();
            continue;
        }
        const int next = adjacency[top.node][top.next++];
        if (!on_path[next]) {
            on_path[next] = 1;
            stack.push_back({next});
        }
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Two-terminal reliability by summing over all edge subsets (<= 20 edges).
// ---------------------------------------------------------------------------

inline double st_reliability_bruteforce(int node_count,
                                        const std::vector<std::pair<int, int>>& edges,
                                        const std::vector<double>& pass, int src, int dst) {
    const int m = static_cast<int>(edges.size());
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double prob = 1.0;
        for (int e = 0; e < m; ++e) prob *= (mask >> e & 1) ? pass[e] : 1.0 - pass[e];
        if (prob == 0.0) continue;
        // BFS over up edges.
        std::vector<char> seen(node_count, 0);
        std::vector<int> queue{src};
        seen[src] = 1;
        while (!queue.empty()) {
            const int u = queue.back();
            queue.pop_back();
            for (int e = 0; e < m; ++e)
                if ((mask >> e & 1) && edges[e].first == u && !seen[edges[e].second]) {
                    seen[edges[e].second] = 1;
                    queue.push_back(edges[e].second);
                }
        }
        if (seen[dst]) total += prob;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Standard normal tail by Simpson quadrature.
// ---------------------------------------------------------------------------

inline double q_function_quadrature(double x) {
    const double upper = x + 40.0;
    const int steps = 400000;  // even
    const double h = (upper - x) / steps;
    auto phi = [](double t) {
        return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    };
    double sum = phi(x) + phi(upper);
    for (int i = 1; i < steps; ++i) sum += phi(x + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Simple deterministic generator for test inputs.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}
    double uniform() {
        state_ = meshmon::topo::splitmix64(state_);
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1.0));
    }

private:
    std::uint64_t state_;
};

} // namespace oracles

#endif
