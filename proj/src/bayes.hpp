#ifndef MESHMON_BAYES_HPP
#define MESHMON_BAYES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paths.hpp"
#include "sampling.hpp"
#include "topology.hpp"

namespace meshmon::bayes {

enum class CpdKind { RootPrior, NoisyOr, NoisyIntAdd };

// A random variable of the equivalent a priori network. Binary nodes carry
// cardinality 2; integer nodes 0..s_max carry cardinality s_max+1.
struct BayesNode {
    std::string label;
    int cardinality = 2;
    CpdKind kind = CpdKind::RootPrior;
    std::vector<int> parents;         // indices into BayesNet::nodes, ordered
    std::vector<double> inhibitions;  // one q per parent (link failure probability)
    double prior_active = 0.0;        // RootPrior only: P(state 1)
};

struct BayesNet {
    std::vector<BayesNode> nodes;
    int source = -1;
    int sink = -1;

    int find(const std::string& label) const;  // -1 when absent
    std::vector<int> topological_order() const;
};

struct Belief {
    int node = -1;
    std::vector<double> distribution;  // indexed by state, sums to 1
};

// Closed-form Noisy-OR: probability the child fires given the inhibitions of
// its currently active parents. No leak term: an empty set yields 0.
double noisy_or_cpd(const std::vector<double>& active_parent_inhibitions);

// Noisy integer addition: child = sum of parent states, each independently
// passed with probability 1-q_i. Exact distribution over 0..sum(states).
std::vector<double> noisy_int_add_cpd(const std::vector<int>& parent_states,
                                      const std::vector<double>& inhibitions);

// Conditional distribution of one node given parent states; shared by the
// sampling fallback and by tests.
std::vector<double> node_conditional(const BayesNet& net, int node,
                                     const std::vector<int>& parent_states);

// Binary-state delivery network over the union of a path group. Parents of a
// node are its predecessors across all paths; every BN edge carries the
// sampled failure probability of the matching directed link (1 for links
// absent in this trial). Throws ZeroPathGroup for an empty group and
// InvalidArgument when the union digraph is cyclic (see anomaly::group
// delivery for the reliability evaluator that covers that case).
BayesNet build_delivery_bn(const topo::MeshTopology& topology, const topo::PathGroup& group,
                           const topo::LinkSample& sample);

// Integer-state path-count network over a destination-oriented DAG. The
// source has s_max = 1; every other node's s_max is the sum of its parents'.
BayesNet build_pathcount_bn(const topo::MeshTopology& topology, const topo::Dag& dag,
                            const topo::LinkSample& sample);

struct InferOptions {
    // Exact variable elimination runs with pairwise-decomposed gate factors;
    // if an intermediate factor would exceed this many cells the engine
    // falls back to likelihood weighting (when allowed).
    std::size_t max_factor_cells = 50'000'000;
    bool allow_sampling_fallback = true;
    int sampling_draws = 100'000;
    std::uint64_t sampling_seed = 0x5eedULL;
};

// Exact posterior P(query | evidence) by variable elimination; deterministic.
// Evidence maps node index -> state. Zero-probability evidence raises
// InconsistentEvidence.
Belief infer(const BayesNet& net, const std::map<int, int>& evidence, int query,
             const InferOptions& options = {});

// P(dst delivers | src transmitted): state-1 marginal for binary networks,
// 1 - P(dst = 0) for integer networks.
double delivery_belief(const BayesNet& net, int src, int dst, const InferOptions& options = {});

// Debug/golden dump: nodes, parents, inhibitions.
std::string net_to_json(const BayesNet& net);

} // namespace meshmon::bayes

#endif
