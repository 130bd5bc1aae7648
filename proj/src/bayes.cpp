#include "bayes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "errors.hpp"

namespace meshmon::bayes {

int BayesNet::find(const std::string& label) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].label == label) return static_cast<int>(i);
    return -1;
}

std::vector<int> BayesNet::topological_order() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v) {
        for (int p : nodes[v].parents) {
            children[p].push_back(v);
            ++indegree[v];
        }
    }
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (int c : children[v])
            if (--indegree[c] == 0) ready.push_back(c);
    }
    if (static_cast<int>(order.size()) != n)
        throw InvalidArgument("parent graph is not a DAG");
    return order;
}

double noisy_or_cpd(const std::vector<double>& active_parent_inhibitions) {
    double blocked = 1.0;
    for (double q : active_parent_inhibitions) {
        if (q < 0.0 || q > 1.0) throw InvalidArgument("inhibition must lie in [0,1]");
        blocked *= q;
    }
    return active_parent_inhibitions.empty() ? 0.0 : 1.0 - blocked;
}

std::vector<double> noisy_int_add_cpd(const std::vector<int>& parent_states,
                                      const std::vector<double>& inhibitions) {
    if (parent_states.size() != inhibitions.size())
        throw InvalidArgument("one inhibition per parent required");
    int total = 0;
    for (int s : parent_states) {
        if (s < 0) throw InvalidArgument("parent states must be non-negative");
        total += s;
    }
    std::vector<double> dist(total + 1, 0.0);
    dist[0] = 1.0;
    int reach = 0;
    for (size_t j = 0; j < parent_states.size(); ++j) {
        const double q = inhibitions[j];
        if (q < 0.0 || q > 1.0) throw InvalidArgument("inhibition must lie in [0,1]");
        const int s = parent_states[j];
        if (s == 0) continue;  // passes and blocks coincide
        for (int v = reach; v >= 0; --v) {
            const double mass = dist[v];
            if (mass == 0.0) continue;
            dist[v] = mass * q;
            dist[v + s] += mass * (1.0 - q);
        }
        reach += s;
    }
    return dist;
}

std::vector<double> node_conditional(const BayesNet& net, int node,
                                     const std::vector<int>& parent_states) {
    const BayesNode& bn = net.nodes.at(node);
    if (parent_states.size() != bn.parents.size())
        throw InvalidArgument("parent state count mismatch");
    switch (bn.kind) {
        case CpdKind::RootPrior: {
            if (bn.cardinality == 1) return {1.0};
            std::vector<double> dist(bn.cardinality, 0.0);
            dist[0] = 1.0 - bn.prior_active;
            dist[1] = bn.prior_active;
            return dist;
        }
        case CpdKind::NoisyOr: {
            std::vector<double> active;
            for (size_t j = 0; j < parent_states.size(); ++j)
                if (parent_states[j] == 1) active.push_back(bn.inhibitions[j]);
            const double p = noisy_or_cpd(active);
            return {1.0 - p, p};
        }
        case CpdKind::NoisyIntAdd: {
            std::vector<double> dist = noisy_int_add_cpd(parent_states, bn.inhibitions);
            dist.resize(bn.cardinality, 0.0);
            return dist;
        }
    }
    throw Error("unreachable");
}

namespace {

double effective_failure(const topo::MeshTopology& topology, const topo::LinkSample& sample,
                         int from, int to) {
    const int id = topology.link_id(from, to);
    if (id < 0) throw NotFound("no link between the requested nodes");
    if (!sample.present[id]) return 1.0;  // absent this trial: always inhibited
    return sample.failure_prob[id];
}

} // namespace

BayesNet build_delivery_bn(const topo::MeshTopology& topology, const topo::PathGroup& group,
                           const topo::LinkSample& sample) {
    if (group.paths.empty())
        throw ZeroPathGroup("path group " + std::to_string(group.hop_count) +
                            "-hop is empty; delivery belief is 0 by definition");

    std::vector<int> mesh_nodes;  // mesh index per BN node, insertion-ordered
    std::vector<int> bn_of_mesh(topology.node_count(), -1);
    auto intern = [&](int mesh) {
        if (bn_of_mesh[mesh] < 0) {
            bn_of_mesh[mesh] = static_cast<int>(mesh_nodes.size());
            mesh_nodes.push_back(mesh);
        }
        return bn_of_mesh[mesh];
    };
    intern(group.src);
    std::set<std::pair<int, int>> edges;
    for (const auto& path : group.paths)
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            intern(path[i]);
            intern(path[i + 1]);
            edges.insert({path[i], path[i + 1]});
        }

    BayesNet net;
    net.nodes.resize(mesh_nodes.size());
    for (size_t i = 0; i < mesh_nodes.size(); ++i) {
        net.nodes[i].label = topology.label_of(mesh_nodes[i]);
        net.nodes[i].cardinality = 2;
        net.nodes[i].kind = CpdKind::NoisyOr;
    }
    for (const auto& [from, to] : edges) {
        BayesNode& child = net.nodes[bn_of_mesh[to]];
        child.parents.push_back(bn_of_mesh[from]);
        child.inhibitions.push_back(effective_failure(topology, sample, from, to));
    }
    net.source = bn_of_mesh[group.src];
    net.sink = bn_of_mesh[group.dst];
    net.nodes[net.source].kind = CpdKind::RootPrior;
    net.nodes[net.source].parents.clear();
    net.nodes[net.source].inhibitions.clear();
    net.nodes[net.source].prior_active = 1.0;

    net.topological_order();  // rejects cyclic unions
    return net;
}

BayesNet build_pathcount_bn(const topo::MeshTopology& topology, const topo::Dag& dag,
                            const topo::LinkSample& sample) {
    BayesNet net;
    net.nodes.resize(dag.node_count);
    for (int v = 0; v < dag.node_count; ++v) {
        BayesNode& node = net.nodes[v];
        node.label = topology.label_of(v);
        if (v == dag.src) {
            node.kind = CpdKind::RootPrior;
            node.cardinality = 2;  // transmitted or not
            node.prior_active = 1.0;
            continue;
        }
        node.kind = dag.predecessors[v].empty() ? CpdKind::RootPrior : CpdKind::NoisyIntAdd;
        // s_max is structural: the number of distinct source->node DAG paths.
        node.cardinality = static_cast<int>(dag.paths_from_src[v]) + 1;
        for (int p : dag.predecessors[v]) {
            node.parents.push_back(p);
            node.inhibitions.push_back(effective_failure(topology, sample, p, v));
        }
    }
    net.source = dag.src;
    net.sink = dag.dst;
    return net;
}

// ---------------------------------------------------------------------------
// Exact inference: variable elimination over pairwise-decomposed gate factors.
// ---------------------------------------------------------------------------

namespace {

struct WidthExceeded {};

struct Factor {
    std::vector<int> vars;   // ascending
    std::vector<int> cards;  // per var
    std::vector<double> data;  // row-major, first var slowest

    std::size_t size() const { return data.size(); }
};

std::size_t checked_cells(const std::vector<int>& cards, std::size_t cap) {
    std::size_t cells = 1;
    for (int c : cards) {
        if (c <= 0) throw Error("factor with empty variable domain");
        if (cells > cap / static_cast<std::size_t>(c)) throw WidthExceeded{};
        cells *= static_cast<std::size_t>(c);
    }
    return cells;
}

// Multiply two factors over the union of their scopes.
Factor multiply(const Factor& a, const Factor& b, std::size_t cap) {
    Factor out;
    out.vars.reserve(a.vars.size() + b.vars.size());
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                   std::back_inserter(out.vars));
    out.cards.resize(out.vars.size());
    auto card_of = [&](int var) {
        for (size_t i = 0; i < a.vars.size(); ++i)
            if (a.vars[i] == var) return a.cards[i];
        for (size_t i = 0; i < b.vars.size(); ++i)
            if (b.vars[i] == var) return b.cards[i];
        throw Error("variable lost during factor product");
    };
    for (size_t i = 0; i < out.vars.size(); ++i) out.cards[i] = card_of(out.vars[i]);
    const std::size_t cells = checked_cells(out.cards, cap);
    out.data.assign(cells, 0.0);

    // Strides of each input factor in the output's index space.
    auto strides_in = [&](const Factor& f) {
        std::vector<std::size_t> strides(out.vars.size(), 0);
        std::size_t s = 1;
        for (int i = static_cast<int>(f.vars.size()) - 1; i >= 0; --i) {
            const auto pos = std::lower_bound(out.vars.begin(), out.vars.end(), f.vars[i]) -
                             out.vars.begin();
            strides[pos] = s;
            s *= static_cast<std::size_t>(f.cards[i]);
        }
        return strides;
    };
    const auto sa = strides_in(a);
    const auto sb = strides_in(b);

    std::vector<int> idx(out.vars.size(), 0);
    std::size_t ia = 0, ib = 0;
    for (std::size_t flat = 0;; ++flat) {
        out.data[flat] = a.data[ia] * b.data[ib];
        int d = static_cast<int>(out.vars.size()) - 1;
        for (; d >= 0; --d) {
            ++idx[d];
            ia += sa[d];
            ib += sb[d];
            if (idx[d] < out.cards[d]) break;
            ia -= sa[d] * static_cast<std::size_t>(out.cards[d]);
            ib -= sb[d] * static_cast<std::size_t>(out.cards[d]);
            idx[d] = 0;
        }
        if (d < 0) break;
    }
    return out;
}

Factor marginalize(const Factor& f, int var) {
    const auto pos_it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
    if (pos_it == f.vars.end() || *pos_it != var) throw Error("marginalizing absent variable");
    const size_t pos = pos_it - f.vars.begin();

    Factor out;
    out.vars = f.vars;
    out.cards = f.cards;
    out.vars.erase(out.vars.begin() + pos);
    out.cards.erase(out.cards.begin() + pos);
    std::size_t cells = 1;
    for (int c : out.cards) cells *= static_cast<std::size_t>(c);
    out.data.assign(std::max<std::size_t>(cells, 1), 0.0);

    std::size_t inner = 1;
    for (size_t i = pos + 1; i < f.vars.size(); ++i) inner *= static_cast<std::size_t>(f.cards[i]);
    const std::size_t var_card = static_cast<std::size_t>(f.cards[pos]);
    const std::size_t outer = f.size() / (inner * var_card);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t v = 0; v < var_card; ++v) {
            const double* src = f.data.data() + (o * var_card + v) * inner;
            double* dst = out.data.data() + o * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i];
        }
    return out;
}

Factor reduce(const Factor& f, int var, int state) {
    const auto pos_it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
    if (pos_it == f.vars.end() || *pos_it != var) return f;
    const size_t pos = pos_it - f.vars.begin();
    if (state < 0 || state >= f.cards[pos]) throw InvalidArgument("evidence state out of range");

    Factor out;
    out.vars = f.vars;
    out.cards = f.cards;
    out.vars.erase(out.vars.begin() + pos);
    out.cards.erase(out.cards.begin() + pos);

    std::size_t inner = 1;
    for (size_t i = pos + 1; i < f.vars.size(); ++i) inner *= static_cast<std::size_t>(f.cards[i]);
    const std::size_t var_card = static_cast<std::size_t>(f.cards[pos]);
    const std::size_t outer = f.size() / (inner * var_card);
    out.data.resize(std::max<std::size_t>(outer * inner, 1));
    for (std::size_t o = 0; o < outer; ++o) {
        const double* src = f.data.data() + (o * var_card + static_cast<std::size_t>(state)) * inner;
        std::copy(src, src + inner, out.data.data() + o * inner);
    }
    return out;
}

struct FactorGraph {
    std::vector<int> cards;  // per variable
    std::vector<Factor> factors;

    int add_var(int card) {
        cards.push_back(card);
        return static_cast<int>(cards.size()) - 1;
    }
};

// Decompose every CPD into factors of at most three variables using running
// accumulators; full gate tables over many parents would be intractable
// (an integer node can carry over a hundred states).
FactorGraph decompose(const BayesNet& net) {
    FactorGraph g;
    for (const auto& node : net.nodes) g.add_var(node.cardinality);

    for (int v = 0; v < static_cast<int>(net.nodes.size()); ++v) {
        const BayesNode& node = net.nodes[v];
        if (node.kind == CpdKind::RootPrior || node.parents.empty()) {
            Factor f;
            f.vars = {v};
            f.cards = {node.cardinality};
            f.data.assign(node.cardinality, 0.0);
            if (node.kind == CpdKind::RootPrior) {
                if (node.cardinality == 1) {
                    f.data[0] = 1.0;
                } else {
                    f.data[0] = 1.0 - node.prior_active;
                    f.data[1] = node.prior_active;
                }
            } else {
                f.data[0] = 1.0;  // gate with no parents never fires
            }
            g.factors.push_back(std::move(f));
            continue;
        }

        const bool is_or = node.kind == CpdKind::NoisyOr;
        const int k = static_cast<int>(node.parents.size());

        // contribution of parent j marginalised over its pass indicator:
        // P(c | parent state), c in {0 .. parent_smax}
        auto pair_factor = [&](int acc_prev, int acc_prev_card, int j, int acc_var,
                               int acc_card) {
            const int parent = node.parents[j];
            const int pcard = g.cards[parent];
            const double q = node.inhibitions[j];
            Factor f;
            f.vars = {acc_prev, parent, acc_var};
            f.cards = {acc_prev_card, pcard, acc_card};
            std::sort(f.vars.begin(), f.vars.end());
            // rebuild cards to match sorted vars
            auto card_of = [&](int var) {
                if (var == acc_prev) return acc_prev_card;
                if (var == parent) return pcard;
                return acc_card;
            };
            for (size_t i = 0; i < f.vars.size(); ++i) f.cards[i] = card_of(f.vars[i]);
            f.data.assign(static_cast<std::size_t>(acc_prev_card) * pcard * acc_card, 0.0);
            auto at = [&](int prev, int ps, int acc) -> double& {
                std::size_t flat = 0;
                for (size_t i = 0; i < f.vars.size(); ++i) {
                    int value = f.vars[i] == acc_prev ? prev : (f.vars[i] == parent ? ps : acc);
                    flat = flat * static_cast<std::size_t>(f.cards[i]) +
                           static_cast<std::size_t>(value);
                }
                return f.data[flat];
            };
            for (int prev = 0; prev < acc_prev_card; ++prev) {
                for (int ps = 0; ps < pcard; ++ps) {
                    if (is_or) {
                        const int on = prev == 1 || ps == 1;
                        if (ps == 1) {
                            at(prev, ps, std::min(on, acc_card - 1)) += 1.0 - q;
                            at(prev, ps, prev) += q;
                        } else {
                            at(prev, ps, prev) += 1.0;
                        }
                    } else {
                        if (ps == 0) {
                            at(prev, ps, prev) += 1.0;
                        } else {
                            if (prev + ps >= acc_card)
                                throw Error("integer node cardinality below attainable sum; "
                                            "s_max must be structural, never truncated");
                            at(prev, ps, prev + ps) += 1.0 - q;
                            at(prev, ps, prev) += q;
                        }
                    }
                }
            }
            return f;
        };

        // First parent: accumulator state equals its (possibly inhibited)
        // contribution; fold directly when there is a single parent.
        auto head_factor = [&](int j, int acc_var, int acc_card) {
            const int parent = node.parents[j];
            const int pcard = g.cards[parent];
            const double q = node.inhibitions[j];
            Factor f;
            f.vars = {parent, acc_var};
            f.cards = {pcard, acc_card};
            std::sort(f.vars.begin(), f.vars.end());
            f.cards = {f.vars[0] == parent ? pcard : acc_card,
                       f.vars[1] == parent ? pcard : acc_card};
            f.data.assign(static_cast<std::size_t>(pcard) * acc_card, 0.0);
            auto at = [&](int ps, int acc) -> double& {
                int v0 = f.vars[0] == parent ? ps : acc;
                int v1 = f.vars[1] == parent ? ps : acc;
                return f.data[static_cast<std::size_t>(v0) * f.cards[1] + v1];
            };
            for (int ps = 0; ps < pcard; ++ps) {
                const int contrib = is_or ? (ps == 1 ? 1 : 0) : ps;
                if (contrib == 0) {
                    at(ps, 0) += 1.0;
                } else {
                    if (contrib >= acc_card)
                        throw Error("integer node cardinality below attainable sum; "
                                    "s_max must be structural, never truncated");
                    at(ps, contrib) += 1.0 - q;
                    at(ps, 0) += q;
                }
            }
            return f;
        };

        if (k == 1) {
            g.factors.push_back(head_factor(0, v, node.cardinality));
            continue;
        }
        // accumulator cardinalities grow with the attainable partial sum
        std::vector<int> acc_cards(k);
        int reach = 0;
        for (int j = 0; j < k; ++j) {
            const int contrib_max = is_or ? 1 : g.cards[node.parents[j]] - 1;
            reach = is_or ? std::min(1, reach + contrib_max) : reach + contrib_max;
            acc_cards[j] = reach + 1;
        }
        acc_cards[k - 1] = net.nodes[v].cardinality;  // final accumulator is the node

        int prev_var = g.add_var(acc_cards[0]);
        g.factors.push_back(head_factor(0, prev_var, acc_cards[0]));
        for (int j = 1; j < k; ++j) {
            const int acc_var = (j == k - 1) ? v : g.add_var(acc_cards[j]);
            g.factors.push_back(pair_factor(prev_var, acc_cards[j - 1], j, acc_var, acc_cards[j]));
            prev_var = acc_var;
        }
    }
    return g;
}

Belief eliminate(const BayesNet& net, FactorGraph graph, const std::map<int, int>& evidence,
                 int query, std::size_t cap) {
    for (const auto& [var, state] : evidence)
        for (auto& f : graph.factors) f = reduce(f, var, state);

    std::set<int> remaining;
    for (const auto& f : graph.factors)
        for (int v : f.vars) remaining.insert(v);
    remaining.erase(query);
    for (const auto& [var, _] : evidence) remaining.erase(var);

    while (!remaining.empty()) {
        // min-weight heuristic: eliminate the variable whose product factor
        // over its neighbourhood is smallest
        int best = -1;
        double best_weight = std::numeric_limits<double>::infinity();
        for (int var : remaining) {
            std::set<int> scope;
            for (const auto& f : graph.factors)
                if (std::binary_search(f.vars.begin(), f.vars.end(), var))
                    scope.insert(f.vars.begin(), f.vars.end());
            double weight = 1.0;
            for (int v : scope) weight *= static_cast<double>(graph.cards[v]);
            if (weight < best_weight) {
                best_weight = weight;
                best = var;
            }
        }

        std::vector<Factor> rest;
        Factor product;
        bool have = false;
        for (auto& f : graph.factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), best)) {
                product = have ? multiply(product, f, cap) : std::move(f);
                have = true;
            } else {
                rest.push_back(std::move(f));
            }
        }
        if (have) rest.push_back(marginalize(product, best));
        graph.factors = std::move(rest);
        remaining.erase(best);
    }

    Factor result;
    result.vars = {query};
    result.cards = {graph.cards[query]};
    result.data.assign(graph.cards[query], 1.0);
    for (const auto& f : graph.factors) {
        if (f.vars.empty()) {
            for (auto& x : result.data) x *= f.data[0];
        } else {
            result = multiply(result, f, cap);
        }
    }
    if (result.vars != std::vector<int>{query}) throw Error("stray variables after elimination");

    const double total = std::accumulate(result.data.begin(), result.data.end(), 0.0);
    if (!(total > 0.0))
        throw InconsistentEvidence("evidence has zero prior probability");
    Belief belief;
    belief.node = query;
    belief.distribution.resize(result.data.size());
    for (size_t i = 0; i < result.data.size(); ++i) belief.distribution[i] = result.data[i] / total;
    return belief;
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Belief likelihood_weighting(const BayesNet& net, const std::map<int, int>& evidence, int query,
                            const InferOptions& options) {
    const auto order = net.topological_order();
    std::mt19937_64 rng(topo::splitmix64(options.sampling_seed));
    std::vector<double> hist(net.nodes[query].cardinality, 0.0);
    std::vector<int> state(net.nodes.size(), 0);
    double total_weight = 0.0;

    for (int draw = 0; draw < options.sampling_draws; ++draw) {
        double weight = 1.0;
        for (int v : order) {
            std::vector<int> parent_states;
            parent_states.reserve(net.nodes[v].parents.size());
            for (int p : net.nodes[v].parents) parent_states.push_back(state[p]);
            const auto dist = node_conditional(net, v, parent_states);
            const auto ev = evidence.find(v);
            if (ev != evidence.end()) {
                if (ev->second < 0 || ev->second >= static_cast<int>(dist.size()))
                    throw InvalidArgument("evidence state out of range");
                weight *= dist[ev->second];
                state[v] = ev->second;
                if (weight == 0.0) break;
            } else {
                double u = uniform01(rng);
                int s = 0;
                for (; s + 1 < static_cast<int>(dist.size()); ++s) {
                    if (u < dist[s]) break;
                    u -= dist[s];
                }
                state[v] = s;
            }
        }
        if (weight > 0.0) {
            hist[state[query]] += weight;
            total_weight += weight;
        }
    }
    if (!(total_weight > 0.0))
        throw InconsistentEvidence("evidence has zero sampled probability");
    Belief belief;
    belief.node = query;
    belief.distribution.resize(hist.size());
    for (size_t i = 0; i < hist.size(); ++i) belief.distribution[i] = hist[i] / total_weight;
    return belief;
}

} // namespace

Belief infer(const BayesNet& net, const std::map<int, int>& evidence, int query,
             const InferOptions& options) {
    if (query < 0 || query >= static_cast<int>(net.nodes.size()))
        throw NotFound("query node out of range");
    for (const auto& [var, state] : evidence) {
        if (var < 0 || var >= static_cast<int>(net.nodes.size()))
            throw NotFound("evidence node out of range");
        if (state < 0 || state >= net.nodes[var].cardinality)
            throw InvalidArgument("evidence state out of range for node '" +
                                  net.nodes[var].label + "'");
    }
    try {
        Belief belief =
            eliminate(net, decompose(net), evidence, query, options.max_factor_cells);
        // An observed query collapses to a point mass once the evidence is
        // known to have support (eliminate rejects zero-probability evidence).
        if (auto it = evidence.find(query); it != evidence.end()) {
            belief.distribution.assign(net.nodes[query].cardinality, 0.0);
            belief.distribution[it->second] = 1.0;
        }
        return belief;
    } catch (const WidthExceeded&) {
        if (!options.allow_sampling_fallback)
            throw Error("elimination width exceeds the configured cap");
        return likelihood_weighting(net, evidence, query, options);
    }
}

double delivery_belief(const BayesNet& net, int src, int dst, const InferOptions& options) {
    if (src < 0 || src >= static_cast<int>(net.nodes.size()))
        throw NotFound("source node out of range");
    if (net.nodes[src].cardinality < 2) return 0.0;  // source cannot even transmit
    const Belief belief = infer(net, {{src, 1}}, dst, options);
    if (net.nodes[dst].cardinality == 1) return 0.0;
    if (net.nodes[dst].kind == CpdKind::NoisyIntAdd || net.nodes[dst].cardinality > 2)
        return 1.0 - belief.distribution[0];
    return belief.distribution[1];
}

std::string net_to_json(const BayesNet& net) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : net.nodes) {
        nlohmann::json parents = nlohmann::json::array();
        for (int p : node.parents) parents.push_back(net.nodes[p].label);
        const char* kind = node.kind == CpdKind::RootPrior
                               ? "root_prior"
                               : (node.kind == CpdKind::NoisyOr ? "noisy_or" : "noisy_int_add");
        nlohmann::json jn{{"label", node.label},
                          {"cardinality", node.cardinality},
                          {"kind", kind},
                          {"parents", parents},
                          {"inhibitions", node.inhibitions}};
        if (node.kind == CpdKind::RootPrior && node.cardinality > 1)
            jn["prior_active"] = node.prior_active;
        nodes.push_back(jn);
    }
    nlohmann::json j{{"nodes", nodes}};
    if (net.source >= 0) j["source"] = net.nodes[net.source].label;
    if (net.sink >= 0) j["sink"] = net.nodes[net.sink].label;
    return j.dump(2);
}

} // namespace meshmon::bayes
