#include "reliability.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "errors.hpp"

namespace meshmon::rel {

namespace {

struct MaskPairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& key) const {
        std::uint64_t h = key.first * 0x9e3779b97f4a7c15ULL;
        h ^= key.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

} // namespace

class DdBuilder {
public:
    DdBuilder(const std::vector<std::pair<int, int>>& edges, int node_count, int src, int dst,
              std::size_t max_nodes)
        : edges_(edges), node_count_(node_count), src_(src), dst_(dst), max_nodes_(max_nodes) {
        out_edges_.assign(node_count_, {});
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
            out_edges_[edges_[e].first].push_back(e);
    }

    int build(std::vector<ReliabilityDd::DdNode>& nodes) {
        nodes_ = &nodes;
        return visit(0, 0);
    }

private:
    // Decides the subproblem (up, down): returns -1 with reachable=true when
    // an all-up src->dst route already exists, -1 with reachable=false when
    // dst is cut off even through undecided edges, and otherwise the first
    // undecided edge along a BFS route to condition on next.
    int pick_edge(std::uint64_t up, std::uint64_t down, bool& reachable) const {
        // dst reachable through up edges alone?
        {
            std::vector<char> seen(node_count_, 0);
            std::deque<int> queue{src_};
            seen[src_] = 1;
            while (!queue.empty()) {
                const int u = queue.front();
                queue.pop_front();
                if (u == dst_) {
                    reachable = true;
                    return -1;
                }
                for (int e : out_edges_[u]) {
                    if (!(up >> e & 1)) continue;
                    const int v = edges_[e].second;
                    if (!seen[v]) {
                        seen[v] = 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        // BFS tree over everything not down.
        std::vector<int> parent_edge(node_count_, -2);
        std::deque<int> queue{src_};
        parent_edge[src_] = -1;
        bool found = false;
        while (!queue.empty() && !found) {
            const int u = queue.front();
            queue.pop_front();
            for (int e : out_edges_[u]) {
                if (down >> e & 1) continue;
                const int v = edges_[e].second;
                if (parent_edge[v] != -2) continue;
                parent_edge[v] = e;
                if (v == dst_) {
                    found = true;
                    break;
                }
                queue.push_back(v);
            }
        }
        if (!found) {
            reachable = false;
            return -1;
        }
        reachable = true;
        // Walk back to src; the last undecided edge seen is the one nearest
        // the source. The up-only check above guarantees one exists.
        int first_undecided = -1;
        for (int v = dst_; parent_edge[v] != -1;) {
            const int e = parent_edge[v];
            if (!(up >> e & 1)) first_undecided = e;
            v = edges_[e].first;
        }
        return first_undecided;
    }

    int visit(std::uint64_t up, std::uint64_t down) {
        const auto key = std::make_pair(up, down);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        bool reachable = false;
        const int edge = pick_edge(up, down, reachable);
        int result;
        if (!reachable) {
            result = 0;
        } else if (edge < 0) {
            result = 1;
        } else {
            const int hi = visit(up | (1ULL << edge), down);
            const int lo = visit(up, down | (1ULL << edge));
            if (nodes_->size() >= max_nodes_)
                throw Error("reliability diagram exceeded the compile size cap");
            nodes_->push_back({edge, lo, hi});
            result = static_cast<int>(nodes_->size()) - 1 + 2;
        }
        memo_.emplace(key, result);
        return result;
    }

    const std::vector<std::pair<int, int>>& edges_;
    int node_count_;
    int src_;
    int dst_;
    std::size_t max_nodes_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<ReliabilityDd::DdNode>* nodes_ = nullptr;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, int, MaskPairHash> memo_;
};

ReliabilityDd::ReliabilityDd(int node_count, std::vector<std::pair<int, int>> edges, int src,
                             int dst, std::size_t max_nodes)
    : edges_(std::move(edges)) {
    if (edges_.size() > 64)
        throw InvalidArgument("reliability graphs are limited to 64 edges");
    if (src < 0 || src >= node_count || dst < 0 || dst >= node_count)
        throw InvalidArgument("terminal out of range");
    for (const auto& [a, b] : edges_)
        if (a < 0 || a >= node_count || b < 0 || b >= node_count)
            throw InvalidArgument("edge endpoint out of range");
    DdBuilder builder(edges_, node_count, src, dst, max_nodes);
    root_ = builder.build(nodes_);
}

double ReliabilityDd::eval(std::span<const double> pass_probabilities) const {
    if (pass_probabilities.size() != edges_.size())
        throw InvalidArgument("probability vector length mismatch");
    if (root_ == 0) return 0.0;
    if (root_ == 1) return 1.0;
    // children always precede parents, so one forward pass suffices
    std::vector<double> value(nodes_.size());
    auto value_of = [&](int ref) {
        if (ref == 0) return 0.0;
        if (ref == 1) return 1.0;
        return value[ref - 2];
    };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double p = pass_probabilities[nodes_[i].edge];
        value[i] = p * value_of(nodes_[i].hi) + (1.0 - p) * value_of(nodes_[i].lo);
    }
    return value_of(root_);
}

} // namespace meshmon::rel
