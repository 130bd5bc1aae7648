#ifndef MESHMON_TOPOLOGY_HPP
#define MESHMON_TOPOLOGY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace meshmon::topo {

enum class Role { Client, Server };

enum class DiagonalMode { Connected, Intermittent, Disconnected };

// The three transmit-power presets. Adjacent (orthogonal) nodes are linked in
// every scenario; diagonal neighbours depend on the vicinity range.
struct Scenario {
    std::string name;
    double tx_power_dbm = 0.0;
    double vicinity_min_m = 0.0;
    double vicinity_max_m = 0.0;
    DiagonalMode diagonal_mode = DiagonalMode::Connected;
    // Mean per-hop latency used when sampling directed edge weights
    // (uniform on [0.8*mean, 1.2*mean]). Calibrated so the preset 1
    // source-corner-to-client average lands near 6.25 ms.
    double hop_latency_mean_ms = 2.19;
    // Probability that an intermittent diagonal is present in a given trial.
    double intermittent_probability = 0.5;
};

Scenario scenario_preset(int number);

struct MeshNode {
    std::string label;
    int index = -1;
    double x_m = 0.0;
    double y_m = 0.0;
    Role role = Role::Server;
    double tx_power_dbm = 0.0;
    double vicinity_range_m = 0.0;
};

struct DirectedLink {
    int from = -1;
    int to = -1;
    bool diagonal = false;

    friend bool operator==(const DirectedLink&, const DirectedLink&) = default;
};

// Immutable after construction; safe to share across threads.
class MeshTopology {
public:
    MeshTopology(std::vector<MeshNode> nodes, std::vector<DirectedLink> links,
                 Scenario scenario);

    const std::vector<MeshNode>& nodes() const { return nodes_; }
    const std::vector<DirectedLink>& links() const { return links_; }
    const Scenario& scenario() const { return scenario_; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int link_count() const { return static_cast<int>(links_.size()); }

    int client_index() const { return client_index_; }

    int index_of(const std::string& label) const;          // throws NotFound
    std::optional<int> find(const std::string& label) const;
    const std::string& label_of(int index) const { return nodes_.at(index).label; }

    // Link id in canonical (from, to) order, or -1 when absent.
    int link_id(int from, int to) const;
    bool has_link(int from, int to) const { return link_id(from, to) >= 0; }

    // Outgoing neighbour node indices, ascending.
    const std::vector<int>& neighbors_out(int node) const { return adjacency_.at(node); }

    // Unordered diagonal pairs (u < v), canonical order; the per-trial
    // presence draw for intermittent diagonals is symmetric.
    const std::vector<std::pair<int, int>>& diagonal_pairs() const { return diagonal_pairs_; }

    // Undirected link id lookup for a diagonal pair position.
    int diagonal_pair_of_link(int link_id) const { return diag_pair_of_link_.at(link_id); }

    static constexpr double kOrthogonalSpacingM = 0.6;
    static constexpr double kDiagonalSpacingM = 0.86;

private:
    std::vector<MeshNode> nodes_;
    std::vector<DirectedLink> links_;
    Scenario scenario_;
    int client_index_ = -1;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> link_index_;  // node_count^2 lookup, -1 when absent
    std::vector<std::pair<int, int>> diagonal_pairs_;
    std::vector<int> diag_pair_of_link_;  // link id -> diagonal pair id or -1
};

// Grid mesh with 0.6 m orthogonal and 0.86 m diagonal spacing. The client
// sits at one corner, S1 at the diagonally opposite corner, and server
// numbering snakes through the grid from S1's corner back toward the client
// so that S1..S3 fill the far column and the last servers sit next to C.
MeshTopology build_grid_mesh(int rows, int cols, const Scenario& scenario);

// Copy with the given nodes (and all incident links) deleted. Node indices
// are reassigned; labels are stable. Removing the client is rejected.
MeshTopology detangle(const MeshTopology& topology, const std::vector<std::string>& removed);

// Server labels split by index parity: {odd group, even group}.
std::pair<std::vector<std::string>, std::vector<std::string>>
parity_groups(const MeshTopology& topology);

// JSON (de)serialisation of topology + scenario; schema in README.
std::string topology_to_json(const MeshTopology& topology);
MeshTopology topology_from_json(const std::string& json_text);

} // namespace meshmon::topo

#endif
