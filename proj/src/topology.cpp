#include "topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace meshmon::topo {

using nlohmann::json;

Scenario scenario_preset(int number) {
    Scenario s;
    switch (number) {
        case 1:
            s.name = "S1_4dBm";
            s.tx_power_dbm = 4.0;
            s.vicinity_min_m = 0.86;
            s.vicinity_max_m = 0.86;
            s.diagonal_mode = DiagonalMode::Connected;
            break;
        case 2:
            s.name = "S2_0dBm";
            s.tx_power_dbm = 0.0;
            s.vicinity_min_m = 0.6;
            s.vicinity_max_m = 0.86;
            s.diagonal_mode = DiagonalMode::Intermittent;
            break;
        case 3:
            s.name = "S3_neg4dBm";
            s.tx_power_dbm = -4.0;
            s.vicinity_min_m = 0.6;
            s.vicinity_max_m = 0.6;
            s.diagonal_mode = DiagonalMode::Disconnected;
            break;
        default:
            throw InvalidArgument("scenario preset must be 1, 2 or 3, got " +
                                  std::to_string(number));
    }
    return s;
}

MeshTopology::MeshTopology(std::vector<MeshNode> nodes, std::vector<DirectedLink> links,
                           Scenario scenario)
    : nodes_(std::move(nodes)), links_(std::move(links)), scenario_(std::move(scenario)) {
    const int n = static_cast<int>(nodes_.size());
    if (n < 2) throw InvalidArgument("topology needs at least two nodes");

    std::set<std::string> labels;
    for (int i = 0; i < n; ++i) {
        nodes_[i].index = i;
        if (!labels.insert(nodes_[i].label).second)
            throw InvalidArgument("duplicate node label '" + nodes_[i].label + "'");
        if (nodes_[i].role == Role::Client) {
            if (client_index_ >= 0) throw InvalidArgument("more than one client node");
            client_index_ = i;
        }
    }
    if (client_index_ < 0) throw InvalidArgument("topology has no client node");

    std::sort(links_.begin(), links_.end(), [](const DirectedLink& a, const DirectedLink& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    adjacency_.assign(n, {});
    link_index_.assign(static_cast<size_t>(n) * n, -1);
    diag_pair_of_link_.assign(links_.size(), -1);

    std::set<std::pair<int, int>> diag_pairs;
    for (size_t id = 0; id < links_.size(); ++id) {
        const auto& l = links_[id];
        if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n || l.from == l.to)
            throw InvalidArgument("malformed link");
        if (link_index_[static_cast<size_t>(l.from) * n + l.to] != -1)
            throw InvalidArgument("duplicate link");
        link_index_[static_cast<size_t>(l.from) * n + l.to] = static_cast<int>(id);
        adjacency_[l.from].push_back(l.to);
        if (l.diagonal) diag_pairs.insert({std::min(l.from, l.to), std::max(l.from, l.to)});
    }
    diagonal_pairs_.assign(diag_pairs.begin(), diag_pairs.end());
    for (size_t id = 0; id < links_.size(); ++id) {
        const auto& l = links_[id];
        if (!l.diagonal) continue;
        std::pair<int, int> key{std::min(l.from, l.to), std::max(l.from, l.to)};
        auto it = std::lower_bound(diagonal_pairs_.begin(), diagonal_pairs_.end(), key);
        diag_pair_of_link_[id] = static_cast<int>(it - diagonal_pairs_.begin());
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

int MeshTopology::index_of(const std::string& label) const {
    if (auto i = find(label)) return *i;
    throw NotFound("no node labelled '" + label + "'");
}

std::optional<int> MeshTopology::find(const std::string& label) const {
    for (const auto& node : nodes_)
        if (node.label == label) return node.index;
    return std::nullopt;
}

int MeshTopology::link_id(int from, int to) const {
    const int n = node_count();
    if (from < 0 || from >= n || to < 0 || to >= n) return -1;
    return link_index_[static_cast<size_t>(from) * n + to];
}

namespace {

// Serpentine cell order starting at the corner opposite the client (0,0):
// straight down the far column, then snaking column by column back toward
// the client, skipping the client's own cell.
std::vector<std::pair<int, int>> server_cell_order(int rows, int cols) {
    std::vector<std::pair<int, int>> order;
    for (int c = cols - 1; c >= 0; --c) {
        const int col_pos = cols - 1 - c;
        if (col_pos % 2 == 0) {
            for (int r = rows - 1; r >= 0; --r)
                if (!(r == 0 && c == 0)) order.emplace_back(r, c);
        } else {
            for (int r = 0; r < rows; ++r)
                if (!(r == 0 && c == 0)) order.emplace_back(r, c);
        }
    }
    return order;
}

} // namespace

MeshTopology build_grid_mesh(int rows, int cols, const Scenario& scenario) {
    if (rows < 1 || cols < 1)
        throw InvalidArgument("grid dimensions must be positive");
    if (rows * cols < 2)
        throw InvalidArgument("grid needs at least two nodes");

    const double s = MeshTopology::kOrthogonalSpacingM;

    std::vector<MeshNode> nodes;
    nodes.reserve(static_cast<size_t>(rows) * cols);
    std::vector<std::vector<int>> cell_index(rows, std::vector<int>(cols, -1));

    MeshNode client;
    client.label = "C";
    client.x_m = 0.0;
    client.y_m = 0.0;
    client.role = Role::Client;
    client.tx_power_dbm = scenario.tx_power_dbm;
    client.vicinity_range_m = scenario.vicinity_max_m;
    cell_index[0][0] = static_cast<int>(nodes.size());
    nodes.push_back(client);

    int serial = 1;
    for (auto [r, c] : server_cell_order(rows, cols)) {
        MeshNode node;
        node.label = "S" + std::to_string(serial++);
        node.x_m = c * s;
        node.y_m = r * s;
        node.role = Role::Server;
        node.tx_power_dbm = scenario.tx_power_dbm;
        node.vicinity_range_m = scenario.vicinity_max_m;
        cell_index[r][c] = static_cast<int>(nodes.size());
        nodes.push_back(node);
    }

    std::vector<DirectedLink> links;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int u = cell_index[r][c];
            auto connect = [&](int r2, int c2, bool diagonal) {
                if (r2 < 0 || r2 >= rows || c2 < 0 || c2 >= cols) return;
                const int v = cell_index[r2][c2];
                links.push_back({u, v, diagonal});
                links.push_back({v, u, diagonal});
            };
            // Enumerate each undirected pair once.
            connect(r, c + 1, false);
            connect(r + 1, c, false);
            if (scenario.diagonal_mode != DiagonalMode::Disconnected) {
                connect(r + 1, c + 1, true);
                connect(r + 1, c - 1, true);
            }
        }
    }

    return MeshTopology(std::move(nodes), std::move(links), scenario);
}

MeshTopology detangle(const MeshTopology& topology, const std::vector<std::string>& removed) {
    std::set<int> gone;
    for (const auto& label : removed) {
        const int idx = topology.index_of(label);  // throws NotFound for unknown labels
        if (idx == topology.client_index())
            throw InvalidArgument("cannot detangle the client node");
        gone.insert(idx);
    }

    std::vector<MeshNode> nodes;
    std::vector<int> remap(topology.node_count(), -1);
    for (const auto& node : topology.nodes()) {
        if (gone.count(node.index)) continue;
        remap[node.index] = static_cast<int>(nodes.size());
        nodes.push_back(node);
    }
    std::vector<DirectedLink> links;
    for (const auto& link : topology.links()) {
        if (gone.count(link.from) || gone.count(link.to)) continue;
        links.push_back({remap[link.from], remap[link.to], link.diagonal});
    }
    return MeshTopology(std::move(nodes), std::move(links), topology.scenario());
}

std::pair<std::vector<std::string>, std::vector<std::string>>
parity_groups(const MeshTopology& topology) {
    std::vector<std::string> odd, even;
    for (const auto& node : topology.nodes()) {
        if (node.role != Role::Server) continue;
        // Parity of the numeric part of the label (S1, S2, ...).
        const int number = std::stoi(node.label.substr(1));
        (number % 2 == 1 ? odd : even).push_back(node.label);
    }
    return {odd, even};
}

namespace {

std::string mode_name(DiagonalMode m) {
    switch (m) {
        case DiagonalMode::Connected: return "connected";
        case DiagonalMode::Intermittent: return "intermittent";
        case DiagonalMode::Disconnected: return "disconnected";
    }
    return "connected";
}

DiagonalMode mode_from_name(const std::string& s) {
    if (s == "connected") return DiagonalMode::Connected;
    if (s == "intermittent") return DiagonalMode::Intermittent;
    if (s == "disconnected") return DiagonalMode::Disconnected;
    throw ConfigError("unknown diagonal_mode '" + s + "'");
}

json scenario_to_json(const Scenario& s) {
    return json{{"name", s.name},
                {"tx_power_dbm", s.tx_power_dbm},
                {"vicinity_min_m", s.vicinity_min_m},
                {"vicinity_max_m", s.vicinity_max_m},
                {"diagonal_mode", mode_name(s.diagonal_mode)},
                {"hop_latency_mean_ms", s.hop_latency_mean_ms},
                {"intermittent_probability", s.intermittent_probability}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.tx_power_dbm = j.at("tx_power_dbm").get<double>();
    s.vicinity_min_m = j.at("vicinity_min_m").get<double>();
    s.vicinity_max_m = j.at("vicinity_max_m").get<double>();
    s.diagonal_mode = mode_from_name(j.at("diagonal_mode").get<std::string>());
    s.hop_latency_mean_ms = j.value("hop_latency_mean_ms", 2.19);
    s.intermittent_probability = j.value("intermittent_probability", 0.5);
    return s;
}

} // namespace

std::string topology_to_json(const MeshTopology& topology) {
    json nodes = json::array();
    for (const auto& node : topology.nodes()) {
        nodes.push_back({{"label", node.label},
                         {"x_m", node.x_m},
                         {"y_m", node.y_m},
                         {"role", node.role == Role::Client ? "client" : "server"},
                         {"tx_power_dbm", node.tx_power_dbm},
                         {"vicinity_range_m", node.vicinity_range_m}});
    }
    json links = json::array();
    for (const auto& link : topology.links()) {
        links.push_back({{"from", topology.label_of(link.from)},
                         {"to", topology.label_of(link.to)},
                         {"diagonal", link.diagonal}});
    }
    json j{{"scenario", scenario_to_json(topology.scenario())},
           {"nodes", nodes},
           {"links", links}};
    return j.dump(2);
}

MeshTopology topology_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("topology JSON parse failure: ") + e.what());
    }
    const Scenario scenario = scenario_from_json(j.at("scenario"));
    std::vector<MeshNode> nodes;
    std::vector<std::string> labels;
    for (const auto& jn : j.at("nodes")) {
        MeshNode node;
        node.label = jn.at("label").get<std::string>();
        node.x_m = jn.at("x_m").get<double>();
        node.y_m = jn.at("y_m").get<double>();
        node.role = jn.at("role").get<std::string>() == "client" ? Role::Client : Role::Server;
        node.tx_power_dbm = jn.value("tx_power_dbm", scenario.tx_power_dbm);
        node.vicinity_range_m = jn.value("vicinity_range_m", scenario.vicinity_max_m);
        labels.push_back(node.label);
        nodes.push_back(node);
    }
    auto index_of = [&](const std::string& label) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw ConfigError("link references unknown node '" + label + "'");
        return static_cast<int>(it - labels.begin());
    };
    std::vector<DirectedLink> links;
    for (const auto& jl : j.at("links")) {
        links.push_back({index_of(jl.at("from").get<std::string>()),
                         index_of(jl.at("to").get<std::string>()),
                         jl.value("diagonal", false)});
    }
    return MeshTopology(std::move(nodes), std::move(links), scenario);
}

} // namespace meshmon::topo
