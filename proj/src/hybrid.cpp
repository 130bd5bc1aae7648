#include "hybrid.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meshmon::hybrid {

double mesh_pdr(const std::map<int, double>& pdr_by_hop,
                const std::map<int, double>& k_fractions) {
    double k_total = 0.0;
    for (const auto& [hops, k] : k_fractions) {
        if (k < 0.0) throw InvalidArgument("hop fractions must be non-negative");
        k_total += k;
    }
    if (std::abs(k_total - 1.0) > 1e-9)
        throw InvalidArgument("hop fractions must sum to 1, got " + std::to_string(k_total));
    double pdr = 0.0;
    for (const auto& [hops, k] : k_fractions) {
        const auto it = pdr_by_hop.find(hops);
        // A fraction with no corresponding path group contributes zero.
        pdr += k * (it == pdr_by_hop.end() ? 0.0 : it->second);
    }
    return pdr;
}

double hybrid_pdr(double pdr_ble, double pdr_plc, int alpha, int beta) {
    if (alpha < 0 || beta < 0) throw InvalidArgument("unit counts must be non-negative");
    if (pdr_ble < 0.0 || pdr_ble > 1.0 || pdr_plc < 0.0 || pdr_plc > 1.0)
        throw InvalidArgument("delivery ratios must lie in [0,1]");
    return std::pow(pdr_ble, alpha) * std::pow(pdr_plc, beta);
}

double hybrid_latency(double l_ble_ms, double l_gw_ms, double tau_rms_ms, double l_relay_ms,
                      int alpha, int beta) {
    if (l_ble_ms < 0.0 || l_gw_ms < 0.0 || tau_rms_ms < 0.0 || l_relay_ms < 0.0)
        throw InvalidArgument("latencies must be non-negative");
    if (alpha < 0 || beta < 0) throw InvalidArgument("unit counts must be non-negative");
    return alpha * l_ble_ms + l_gw_ms + beta * (tau_rms_ms + l_relay_ms);
}

ScaleUnits scale_units(double mesh_area_m2, double grid_size_m2, int plc_nodes) {
    if (!(mesh_area_m2 > 0.0) || !(grid_size_m2 > 0.0))
        throw InvalidArgument("areas must be positive");
    if (plc_nodes < 2) throw InvalidArgument("a PLC segment needs at least two nodes");
    const double ratio = mesh_area_m2 / grid_size_m2;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 0.01 * rounded) {
        std::ostringstream msg;
        msg << "mesh area is not an integral number of grid units (ratio " << ratio << ")";
        throw InvalidArgument(msg.str());
    }
    return {static_cast<int>(rounded), plc_nodes - 1};
}

std::vector<PdrTableRow> reference_pdr_table() {
    // Mesh delivery per scenario at 1/2/3/10 units plus the shared PLC hop
    // delivery; hybrid cells compose the scenario's one-unit mesh with the
    // row's hop count. Rows with beta 0 print no hybrid cell.
    return {
        {1, 1, 2.4, 0.9738, 1, 0.938, 0.913},
        {1, 2, 4.8, 0.948, 2, 0.938, 0.857},
        {1, 3, 7.2, 0.923, 3, 0.938, 0.804},
        {1, 10, 24.0, 0.767, 0, 0.938, 0.0},
        {2, 1, 2.4, 0.9695, 1, 0.938, 0.91},
        {2, 2, 4.8, 0.94, 2, 0.938, 0.852},
        {2, 3, 7.2, 0.911, 3, 0.938, 0.80},
        {2, 10, 24.0, 0.729, 0, 0.938, 0.0},
        {3, 1, 2.4, 0.932, 1, 0.938, 0.874},
        {3, 2, 4.8, 0.868, 2, 0.938, 0.82},
        {3, 3, 7.2, 0.809, 3, 0.938, 0.769},
        {3, 10, 24.0, 0.4944, 0, 0.938, 0.0},
    };
}

std::vector<LatencyTableRow> reference_latency_table() {
    // Per-hop PLC latency presets: 1.78 ms with resistive loads, 5.66 ms with
    // switching loads; l_plc is the row's printed multi-hop total.
    return {
        {"dense", "resistive", 1, 8.4, 1, 1.78, 10.15},
        {"dense", "resistive", 2, 16.8, 2, 3.77, 12.17},
        {"dense", "resistive", 3, 25.2, 3, 5.34, 13.74},
        {"dense", "resistive", 10, 84.0, 1, 1.78, 10.15},
        {"dense", "switching", 1, 8.4, 1, 5.66, 14.07},
        {"dense", "switching", 2, 16.8, 2, 11.57, 19.97},
        {"dense", "switching", 3, 40.5, 3, 16.98, 25.38},
        {"dense", "switching", 10, 84.0, 1, 5.66, 14.07},
        {"sparse", "resistive", 1, 13.5, 1, 1.78, 15.28},
        {"sparse", "resistive", 2, 27.0, 2, 3.77, 17.27},
        {"sparse", "resistive", 3, 40.5, 2, 5.34, 18.84},
        {"sparse", "resistive", 10, 135.0, 1, 1.78, 15.28},
        {"sparse", "switching", 1, 13.5, 1, 5.66, 19.32},
        {"sparse", "switching", 2, 27.0, 2, 11.57, 25.07},
        {"sparse", "switching", 3, 40.5, 3, 17.25, 30.76},
        {"sparse", "switching", 10, 135.0, 1, 5.66, 19.32},
    };
}

double scalability_ratio() {
    // Ten dense mesh units all on BLE (84 ms) against one unit bridged by a
    // single resistive PLC hop (10.15 ms).
    return 84.0 / 10.15;
}

} // namespace meshmon::hybrid
