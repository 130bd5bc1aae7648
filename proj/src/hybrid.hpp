#ifndef MESHMON_HYBRID_HPP
#define MESHMON_HYBRID_HPP

#include <map>
#include <string>
#include <vector>

namespace meshmon::hybrid {

// End-to-end scaling model: alpha mesh units tile the coverage area, beta
// PLC hops bridge between them.
struct ScaleUnits {
    int alpha = 1;
    int beta = 1;
};

// Hop-fraction mixture over per-hop-group delivery ratios.
double mesh_pdr(const std::map<int, double>& pdr_by_hop, const std::map<int, double>& k_fractions);

// (PDR_ble)^alpha * (PDR_plc)^beta.
double hybrid_pdr(double pdr_ble, double pdr_plc, int alpha, int beta);

// alpha*L_ble + L_gw + beta*(tau_rms + L_relay), all in milliseconds.
double hybrid_latency(double l_ble_ms, double l_gw_ms, double tau_rms_ms, double l_relay_ms,
                      int alpha, int beta);

// alpha from the area ratio (must be integral within 1%), beta = plc_nodes-1.
ScaleUnits scale_units(double mesh_area_m2, double grid_size_m2, int plc_nodes);

// Reference grid: 2.4 m x 1.8 m.
constexpr double kReferenceGridM2 = 2.4 * 1.8;

// Reference hybrid-report inputs: per-scenario mesh delivery ratios at
// 1/2/3/10 units, shared PLC hop delivery and per-hop latency constants for
// resistive and switching loads.
struct PdrTableRow {
    int scenario = 1;
    int alpha = 1;
    double mesh_length_m = 2.4;
    double pdr_ble = 1.0;   // at this alpha
    int beta = 0;           // 0 when the row prints no hybrid cell
    double pdr_plc = 0.938;
    double pdr_hybrid = 0.0;  // alpha=1 composition, as reported
};

struct LatencyTableRow {
    std::string mesh_state;  // dense | sparse
    std::string plc_load;    // resistive | switching
    int alpha = 1;
    double l_ble_ms = 8.4;
    int beta = 1;
    double l_plc_ms = 0.0;    // total over beta hops
    double l_hybrid_ms = 0.0; // alpha=1 composition
};

std::vector<PdrTableRow> reference_pdr_table();
std::vector<LatencyTableRow> reference_latency_table();

// Latency ratio of the 10-unit all-mesh deployment against one mesh unit
// plus one resistive PLC hop; the scalability argument of the hybrid design.
double scalability_ratio();

} // namespace meshmon::hybrid

#endif
