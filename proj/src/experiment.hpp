#ifndef MESHMON_EXPERIMENT_HPP
#define MESHMON_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anomaly.hpp"
#include "hybrid.hpp"
#include "plc.hpp"
#include "topology.hpp"

namespace meshmon::experiment {

// One fully specified, reproducible run. Every field has a documented
// default; a JSON config file and command-line flags both map onto this.
struct ExperimentConfig {
    int scenario = 1;
    int rows = 3;
    int cols = 4;
    std::uint64_t seed = 7;
    int trials = 12000;
    int threads = 1;
    int observation_window = 400;
    double k_sigma = 3.0;
    double sensitivity_delta_ms = 0.15;
    int max_hops = 4;
    std::map<int, double> k_fractions = {{2, 1.0 / 3.0}, {3, 1.0 / 3.0}, {4, 1.0 / 3.0}};
    std::vector<std::string> detangle;
    std::optional<double> hop_latency_mean_ms;  // overrides the preset calibration
    std::optional<double> intermittent_probability;

    plc::PlcOptions plc;
    std::string cfr_file;

    struct Hybrid {
        double grid_size_m2 = hybrid::kReferenceGridM2;
        double mesh_area_m2 = hybrid::kReferenceGridM2;
        int plc_nodes = 2;
        double l_gw_ms = 0.0;
    } hybrid_cfg;

    std::string out_dir = "out";
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// Scenario with config overrides applied.
topo::Scenario effective_scenario(const ExperimentConfig& config);
topo::MeshTopology build_topology(const ExperimentConfig& config);

// FNV-1a of the canonical config dump; stamped into every output file.
std::string provenance_line(const ExperimentConfig& config);

// characterize: profile JSON + per-source baseline table + scenario summary
// (and the de-tangled comparison table when the config removes nodes).
struct CharacterizeResult {
    anomaly::BaselineProfile profile;
    std::vector<std::string> written_files;
    double s1_to_client_mean_ms = 0.0;
    double mesh_pdr = 0.0;
};
CharacterizeResult run_characterize(const ExperimentConfig& config);

// detect: report JSON against a stored profile, from an observation CSV or
// a simulated de-tanglement. Returns the report; exit-code policy is the
// caller's concern.
struct DetectResult {
    anomaly::AnomalyReport report;
    std::vector<std::string> written_files;
};
DetectResult run_detect(const ExperimentConfig& config, const std::string& profile_path,
                        const std::string& observations_path,
                        const std::vector<std::string>& simulate_detangle);

// plc: metrics JSON for a CFR file.
struct PlcResult {
    plc::PlcLinkMetrics metrics;
    std::vector<std::string> written_files;
};
PlcResult run_plc(const ExperimentConfig& config, const std::string& cfr_path);

// hybrid: delivery and latency tables plus the scalability summary.
struct HybridResult {
    std::vector<std::string> written_files;
    double scalability_ratio = 0.0;
};
HybridResult run_hybrid(const ExperimentConfig& config);

} // namespace meshmon::experiment

#endif
