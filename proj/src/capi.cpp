#include "meshmon/meshmon.h"

#include <cstring>
#include <sstream>
#include <string>

#include "anomaly.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "hybrid.hpp"
#include "paths.hpp"
#include "plc.hpp"
#include "topology.hpp"

using meshmon::experiment::ExperimentConfig;

struct meshmon_config {
    ExperimentConfig value;
};
struct meshmon_topology {
    meshmon::topo::MeshTopology value;
};
struct meshmon_profile {
    meshmon::anomaly::BaselineProfile value;
};
struct meshmon_report {
    meshmon::anomaly::AnomalyReport value;
    bool any = false;
};

namespace {

thread_local std::string g_last_error;

meshmon_status classify(const std::exception& e) {
    using namespace meshmon;
    if (dynamic_cast<const InvalidArgument*>(&e)) return MESHMON_ERR_INVALID_ARGUMENT;
    if (dynamic_cast<const NotFound*>(&e)) return MESHMON_ERR_NOT_FOUND;
    if (dynamic_cast<const InconsistentEvidence*>(&e)) return MESHMON_ERR_INCONSISTENT_EVIDENCE;
    if (dynamic_cast<const ZeroPathGroup*>(&e)) return MESHMON_ERR_ZERO_PATH_GROUP;
    if (dynamic_cast<const DegenerateChannel*>(&e)) return MESHMON_ERR_DEGENERATE_CHANNEL;
    if (dynamic_cast<const IncompleteObservation*>(&e))
        return MESHMON_ERR_INCOMPLETE_OBSERVATION;
    if (dynamic_cast<const ConfigError*>(&e)) return MESHMON_ERR_CONFIG;
    if (dynamic_cast<const IoError*>(&e)) return MESHMON_ERR_IO;
    return MESHMON_ERR_INTERNAL;
}

template <typename Fn>
meshmon_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return MESHMON_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return classify(e);
    } catch (...) {
        g_last_error = "unknown failure";
        return MESHMON_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

meshmon_status require(bool condition, const char* message) {
    if (condition) return MESHMON_OK;
    g_last_error = message;
    return MESHMON_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* meshmon_version(void) { return "0.1.0"; }

const char* meshmon_status_name(meshmon_status status) {
    switch (status) {
        case MESHMON_OK: return "ok";
        case MESHMON_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case MESHMON_ERR_NOT_FOUND: return "not-found";
        case MESHMON_ERR_INCONSISTENT_EVIDENCE: return "inconsistent-evidence";
        case MESHMON_ERR_ZERO_PATH_GROUP: return "zero-path-group";
        case MESHMON_ERR_DEGENERATE_CHANNEL: return "degenerate-channel";
        case MESHMON_ERR_INCOMPLETE_OBSERVATION: return "incomplete-observation";
        case MESHMON_ERR_CONFIG: return "config-error";
        case MESHMON_ERR_IO: return "io-error";
        case MESHMON_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* meshmon_last_error(void) { return g_last_error.c_str(); }

void meshmon_string_free(char* text) { delete[] text; }

/* ------------------------------------------------------------------ */

meshmon_status meshmon_config_default(meshmon_config** out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    *out = new meshmon_config{};
    return MESHMON_OK;
}

meshmon_status meshmon_config_from_json(const char* json_text, meshmon_config** out) {
    if (auto rc = require(out != nullptr && json_text != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new meshmon_config{meshmon::experiment::config_from_json(json_text)};
    });
}

meshmon_status meshmon_config_load(const char* path, meshmon_config** out) {
    if (auto rc = require(out != nullptr && path != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new meshmon_config{meshmon::experiment::load_config(path)}; });
}

meshmon_status meshmon_config_to_json(const meshmon_config* config, char** json_out) {
    if (auto rc = require(config != nullptr && json_out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *json_out = copy_string(meshmon::experiment::config_to_json(config->value));
    });
}

meshmon_status meshmon_config_set(meshmon_config* config, const char* key, const char* value) {
    if (auto rc = require(config != nullptr && key != nullptr && value != nullptr,
                          "null argument"))
        return rc;
    return guarded([&] {
        ExperimentConfig& c = config->value;
        const std::string k = key;
        const std::string v = value;
        auto as_int = [&] { return std::stoi(v); };
        auto as_u64 = [&] { return static_cast<std::uint64_t>(std::stoull(v)); };
        auto as_double = [&] { return std::stod(v); };
        if (k == "scenario") {
            const int scenario = as_int();
            if (scenario < 1 || scenario > 3)
                throw meshmon::ConfigError("scenario must be 1, 2 or 3");
            c.scenario = scenario;
        } else if (k == "seed") {
            c.seed = as_u64();
        } else if (k == "trials") {
            const int trials = as_int();
            if (trials < 1) throw meshmon::ConfigError("trials must be >= 1");
            c.trials = trials;
        } else if (k == "threads") {
            const int threads = as_int();
            if (threads < 1) throw meshmon::ConfigError("threads must be >= 1");
            c.threads = threads;
        } else if (k == "out") {
            c.out_dir = v;
        } else if (k == "rows") {
            c.rows = as_int();
        } else if (k == "cols") {
            c.cols = as_int();
        } else if (k == "window") {
            const int window = as_int();
            if (window < 1) throw meshmon::ConfigError("observation window must be >= 1");
            c.observation_window = window;
        } else if (k == "k-sigma") {
            c.k_sigma = as_double();
        } else if (k == "sensitivity-delta") {
            c.sensitivity_delta_ms = as_double();
        } else if (k == "max-hops") {
            c.max_hops = as_int();
        } else if (k == "detangle") {
            c.detangle.clear();
            std::stringstream ss(v);
            std::string label;
            while (std::getline(ss, label, ','))
                if (!label.empty()) c.detangle.push_back(label);
        } else if (k == "pdr-mode") {
            if (v == "per-bit") c.plc.pdr_mode = meshmon::plc::PdrMode::PerBitIndependent;
            else if (v == "paper") c.plc.pdr_mode = meshmon::plc::PdrMode::PaperLiteral;
            else throw meshmon::ConfigError("pdr-mode must be 'per-bit' or 'paper'");
        } else if (k == "q-mode") {
            if (v == "gaussian-tail")
                c.plc.q_mode = meshmon::plc::QFunctionMode::GaussianTail;
            else if (v == "erfc") c.plc.q_mode = meshmon::plc::QFunctionMode::Erfc;
            else throw meshmon::ConfigError("q-mode must be 'gaussian-tail' or 'erfc'");
        } else if (k == "cfr") {
            c.cfr_file = v;
        } else if (k == "hop-latency-mean") {
            c.hop_latency_mean_ms = as_double();
        } else if (k == "intermittent-probability") {
            c.intermittent_probability = as_double();
        } else if (k == "mesh-area") {
            c.hybrid_cfg.mesh_area_m2 = as_double();
        } else if (k == "grid-size") {
            c.hybrid_cfg.grid_size_m2 = as_double();
        } else if (k == "plc-nodes") {
            c.hybrid_cfg.plc_nodes = as_int();
        } else if (k == "gw-latency") {
            c.hybrid_cfg.l_gw_ms = as_double();
        } else {
            throw meshmon::ConfigError("unknown config key '" + k + "'");
        }
    });
}

void meshmon_config_free(meshmon_config* config) { delete config; }

/* ------------------------------------------------------------------ */

meshmon_status meshmon_topology_grid(int rows, int cols, int scenario, meshmon_topology** out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        *out = new meshmon_topology{meshmon::topo::build_grid_mesh(
            rows, cols, meshmon::topo::scenario_preset(scenario))};
    });
}

meshmon_status meshmon_topology_from_config(const meshmon_config* config,
                                            meshmon_topology** out) {
    if (auto rc = require(config != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new meshmon_topology{meshmon::experiment::build_topology(config->value)};
    });
}

meshmon_status meshmon_topology_from_json(const char* json_text, meshmon_topology** out) {
    if (auto rc = require(json_text != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new meshmon_topology{meshmon::topo::topology_from_json(json_text)};
    });
}

meshmon_status meshmon_topology_to_json(const meshmon_topology* topology, char** json_out) {
    if (auto rc = require(topology != nullptr && json_out != nullptr, "null argument"))
        return rc;
    return guarded([&] {
        *json_out = copy_string(meshmon::topo::topology_to_json(topology->value));
    });
}

meshmon_status meshmon_topology_detangle(const meshmon_topology* topology,
                                         const char* const* labels, size_t n_labels,
                                         meshmon_topology** out) {
    if (auto rc = require(topology != nullptr && out != nullptr &&
                              (labels != nullptr || n_labels == 0),
                          "null argument"))
        return rc;
    return guarded([&] {
        std::vector<std::string> removed(labels, labels + n_labels);
        *out = new meshmon_topology{meshmon::topo::detangle(topology->value, removed)};
    });
}

int meshmon_topology_node_count(const meshmon_topology* topology) {
    return topology ? topology->value.node_count() : 0;
}

int meshmon_topology_link_count(const meshmon_topology* topology) {
    return topology ? topology->value.link_count() : 0;
}

meshmon_status meshmon_topology_path_count(const meshmon_topology* topology, const char* src,
                                           const char* dst, int64_t* count_out) {
    if (auto rc = require(topology != nullptr && src != nullptr && dst != nullptr &&
                              count_out != nullptr,
                          "null argument"))
        return rc;
    return guarded([&] {
        const auto& topo = topology->value;
        const auto dag =
            meshmon::topo::build_dag(topo, topo.index_of(src), topo.index_of(dst));
        *count_out = dag.path_count;
    });
}

void meshmon_topology_free(meshmon_topology* topology) { delete topology; }

/* ------------------------------------------------------------------ */

meshmon_status meshmon_run_characterize(const meshmon_config* config, meshmon_profile** out) {
    if (auto rc = require(config != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] {
        auto result = meshmon::experiment::run_characterize(config->value);
        *out = new meshmon_profile{std::move(result.profile)};
    });
}

meshmon_status meshmon_profile_to_json(const meshmon_profile* profile, char** json_out) {
    if (auto rc = require(profile != nullptr && json_out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *json_out = copy_string(meshmon::anomaly::profile_to_json(profile->value));
    });
}

void meshmon_profile_free(meshmon_profile* profile) { delete profile; }

meshmon_status meshmon_run_detect(const meshmon_config* config, const char* profile_path,
                                  const char* observations_path, const char* const* detangle,
                                  size_t n_detangle, meshmon_report** out) {
    if (auto rc = require(config != nullptr && profile_path != nullptr && out != nullptr,
                          "null argument"))
        return rc;
    return guarded([&] {
        std::vector<std::string> removed;
        for (size_t i = 0; i < n_detangle; ++i) removed.emplace_back(detangle[i]);
        auto result = meshmon::experiment::run_detect(
            config->value, profile_path,
            observations_path == nullptr ? std::string() : observations_path, removed);
        auto* report = new meshmon_report{std::move(result.report), false};
        report->any = report->value.any_anomaly();
        *out = report;
    });
}

meshmon_status meshmon_report_to_json(const meshmon_report* report, char** json_out) {
    if (auto rc = require(report != nullptr && json_out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *json_out = copy_string(meshmon::anomaly::report_to_json(report->value));
    });
}

int meshmon_report_any_anomaly(const meshmon_report* report) {
    return report != nullptr && report->any ? 1 : 0;
}

void meshmon_report_free(meshmon_report* report) { delete report; }

meshmon_status meshmon_run_plc(const meshmon_config* config, const char* cfr_path,
                               char** metrics_json_out) {
    if (auto rc = require(config != nullptr && metrics_json_out != nullptr, "null argument"))
        return rc;
    return guarded([&] {
        auto result = meshmon::experiment::run_plc(
            config->value, cfr_path == nullptr ? std::string() : cfr_path);
        *metrics_json_out =
            copy_string(meshmon::plc::metrics_to_json(result.metrics, config->value.plc));
    });
}

meshmon_status meshmon_run_hybrid(const meshmon_config* config, char** summary_json_out) {
    if (auto rc = require(config != nullptr && summary_json_out != nullptr, "null argument"))
        return rc;
    return guarded([&] {
        auto result = meshmon::experiment::run_hybrid(config->value);
        std::ostringstream json;
        json << "{\n  \"scalability_ratio\": " << result.scalability_ratio << "\n}";
        *summary_json_out = copy_string(json.str());
    });
}

/* ------------------------------------------------------------------ */

meshmon_status meshmon_hybrid_pdr(double pdr_ble, double pdr_plc, int alpha, int beta,
                                  double* out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] { *out = meshmon::hybrid::hybrid_pdr(pdr_ble, pdr_plc, alpha, beta); });
}

meshmon_status meshmon_hybrid_latency(double l_ble_ms, double l_gw_ms, double tau_rms_ms,
                                      double l_relay_ms, int alpha, int beta, double* out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        *out = meshmon::hybrid::hybrid_latency(l_ble_ms, l_gw_ms, tau_rms_ms, l_relay_ms, alpha,
                                               beta);
    });
}

meshmon_status meshmon_scale_units(double mesh_area_m2, double grid_size_m2, int plc_nodes,
                                   int* alpha_out, int* beta_out) {
    if (auto rc = require(alpha_out != nullptr && beta_out != nullptr, "null output pointer"))
        return rc;
    return guarded([&] {
        const auto units = meshmon::hybrid::scale_units(mesh_area_m2, grid_size_m2, plc_nodes);
        *alpha_out = units.alpha;
        *beta_out = units.beta;
    });
}

meshmon_status meshmon_noise_psd(double f_hz, double df_hz, double* dbm_per_hz_out) {
    if (auto rc = require(dbm_per_hz_out != nullptr, "null output pointer")) return rc;
    return guarded([&] { *dbm_per_hz_out = meshmon::plc::noise_psd_dbm_per_hz(f_hz, df_hz); });
}

meshmon_status meshmon_ber_bpsk(double sinr, int use_erfc, double* out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        *out = meshmon::plc::ber_bpsk(sinr, use_erfc ? meshmon::plc::QFunctionMode::Erfc
                                                     : meshmon::plc::QFunctionMode::GaussianTail);
    });
}

meshmon_status meshmon_pdr_plc(double ber, int n_bits, int paper_literal, double* out) {
    if (auto rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        *out = meshmon::plc::pdr_plc(ber, n_bits,
                                     paper_literal ? meshmon::plc::PdrMode::PaperLiteral
                                                   : meshmon::plc::PdrMode::PerBitIndependent);
    });
}

} // extern "C"
