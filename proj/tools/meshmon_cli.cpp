// Command-line front end; everything goes through the shared library's C API.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshmon/meshmon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAnomaly = 2;

struct ConfigDeleter {
    void operator()(meshmon_config* p) const { meshmon_config_free(p); }
};
using ConfigPtr = std::unique_ptr<meshmon_config, ConfigDeleter>;

struct StringDeleter {
    void operator()(char* p) const { meshmon_string_free(p); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail(meshmon_status status) {
    std::fprintf(stderr, "meshmon: %s: %s\n", meshmon_status_name(status),
                 meshmon_last_error());
    return kExitError;
}

// Shared flag values; only flags the user actually passed override the
// config file.
struct CommonFlags {
    std::string config_path;
    std::string seed, scenario, trials, threads, out, detangle, pdr_mode, q_mode;
    std::string rows, cols, window, k_sigma, sensitivity_delta, hop_latency_mean;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed, "RNG seed (u64)");
        cmd->add_option("--scenario", scenario, "scenario preset 1|2|3");
        cmd->add_option("--trials", trials, "Monte-Carlo trial count");
        cmd->add_option("--threads", threads, "worker threads for trial loops");
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--detangle", detangle, "comma-separated node labels to remove");
        cmd->add_option("--pdr-mode", pdr_mode, "paper|per-bit");
        cmd->add_option("--q-mode", q_mode, "gaussian-tail|erfc");
        cmd->add_option("--rows", rows, "grid rows");
        cmd->add_option("--cols", cols, "grid columns");
        cmd->add_option("--window", window, "observation window (trials per epoch)");
        cmd->add_option("--k-sigma", k_sigma, "threshold width in epoch std deviations");
        cmd->add_option("--sensitivity-delta", sensitivity_delta,
                        "critical-relay sensitivity (ms)");
        cmd->add_option("--hop-latency-mean", hop_latency_mean, "per-hop mean latency (ms)");
    }

    meshmon_status apply(meshmon_config* config) const {
        const std::pair<const char*, const std::string*> pairs[] = {
            {"seed", &seed},
            {"scenario", &scenario},
            {"trials", &trials},
            {"threads", &threads},
            {"out", &out},
            {"detangle", &detangle},
            {"pdr-mode", &pdr_mode},
            {"q-mode", &q_mode},
            {"rows", &rows},
            {"cols", &cols},
            {"window", &window},
            {"k-sigma", &k_sigma},
            {"sensitivity-delta", &sensitivity_delta},
            {"hop-latency-mean", &hop_latency_mean},
        };
        for (const auto& [key, value] : pairs) {
            if (value->empty()) continue;
            if (auto rc = meshmon_config_set(config, key, value->c_str())) return rc;
        }
        return MESHMON_OK;
    }

    meshmon_status make_config(ConfigPtr& out_config) const {
        meshmon_config* raw = nullptr;
        meshmon_status rc = config_path.empty() ? meshmon_config_default(&raw)
                                                : meshmon_config_load(config_path.c_str(), &raw);
        if (rc != MESHMON_OK) return rc;
        out_config.reset(raw);
        return apply(out_config.get());
    }
};

std::vector<std::string> split_labels(const std::string& csv) {
    std::vector<std::string> labels;
    std::string current;
    for (char c : csv) {
        if (c == ',') {
            if (!current.empty()) labels.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) labels.push_back(current);
    return labels;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mesh + powerline network characterization and de-tangled-mesh detection"};
    app.require_subcommand(1);

    CommonFlags characterize_flags, detect_flags, plc_flags, hybrid_flags, topology_flags;

    auto* cmd_characterize = app.add_subcommand(
        "characterize", "profile the baseline mesh (latency/PDR statistics and thresholds)");
    characterize_flags.attach(cmd_characterize);

    auto* cmd_detect =
        app.add_subcommand("detect", "compare an observation epoch against a stored profile");
    detect_flags.attach(cmd_detect);
    std::string profile_path, observations_path, simulate_detangle;
    cmd_detect->add_option("--profile", profile_path, "profile JSON from `characterize`")
        ->required();
    cmd_detect->add_option("--observations", observations_path,
                           "observation CSV (epoch,source,latency_ms,pdr)");
    cmd_detect->add_option("--simulate-detangle", simulate_detangle,
                           "simulate an epoch with these nodes separated");

    auto* cmd_plc = app.add_subcommand("plc", "derive PLC link metrics from a CFR file");
    plc_flags.attach(cmd_plc);
    std::string cfr_path;
    cmd_plc->add_option("--cfr", cfr_path, "CFR CSV file (freq_hz,re,im)");

    auto* cmd_hybrid =
        app.add_subcommand("hybrid", "emit hybrid delivery/latency tables and scaling summary");
    hybrid_flags.attach(cmd_hybrid);

    auto* cmd_topology = app.add_subcommand("topology", "dump the configured topology as JSON");
    topology_flags.attach(cmd_topology);

    CLI11_PARSE(app, argc, argv);

    if (cmd_characterize->parsed()) {
        ConfigPtr config;
        if (auto rc = characterize_flags.make_config(config)) return fail(rc);
        meshmon_profile* profile = nullptr;
        if (auto rc = meshmon_run_characterize(config.get(), &profile)) return fail(rc);
        meshmon_profile_free(profile);
        std::printf("baseline profile written\n");
        return kExitOk;
    }

    if (cmd_detect->parsed()) {
        ConfigPtr config;
        if (auto rc = detect_flags.make_config(config)) return fail(rc);
        const auto labels = split_labels(simulate_detangle);
        std::vector<const char*> label_ptrs;
        for (const auto& label : labels) label_ptrs.push_back(label.c_str());
        meshmon_report* report = nullptr;
        if (auto rc = meshmon_run_detect(
                config.get(), profile_path.c_str(),
                observations_path.empty() ? nullptr : observations_path.c_str(),
                label_ptrs.empty() ? nullptr : label_ptrs.data(), label_ptrs.size(), &report))
            return fail(rc);
        StringPtr json;
        char* raw = nullptr;
        if (auto rc = meshmon_report_to_json(report, &raw)) {
            meshmon_report_free(report);
            return fail(rc);
        }
        json.reset(raw);
        std::printf("%s\n", json.get());
        const bool anomalous = meshmon_report_any_anomaly(report) != 0;
        meshmon_report_free(report);
        return anomalous ? kExitAnomaly : kExitOk;
    }

    if (cmd_plc->parsed()) {
        ConfigPtr config;
        if (auto rc = plc_flags.make_config(config)) return fail(rc);
        char* raw = nullptr;
        if (auto rc = meshmon_run_plc(config.get(), cfr_path.empty() ? nullptr : cfr_path.c_str(),
                                      &raw))
            return fail(rc);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return kExitOk;
    }

    if (cmd_hybrid->parsed()) {
        ConfigPtr config;
        if (auto rc = hybrid_flags.make_config(config)) return fail(rc);
        char* raw = nullptr;
        if (auto rc = meshmon_run_hybrid(config.get(), &raw)) return fail(rc);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return kExitOk;
    }

    if (cmd_topology->parsed()) {
        ConfigPtr config;
        if (auto rc = topology_flags.make_config(config)) return fail(rc);
        meshmon_topology* topology = nullptr;
        if (auto rc = meshmon_topology_from_config(config.get(), &topology)) return fail(rc);
        char* raw = nullptr;
        if (auto rc = meshmon_topology_to_json(topology, &raw)) {
            meshmon_topology_free(topology);
            return fail(rc);
        }
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        meshmon_topology_free(topology);
        return kExitOk;
    }

    return kExitError;
}
