#include "experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "latency.hpp"

namespace meshmon::experiment {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "meshmon 0.1.0";

std::string format_number(double value) {
    if (std::isinf(value)) return "inf";
    std::ostringstream out;
    out << std::setprecision(12) << value;
    return out.str();
}

void write_text(const std::string& path, const std::string& text,
                std::vector<std::string>& written) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    written.push_back(path);
}

std::string out_path(const ExperimentConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    return (std::filesystem::path(config.out_dir) / name).string();
}

} // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config JSON parse failure: ") + e.what());
    }
    ExperimentConfig c;
    c.scenario = j.value("scenario", c.scenario);
    if (c.scenario < 1 || c.scenario > 3)
        throw ConfigError("scenario must be 1, 2 or 3");
    c.rows = j.value("rows", c.rows);
    c.cols = j.value("cols", c.cols);
    c.seed = j.value("seed", c.seed);
    c.trials = j.value("trials", c.trials);
    if (c.trials < 1) throw ConfigError("trials must be >= 1");
    c.threads = j.value("threads", c.threads);
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
    c.observation_window = j.value("observation_window", c.observation_window);
    if (c.observation_window < 1) throw ConfigError("observation_window must be >= 1");
    c.k_sigma = j.value("k_sigma", c.k_sigma);
    if (c.k_sigma < 0.0) throw ConfigError("k_sigma must be non-negative");
    c.sensitivity_delta_ms = j.value("sensitivity_delta_ms", c.sensitivity_delta_ms);
    c.max_hops = j.value("max_hops", c.max_hops);
    if (c.max_hops < 1) throw ConfigError("max_hops must be >= 1");
    if (j.contains("k_fractions")) {
        c.k_fractions.clear();
        for (const auto& [key, value] : j.at("k_fractions").items())
            c.k_fractions[std::stoi(key)] = value.get<double>();
    }
    if (j.contains("detangle")) c.detangle = j.at("detangle").get<std::vector<std::string>>();
    if (j.contains("hop_latency_mean_ms"))
        c.hop_latency_mean_ms = j.at("hop_latency_mean_ms").get<double>();
    if (j.contains("intermittent_probability"))
        c.intermittent_probability = j.at("intermittent_probability").get<double>();

    if (j.contains("plc")) {
        const auto& jp = j.at("plc");
        c.plc.tx_psd_w_per_hz = jp.value("tx_psd_w_per_hz", c.plc.tx_psd_w_per_hz);
        c.plc.noise_w_per_hz = jp.value("noise_w_per_hz", c.plc.noise_w_per_hz);
        c.plc.interference_w_per_hz =
            jp.value("interference_w_per_hz", c.plc.interference_w_per_hz);
        c.plc.packet_bits = jp.value("packet_bits", c.plc.packet_bits);
        if (jp.contains("q_mode")) {
            const std::string mode = jp.at("q_mode").get<std::string>();
            if (mode == "gaussian-tail") c.plc.q_mode = plc::QFunctionMode::GaussianTail;
            else if (mode == "erfc") c.plc.q_mode = plc::QFunctionMode::Erfc;
            else throw ConfigError("q_mode must be 'gaussian-tail' or 'erfc'");
        }
        if (jp.contains("pdr_mode")) {
            const std::string mode = jp.at("pdr_mode").get<std::string>();
            if (mode == "per-bit") c.plc.pdr_mode = plc::PdrMode::PerBitIndependent;
            else if (mode == "paper") c.plc.pdr_mode = plc::PdrMode::PaperLiteral;
            else throw ConfigError("pdr_mode must be 'per-bit' or 'paper'");
        }
        c.cfr_file = jp.value("cfr_file", c.cfr_file);
    }
    if (j.contains("hybrid")) {
        const auto& jh = j.at("hybrid");
        c.hybrid_cfg.grid_size_m2 = jh.value("grid_size_m2", c.hybrid_cfg.grid_size_m2);
        c.hybrid_cfg.mesh_area_m2 = jh.value("mesh_area_m2", c.hybrid_cfg.mesh_area_m2);
        c.hybrid_cfg.plc_nodes = jh.value("plc_nodes", c.hybrid_cfg.plc_nodes);
        c.hybrid_cfg.l_gw_ms = jh.value("l_gw_ms", c.hybrid_cfg.l_gw_ms);
    }
    c.out_dir = j.value("out_dir", c.out_dir);
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    json kf = json::object();
    for (const auto& [hops, k] : c.k_fractions) kf[std::to_string(hops)] = k;
    json j{{"scenario", c.scenario},
           {"rows", c.rows},
           {"cols", c.cols},
           {"seed", c.seed},
           {"trials", c.trials},
           {"threads", c.threads},
           {"observation_window", c.observation_window},
           {"k_sigma", c.k_sigma},
           {"sensitivity_delta_ms", c.sensitivity_delta_ms},
           {"max_hops", c.max_hops},
           {"k_fractions", kf},
           {"detangle", c.detangle},
           {"plc",
            {{"tx_psd_w_per_hz", c.plc.tx_psd_w_per_hz},
             {"noise_w_per_hz", c.plc.noise_w_per_hz},
             {"interference_w_per_hz", c.plc.interference_w_per_hz},
             {"packet_bits", c.plc.packet_bits},
             {"q_mode", c.plc.q_mode == plc::QFunctionMode::GaussianTail ? "gaussian-tail"
                                                                         : "erfc"},
             {"pdr_mode",
              c.plc.pdr_mode == plc::PdrMode::PerBitIndependent ? "per-bit" : "paper"},
             {"cfr_file", c.cfr_file}}},
           {"hybrid",
            {{"grid_size_m2", c.hybrid_cfg.grid_size_m2},
             {"mesh_area_m2", c.hybrid_cfg.mesh_area_m2},
             {"plc_nodes", c.hybrid_cfg.plc_nodes},
             {"l_gw_ms", c.hybrid_cfg.l_gw_ms}}},
           {"out_dir", c.out_dir}};
    if (c.hop_latency_mean_ms) j["hop_latency_mean_ms"] = *c.hop_latency_mean_ms;
    if (c.intermittent_probability) j["intermittent_probability"] = *c.intermittent_probability;
    return j.dump(2);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

topo::Scenario effective_scenario(const ExperimentConfig& config) {
    topo::Scenario scenario = topo::scenario_preset(config.scenario);
    if (config.hop_latency_mean_ms) scenario.hop_latency_mean_ms = *config.hop_latency_mean_ms;
    if (config.intermittent_probability)
        scenario.intermittent_probability = *config.intermittent_probability;
    return scenario;
}

topo::MeshTopology build_topology(const ExperimentConfig& config) {
    return topo::build_grid_mesh(config.rows, config.cols, effective_scenario(config));
}

std::string provenance_line(const ExperimentConfig& config) {
    std::ostringstream out;
    out << kToolVersion << " | config_hash=" << std::hex << std::setw(16) << std::setfill('0')
        << anomaly::fnv1a64(config_to_json(config)) << std::dec << " | seed=" << config.seed;
    return out.str();
}

CharacterizeResult run_characterize(const ExperimentConfig& config) {
    const topo::MeshTopology topology = build_topology(config);
    anomaly::CharacterizeOptions opts;
    opts.trials = config.trials;
    opts.observation_window = config.observation_window;
    opts.k_sigma = config.k_sigma;
    opts.seed = config.seed;
    opts.threads = config.threads;

    CharacterizeResult result;
    result.profile = anomaly::characterize_baseline(topology, opts);

    const std::string provenance = provenance_line(config);
    write_text(out_path(config, "profile.json"), anomaly::profile_to_json(result.profile),
               result.written_files);

    // Per-source latency table over the same seeded trials.
    const auto samples = topo::sample_link_uncertainty(topology, config.trials, config.seed);
    std::vector<int> sources;
    for (const auto& node : topology.nodes())
        if (node.role == topo::Role::Server) sources.push_back(node.index);
    const int dst = topology.client_index();
    const auto table = latency::latency_table(topology, samples, sources, dst);
    {
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "source,mean_ms,std_ms,unreachable_fraction\n";
        for (const auto& row : table)
            csv << row.src << "," << format_number(row.mean_ms) << ","
                << format_number(row.std_ms) << "," << format_number(row.unreachable_fraction)
                << "\n";
        write_text(out_path(config, "latency_table.csv"), csv.str(), result.written_files);
    }
    for (const auto& row : table)
        if (row.src == "S1") result.s1_to_client_mean_ms = row.mean_ms;

    result.mesh_pdr = anomaly::mesh_average_pdr(topology, samples, dst);

    // Per-source thresholds next to the plain statistics.
    {
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "source,latency_mean_ms,latency_std_ms,latency_trial_std_ms,pdr_mean,pdr_std,"
               "unreachable_fraction,b_thl_ms,b_thp\n";
        for (const auto& s : result.profile.sources)
            csv << s.source << "," << format_number(s.latency_mean_ms) << ","
                << format_number(s.latency_std_ms) << ","
                << format_number(s.latency_trial_std_ms) << "," << format_number(s.pdr_mean)
                << "," << format_number(s.pdr_std) << ","
                << format_number(s.unreachable_fraction) << "," << format_number(s.b_thl_ms)
                << "," << format_number(s.b_thp) << "\n";
        write_text(out_path(config, "baseline_profile.csv"), csv.str(), result.written_files);
    }

    // De-tangled comparison (paired seeds) when the config names nodes.
    double detangled_s1 = std::numeric_limits<double>::quiet_NaN();
    if (!config.detangle.empty()) {
        const topo::MeshTopology reduced = topo::detangle(topology, config.detangle);
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "source,baseline_mean_ms,detangled_mean_ms,delta_ms\n";
        for (const auto& row : table) {
            csv << row.src << "," << format_number(row.mean_ms) << ",";
            const auto idx = reduced.find(row.src);
            if (!idx) {
                csv << "removed,\n";
                continue;
            }
            // Surviving links keep their sampled values.
            std::vector<topo::LinkSample> projected;
            projected.reserve(samples.size());
            std::vector<int> link_map(reduced.link_count());
            for (int id = 0; id < reduced.link_count(); ++id) {
                const auto& link = reduced.links()[id];
                link_map[id] = topology.link_id(topology.index_of(reduced.label_of(link.from)),
                                                topology.index_of(reduced.label_of(link.to)));
            }
            for (const auto& sample : samples) {
                topo::LinkSample p;
                p.trial_index = sample.trial_index;
                p.failure_prob.resize(reduced.link_count());
                p.latency_ms.resize(reduced.link_count());
                p.present.resize(reduced.link_count());
                for (int id = 0; id < reduced.link_count(); ++id) {
                    p.failure_prob[id] = sample.failure_prob[link_map[id]];
                    p.latency_ms[id] = sample.latency_ms[link_map[id]];
                    p.present[id] = sample.present[link_map[id]];
                }
                projected.push_back(std::move(p));
            }
            const auto stats = latency::average_latency(reduced, projected, *idx,
                                                        reduced.client_index());
            csv << format_number(stats.mean_ms) << ","
                << (std::isinf(stats.mean_ms) ? "inf"
                                              : format_number(stats.mean_ms - row.mean_ms))
                << "\n";
            if (row.src == "S1") detangled_s1 = stats.mean_ms;
        }
        write_text(out_path(config, "detangled_table.csv"), csv.str(), result.written_files);
    }

    // Scenario summary row (source-corner pair plus the mesh-wide average).
    {
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "scenario,s1_to_client_mean_ms,detangled_s1_to_client_mean_ms,mesh_pdr\n";
        csv << result.profile.scenario << "," << format_number(result.s1_to_client_mean_ms)
            << ",";
        if (!config.detangle.empty()) csv << format_number(detangled_s1);
        csv << "," << format_number(result.mesh_pdr) << "\n";
        write_text(out_path(config, "scenario_summary.csv"), csv.str(), result.written_files);
    }
    return result;
}

DetectResult run_detect(const ExperimentConfig& config, const std::string& profile_path,
                        const std::string& observations_path,
                        const std::vector<std::string>& simulate_detangle) {
    std::ifstream in(profile_path);
    if (!in) throw IoError("cannot open profile '" + profile_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const anomaly::BaselineProfile profile = anomaly::profile_from_json(buffer.str());

    const topo::MeshTopology topology = build_topology(config);
    std::vector<std::string> source_labels;
    std::vector<int> source_indices;
    for (const auto& s : profile.sources) {
        source_labels.push_back(s.source);
        source_indices.push_back(topology.index_of(s.source));
    }

    std::vector<anomaly::Observation> observations;
    if (!observations_path.empty()) {
        observations = anomaly::load_observations_csv(observations_path);
        if (observations.empty()) throw IoError("observations file has no rows");
    } else {
        if (simulate_detangle.empty())
            throw ConfigError("detect needs an observations file or nodes to de-tangle");
        const topo::MeshTopology reduced = topo::detangle(topology, simulate_detangle);
        const std::uint64_t sim_seed = topo::splitmix64(config.seed ^ 0x0b5e12f3a5ULL);
        observations.push_back(anomaly::simulate_observation(reduced, source_labels,
                                                             reduced.client_index(),
                                                             profile.observation_window,
                                                             sim_seed));
    }

    // Critical-relay map for localization, on the baseline topology with the
    // profile's seed so reruns stay byte-identical.
    const int cmap_trials = std::min(config.trials, 1000);
    const auto cmap_samples =
        topo::sample_link_uncertainty(topology, cmap_trials, profile.seed);
    const anomaly::CriticalNodeMap cmap = anomaly::build_critical_node_map(
        topology, source_indices, topology.client_index(), cmap_samples,
        config.sensitivity_delta_ms);

    DetectResult result;
    json reports = json::array();
    bool any = false;
    for (const auto& observation : observations) {
        anomaly::AnomalyReport report = anomaly::detect(profile, observation);
        report.suspects = anomaly::localize(report, cmap);
        // the returned handle carries the first anomalous epoch (or the
        // first epoch when everything is clean); the file carries them all
        if (result.report.verdicts.empty() || (!any && report.any_anomaly()))
            result.report = report;
        any = any || report.any_anomaly();
        reports.push_back(json::parse(anomaly::report_to_json(report)));
    }
    json j{{"schema", "meshmon-detect-v1"},
           {"provenance", provenance_line(config)},
           {"any_anomaly", any},
           {"reports", reports}};
    write_text(out_path(config, "report.json"), j.dump(2), result.written_files);
    return result;
}

PlcResult run_plc(const ExperimentConfig& config, const std::string& cfr_path) {
    const std::string path = cfr_path.empty() ? config.cfr_file : cfr_path;
    if (path.empty()) throw ConfigError("no CFR file given");
    const plc::Cfr cfr = plc::load_cfr_csv(path);
    PlcResult result;
    result.metrics = plc::characterize_link(cfr, config.plc);
    json j = json::parse(plc::metrics_to_json(result.metrics, config.plc));
    j["provenance"] = provenance_line(config);
    j["cfr_file"] = path;
    write_text(out_path(config, "plc_metrics.json"), j.dump(2), result.written_files);
    return result;
}

HybridResult run_hybrid(const ExperimentConfig& config) {
    HybridResult result;
    const std::string provenance = provenance_line(config);

    {
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "scenario,alpha,mesh_length_m,pdr_ble_pct,beta,pdr_plc_pct,pdr_hybrid_pct\n";
        // The hybrid column composes one mesh unit with the row's hop count.
        std::map<int, double> alpha1;
        for (const auto& row : hybrid::reference_pdr_table())
            if (row.alpha == 1) alpha1[row.scenario] = row.pdr_ble;
        for (const auto& row : hybrid::reference_pdr_table()) {
            csv << row.scenario << "," << row.alpha << "," << format_number(row.mesh_length_m)
                << "," << format_number(100.0 * row.pdr_ble) << ",";
            if (row.beta > 0) {
                const double composed =
                    hybrid::hybrid_pdr(alpha1[row.scenario], row.pdr_plc, 1, row.beta);
                csv << row.beta << "," << format_number(100.0 * row.pdr_plc) << ","
                    << format_number(100.0 * composed);
            } else {
                csv << ",,";
            }
            csv << "\n";
        }
        write_text(out_path(config, "hybrid_pdr_table.csv"), csv.str(), result.written_files);
    }

    {
        std::ostringstream csv;
        csv << "# " << provenance << "\n";
        csv << "mesh_state,plc_load,alpha,l_ble_ms,beta,l_plc_ms,l_hybrid_ms\n";
        // The hybrid column composes one mesh unit with the row's PLC total.
        std::map<std::string, double> one_unit;
        for (const auto& row : hybrid::reference_latency_table())
            if (row.alpha == 1) one_unit[row.mesh_state] = row.l_ble_ms;
        for (const auto& row : hybrid::reference_latency_table()) {
            const double composed =
                one_unit[row.mesh_state] + config.hybrid_cfg.l_gw_ms + row.l_plc_ms;
            csv << row.mesh_state << "," << row.plc_load << "," << row.alpha << ","
                << format_number(row.l_ble_ms) << "," << row.beta << ","
                << format_number(row.l_plc_ms) << "," << format_number(composed) << "\n";
        }
        write_text(out_path(config, "hybrid_latency_table.csv"), csv.str(),
                   result.written_files);
    }

    result.scalability_ratio = hybrid::scalability_ratio();
    const hybrid::ScaleUnits units = hybrid::scale_units(
        config.hybrid_cfg.mesh_area_m2, config.hybrid_cfg.grid_size_m2,
        config.hybrid_cfg.plc_nodes);
    json j{{"schema", "meshmon-hybrid-v1"},
           {"provenance", provenance},
           {"alpha", units.alpha},
           {"beta", units.beta},
           {"scalability_ratio", result.scalability_ratio}};
    write_text(out_path(config, "hybrid_summary.json"), j.dump(2), result.written_files);
    return result;
}

} // namespace meshmon::experiment
