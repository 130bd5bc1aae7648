#include "anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hybrid.hpp"

namespace meshmon::anomaly {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// ---------------------------------------------------------------------------
// Group and DAG delivery
// ---------------------------------------------------------------------------

namespace {

struct UnionGraph {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> link_ids;
};

UnionGraph union_of(const topo::MeshTopology& topology, const topo::PathGroup& group) {
    std::set<std::pair<int, int>> seen;
    UnionGraph g;
    for (const auto& path : group.paths) {
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            const auto edge = std::make_pair(path[i], path[i + 1]);
            if (!seen.insert(edge).second) continue;
            g.edges.push_back(edge);
            g.link_ids.push_back(topology.link_id(path[i], path[i + 1]));
        }
    }
    return g;
}

std::vector<double> pass_probabilities(const std::vector<int>& link_ids,
                                       const topo::LinkSample& sample) {
    std::vector<double> pass(link_ids.size());
    for (size_t i = 0; i < link_ids.size(); ++i) {
        const int id = link_ids[i];
        pass[i] = sample.present[id] ? 1.0 - sample.failure_prob[id] : 0.0;
    }
    return pass;
}

} // namespace

double group_delivery_belief(const topo::MeshTopology& topology, const topo::PathGroup& group,
                             const topo::LinkSample& sample) {
    if (group.paths.empty()) return 0.0;
    const UnionGraph g = union_of(topology, group);
    rel::ReliabilityDd dd(topology.node_count(), g.edges, group.src, group.dst);
    return dd.eval(pass_probabilities(g.link_ids, sample));
}

PdrBreakdown compute_pdr(const topo::MeshTopology& topology, int src, int dst,
                         const std::vector<topo::LinkSample>& samples, int max_hops,
                         const std::map<int, double>& k_fractions) {
    if (samples.empty()) throw InvalidArgument("no evidences given");
    if (max_hops < 1) throw InvalidArgument("hop cap must be >= 1");

    std::set<int> hop_counts;
    for (int i = 1; i <= max_hops; ++i) hop_counts.insert(i);
    for (const auto& [i, k] : k_fractions) {
        if (i < 1) throw InvalidArgument("hop-group index must be >= 1");
        hop_counts.insert(i);
    }

    PdrBreakdown breakdown;
    for (int hops : hop_counts) {
        const topo::PathGroup group = topo::enumerate_ihop_paths(topology, src, dst, hops);
        breakdown.group_sizes[hops] = static_cast<int>(group.paths.size());
        if (group.paths.empty()) {
            breakdown.per_hop[hops] = 0.0;
            continue;
        }
        const UnionGraph g = union_of(topology, group);
        const rel::ReliabilityDd dd(topology.node_count(), g.edges, src, dst);
        double sum = 0.0;
        for (const auto& sample : samples) sum += dd.eval(pass_probabilities(g.link_ids, sample));
        breakdown.per_hop[hops] = sum / static_cast<double>(samples.size());
    }
    breakdown.total = hybrid::mesh_pdr(breakdown.per_hop, k_fractions);
    return breakdown;
}

DeliveryModel::DeliveryModel(const topo::MeshTopology& topology, int dst)
    : dag_(topo::build_dag(topology, dst == 0 ? 1 : 0, dst)) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(dag_.edges.size());
    for (const auto& e : dag_.edges) edges.emplace_back(e.from, e.to);
    for (const auto& node : topology.nodes()) {
        if (node.index == dst) continue;
        dd_by_src_.emplace(node.index,
                           rel::ReliabilityDd(topology.node_count(), edges, node.index, dst));
    }
}

double DeliveryModel::belief(int src, const topo::LinkSample& sample) const {
    const auto it = dd_by_src_.find(src);
    if (it == dd_by_src_.end()) throw NotFound("no delivery diagram for the requested source");
    return it->second.eval(pass_probabilities(dag_.link_ids, sample));
}

double mesh_average_pdr(const topo::MeshTopology& topology,
                        const std::vector<topo::LinkSample>& samples, int dst) {
    if (samples.empty()) throw InvalidArgument("no samples given");
    const DeliveryModel model(topology, dst);
    const auto [odd, even] = topo::parity_groups(topology);
    auto group_mean = [&](const std::vector<std::string>& labels) {
        if (labels.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& label : labels) {
            const int src = topology.index_of(label);
            for (const auto& sample : samples) sum += model.belief(src, sample);
        }
        return sum / static_cast<double>(labels.size() * samples.size());
    };
    if (odd.empty()) return group_mean(even);
    if (even.empty()) return group_mean(odd);
    return 0.5 * (group_mean(odd) + group_mean(even));
}

// ---------------------------------------------------------------------------
// Baseline characterization
// ---------------------------------------------------------------------------

const SourceBaseline* BaselineProfile::find(const std::string& source) const {
    for (const auto& s : sources)
        if (s.source == source) return &s;
    return nullptr;
}

namespace {

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& values) {
    if (values.empty()) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

void run_partitioned(int count, int threads, const std::function<void(int, int)>& body) {
    if (threads <= 1 || count < 2 * threads) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    for (auto& th : pool) th.join();
}

} // namespace

BaselineProfile characterize_baseline(const topo::MeshTopology& topology,
                                      const CharacterizeOptions& options) {
    if (options.trials < 1) throw InvalidArgument("trials must be >= 1");
    if (options.observation_window < 1) throw InvalidArgument("window must be >= 1");

    const int dst = topology.client_index();
    std::vector<int> sources;
    for (const auto& node : topology.nodes())
        if (node.role == topo::Role::Server) sources.push_back(node.index);

    const DeliveryModel model(topology, dst);
    const int trials = options.trials;
    const int n_src = static_cast<int>(sources.size());

    // Per-trial observables; each slot written by exactly one thread, then
    // aggregated sequentially so results do not depend on the thread count.
    std::vector<double> lat(static_cast<size_t>(trials) * n_src);
    std::vector<double> pdr(static_cast<size_t>(trials) * n_src);
    run_partitioned(trials, options.threads, [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            const topo::LinkSample sample = topo::sample_trial(topology, options.seed, t);
            for (int s = 0; s < n_src; ++s) {
                lat[static_cast<size_t>(t) * n_src + s] =
                    latency::shortest_path_latency(topology, sample, sources[s], dst);
                pdr[static_cast<size_t>(t) * n_src + s] = model.belief(sources[s], sample);
            }
        }
    });

    const int window = std::min(options.observation_window, trials);
    const int epochs = trials / window;

    BaselineProfile profile;
    profile.scenario = topology.scenario().name;
    profile.trials = trials;
    profile.observation_window = window;
    profile.k_sigma = options.k_sigma;
    profile.seed = options.seed;
    profile.topology_hash = fnv1a64(topo::topology_to_json(topology));

    for (int s = 0; s < n_src; ++s) {
        SourceBaseline base;
        base.source = topology.label_of(sources[s]);

        std::vector<double> trial_lat, trial_pdr;
        int unreachable = 0;
        for (int t = 0; t < trials; ++t) {
            const double l = lat[static_cast<size_t>(t) * n_src + s];
            if (std::isinf(l)) ++unreachable;
            else trial_lat.push_back(l);
            trial_pdr.push_back(pdr[static_cast<size_t>(t) * n_src + s]);
        }
        base.unreachable_fraction = static_cast<double>(unreachable) / trials;
        if (trial_lat.empty())
            throw ConfigError("baseline must be connected: source '" + base.source +
                              "' never reaches the client");

        std::vector<double> epoch_lat, epoch_pdr;
        for (int e = 0; e < epochs; ++e) {
            double lsum = 0.0, psum = 0.0;
            int lcount = 0;
            for (int t = e * window; t < (e + 1) * window; ++t) {
                const double l = lat[static_cast<size_t>(t) * n_src + s];
                if (!std::isinf(l)) {
                    lsum += l;
                    ++lcount;
                }
                psum += pdr[static_cast<size_t>(t) * n_src + s];
            }
            if (lcount > 0) epoch_lat.push_back(lsum / lcount);
            epoch_pdr.push_back(psum / window);
        }

        const MeanStd el = mean_std(epoch_lat);
        const MeanStd ep = mean_std(epoch_pdr);
        const MeanStd tl = mean_std(trial_lat);
        const MeanStd tp = mean_std(trial_pdr);
        base.latency_mean_ms = el.mean;
        base.latency_std_ms = el.stddev;
        base.latency_trial_std_ms = tl.stddev;
        base.pdr_mean = ep.mean;
        base.pdr_std = ep.stddev;
        base.pdr_trial_std = tp.stddev;
        base.b_thl_ms = el.mean + options.k_sigma * el.stddev;
        base.b_thp = std::clamp(ep.mean - options.k_sigma * ep.stddev, 0.0, 1.0);
        profile.sources.push_back(std::move(base));
    }
    return profile;
}

std::string profile_to_json(const BaselineProfile& profile) {
    json sources = json::array();
    for (const auto& s : profile.sources) {
        sources.push_back({{"source", s.source},
                           {"latency_mean_ms", s.latency_mean_ms},
                           {"latency_std_ms", s.latency_std_ms},
                           {"latency_trial_std_ms", s.latency_trial_std_ms},
                           {"pdr_mean", s.pdr_mean},
                           {"pdr_std", s.pdr_std},
                           {"pdr_trial_std", s.pdr_trial_std},
                           {"unreachable_fraction", s.unreachable_fraction},
                           {"b_thl_ms", s.b_thl_ms},
                           {"b_thp", s.b_thp}});
    }
    json j{{"schema", "meshmon-profile-v1"},
           {"scenario", profile.scenario},
           {"trials", profile.trials},
           {"observation_window", profile.observation_window},
           {"k_sigma", profile.k_sigma},
           {"seed", profile.seed},
           {"topology_hash", profile.topology_hash},
           {"sources", sources}};
    return j.dump(2);
}

BaselineProfile profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("profile JSON parse failure: ") + e.what());
    }
    if (j.value("schema", "") != "meshmon-profile-v1")
        throw ConfigError("profile schema field missing or unsupported");
    BaselineProfile profile;
    profile.scenario = j.at("scenario").get<std::string>();
    profile.trials = j.at("trials").get<int>();
    profile.observation_window = j.at("observation_window").get<int>();
    profile.k_sigma = j.at("k_sigma").get<double>();
    profile.seed = j.at("seed").get<std::uint64_t>();
    profile.topology_hash = j.value("topology_hash", 0ULL);
    for (const auto& js : j.at("sources")) {
        SourceBaseline s;
        s.source = js.at("source").get<std::string>();
        s.latency_mean_ms = js.at("latency_mean_ms").get<double>();
        s.latency_std_ms = js.at("latency_std_ms").get<double>();
        s.latency_trial_std_ms = js.value("latency_trial_std_ms", 0.0);
        s.pdr_mean = js.at("pdr_mean").get<double>();
        s.pdr_std = js.at("pdr_std").get<double>();
        s.pdr_trial_std = js.value("pdr_trial_std", 0.0);
        s.unreachable_fraction = js.value("unreachable_fraction", 0.0);
        s.b_thl_ms = js.at("b_thl_ms").get<double>();
        s.b_thp = js.at("b_thp").get<double>();
        profile.sources.push_back(std::move(s));
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Observation and detection
// ---------------------------------------------------------------------------

const SourceObservation* Observation::find(const std::string& source) const {
    for (const auto& s : sources)
        if (s.source == source) return &s;
    return nullptr;
}

Observation simulate_observation(const topo::MeshTopology& topology,
                                 const std::vector<std::string>& sources, int dst, int window,
                                 std::uint64_t seed, int epoch) {
    if (window < 1) throw InvalidArgument("window must be >= 1");
    const DeliveryModel model(topology, dst);

    Observation obs;
    obs.epoch = epoch;
    std::vector<topo::LinkSample> samples;
    samples.reserve(window);
    for (int t = 0; t < window; ++t) samples.push_back(topo::sample_trial(topology, seed, t));

    for (const auto& label : sources) {
        SourceObservation so;
        so.source = label;
        const auto idx = topology.find(label);
        if (!idx) {
            // A node that left the mesh: its telemetry is gone.
            so.latency_ms = latency::kUnreachable;
            so.pdr = 0.0;
            obs.sources.push_back(so);
            continue;
        }
        double lsum = 0.0, psum = 0.0;
        int lcount = 0;
        for (const auto& sample : samples) {
            const double l = latency::shortest_path_latency(topology, sample, *idx, dst);
            if (!std::isinf(l)) {
                lsum += l;
                ++lcount;
            }
            psum += model.belief(*idx, sample);
        }
        so.latency_ms = lcount > 0 ? lsum / lcount : latency::kUnreachable;
        so.pdr = psum / window;
        obs.sources.push_back(so);
    }
    return obs;
}

Severity severity_grade(const SourceBaseline& baseline, double latency_ms, double pdr) {
    if (std::isinf(latency_ms)) return Severity::Disconnected;
    const bool latency_anom = latency_ms >= baseline.b_thl_ms;
    const bool pdr_anom = pdr <= baseline.b_thp;
    if (!latency_anom && !pdr_anom) return Severity::None;
    const double latency_margin = baseline.b_thl_ms - baseline.latency_mean_ms;
    const bool severe =
        (latency_anom && latency_ms - baseline.latency_mean_ms >= 2.0 * latency_margin) ||
        (pdr_anom && baseline.b_thp - pdr >= 2.0 * baseline.pdr_std);
    return severe ? Severity::Severe : Severity::Mild;
}

bool AnomalyReport::any_anomaly() const {
    return std::any_of(verdicts.begin(), verdicts.end(),
                       [](const AnomalyVerdict& v) { return v.anom; });
}

const AnomalyVerdict* AnomalyReport::find(const std::string& source) const {
    for (const auto& v : verdicts)
        if (v.source == source) return &v;
    return nullptr;
}

AnomalyReport detect(const BaselineProfile& profile, const Observation& observation) {
    AnomalyReport report;
    report.epoch = observation.epoch;
    for (const auto& base : profile.sources) {
        const SourceObservation* obs = observation.find(base.source);
        if (obs == nullptr)
            throw IncompleteObservation("observation is missing source '" + base.source + "'");

        AnomalyVerdict v;
        v.source = base.source;
        v.observed_latency_ms = obs->latency_ms;
        v.observed_pdr = obs->pdr;
        v.baseline_latency_mean_ms = base.latency_mean_ms;
        v.baseline_pdr_mean = base.pdr_mean;
        v.latency_threshold_ms = base.b_thl_ms;
        v.pdr_threshold = base.b_thp;

        // The latency comparison comes first; the PDR comparison lives in
        // its else branch, so a double violation still reports Latency.
        if (obs->latency_ms >= base.b_thl_ms) {
            v.anom = true;
            v.triggered_by = Trigger::Latency;
        } else if (obs->pdr <= base.b_thp) {
            v.anom = true;
            v.triggered_by = Trigger::Pdr;
        }
        v.severity = v.anom ? severity_grade(base, obs->latency_ms, obs->pdr) : Severity::None;
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Critical-node map and localization
// ---------------------------------------------------------------------------

bool CriticalNodeMap::is_critical(const std::string& source, const std::string& relay) const {
    const auto it = by_source.find(source);
    return it != by_source.end() && it->second.count(relay) > 0;
}

namespace {

// Carry one baseline draw over to a detangled copy: surviving links keep
// their sampled values (paired seeds across removals).
topo::LinkSample project_sample(const topo::MeshTopology& base, const topo::LinkSample& sample,
                                const topo::MeshTopology& reduced,
                                const std::vector<int>& link_map) {
    topo::LinkSample out;
    out.trial_index = sample.trial_index;
    out.failure_prob.resize(reduced.link_count());
    out.latency_ms.resize(reduced.link_count());
    out.present.resize(reduced.link_count());
    for (int id = 0; id < reduced.link_count(); ++id) {
        out.failure_prob[id] = sample.failure_prob[link_map[id]];
        out.latency_ms[id] = sample.latency_ms[link_map[id]];
        out.present[id] = sample.present[link_map[id]];
    }
    return out;
}

std::vector<int> build_link_map(const topo::MeshTopology& base,
                                const topo::MeshTopology& reduced) {
    std::vector<int> map(reduced.link_count());
    for (int id = 0; id < reduced.link_count(); ++id) {
        const auto& link = reduced.links()[id];
        const int from = base.index_of(reduced.label_of(link.from));
        const int to = base.index_of(reduced.label_of(link.to));
        map[id] = base.link_id(from, to);
    }
    return map;
}

} // namespace

CriticalNodeMap build_critical_node_map(const topo::MeshTopology& topology,
                                        const std::vector<int>& sources, int dst,
                                        const std::vector<topo::LinkSample>& samples,
                                        double sensitivity_delta_ms) {
    if (samples.empty()) throw InvalidArgument("no samples given");
    if (sensitivity_delta_ms < 0.0) throw InvalidArgument("sensitivity must be non-negative");

    CriticalNodeMap cmap;
    cmap.dst = topology.label_of(dst);
    cmap.sensitivity_delta_ms = sensitivity_delta_ms;

    // Baseline means per pair.
    std::map<int, double> base_mean;
    for (int src : sources) {
        const auto stats = latency::average_latency(topology, samples, src, dst);
        if (stats.unreachable_fraction >= 1.0)
            throw ConfigError("baseline must be connected: source '" +
                              topology.label_of(src) + "' never reaches the destination");
        base_mean[src] = stats.mean_ms;
    }

    for (const auto& relay : topology.nodes()) {
        if (relay.index == dst) continue;
        // A candidate must leave at least one pair to compare against.
        const bool has_pair = std::any_of(sources.begin(), sources.end(), [&](int src) {
            return src != relay.index && src != dst;
        });
        if (!has_pair || topology.node_count() <= 2) continue;
        const topo::MeshTopology reduced = topo::detangle(topology, {relay.label});
        const auto link_map = build_link_map(topology, reduced);
        std::vector<topo::LinkSample> projected;
        projected.reserve(samples.size());
        for (const auto& sample : samples)
            projected.push_back(project_sample(topology, sample, reduced, link_map));

        for (int src : sources) {
            if (src == relay.index || src == dst) continue;
            const int rsrc = reduced.index_of(topology.label_of(src));
            const int rdst = reduced.index_of(cmap.dst);
            const latency::LatencyStats after =
                latency::average_latency(reduced, projected, rsrc, rdst);
            CriticalEntry entry;
            entry.disconnects = after.unreachable_fraction >= 1.0;
            entry.delta_ms = entry.disconnects ? latency::kUnreachable
                                               : after.mean_ms - base_mean[src];
            if (entry.disconnects || std::abs(entry.delta_ms) >= sensitivity_delta_ms)
                cmap.by_source[topology.label_of(src)][relay.label] = entry;
        }
    }
    return cmap;
}

std::vector<std::string> localize(const AnomalyReport& report, const CriticalNodeMap& cmap) {
    std::set<std::string> suspects;
    for (const auto& v : report.verdicts) {
        if (!v.anom) continue;
        const auto it = cmap.by_source.find(v.source);
        if (it == cmap.by_source.end()) continue;
        for (const auto& [relay, entry] : it->second) suspects.insert(relay);
    }
    for (const auto& v : report.verdicts) {
        if (v.anom) continue;
        // A source observed healthy is demonstrably still meshed.
        suspects.erase(v.source);
        const auto it = cmap.by_source.find(v.source);
        if (it == cmap.by_source.end()) continue;
        for (const auto& [relay, entry] : it->second) {
            // Had this relay really left, the pair could not have stayed
            // under its latency threshold.
            if (entry.disconnects ||
                v.baseline_latency_mean_ms + entry.delta_ms >= v.latency_threshold_ms)
                suspects.erase(relay);
        }
    }
    suspects.erase(cmap.dst);
    return {suspects.begin(), suspects.end()};
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

json latency_json(double ms) {
    if (std::isinf(ms)) return json("inf");
    return json(ms);
}

const char* trigger_name(Trigger t) {
    switch (t) {
        case Trigger::None: return "none";
        case Trigger::Latency: return "latency";
        case Trigger::Pdr: return "pdr";
        case Trigger::Both: return "both";
    }
    return "none";
}

const char* severity_name(Severity s) {
    switch (s) {
        case Severity::None: return "none";
        case Severity::Mild: return "mild";
        case Severity::Severe: return "severe";
        case Severity::Disconnected: return "disconnected";
    }
    return "none";
}

} // namespace

std::string report_to_json(const AnomalyReport& report) {
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back({{"source", v.source},
                            {"anom", v.anom ? 1 : 0},
                            {"triggered_by", trigger_name(v.triggered_by)},
                            {"severity", severity_name(v.severity)},
                            {"observed_latency_ms", latency_json(v.observed_latency_ms)},
                            {"observed_pdr", v.observed_pdr},
                            {"baseline_latency_mean_ms", v.baseline_latency_mean_ms},
                            {"baseline_pdr_mean", v.baseline_pdr_mean},
                            {"latency_threshold_ms", v.latency_threshold_ms},
                            {"pdr_threshold", v.pdr_threshold}});
    }
    json j{{"schema", "meshmon-report-v1"},
           {"epoch", report.epoch},
           {"any_anomaly", report.any_anomaly()},
           {"verdicts", verdicts},
           {"suspects", report.suspects}};
    return j.dump(2);
}

std::vector<Observation> load_observations_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open observations file '" + path + "'");
    std::map<int, Observation> by_epoch;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // epoch,source,latency_ms,pdr
            continue;
        }
        std::stringstream row(line);
        std::string epoch_s, source, latency_s, pdr_s;
        if (!std::getline(row, epoch_s, ',') || !std::getline(row, source, ',') ||
            !std::getline(row, latency_s, ',') || !std::getline(row, pdr_s, ','))
            throw IoError("observation row needs four columns: " + line);
        const int epoch = std::stoi(epoch_s);
        SourceObservation so;
        so.source = source;
        so.latency_ms = latency_s == "inf" ? latency::kUnreachable : std::stod(latency_s);
        so.pdr = std::stod(pdr_s);
        auto& obs = by_epoch[epoch];
        obs.epoch = epoch;
        obs.sources.push_back(std::move(so));
    }
    std::vector<Observation> out;
    out.reserve(by_epoch.size());
    for (auto& [epoch, obs] : by_epoch) out.push_back(std::move(obs));
    return out;
}

void save_observations_csv(const std::vector<Observation>& observations, const std::string& path,
                           const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write observations file '" + path + "'");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "epoch,source,latency_ms,pdr\n";
    out.precision(17);
    for (const auto& obs : observations)
        for (const auto& s : obs.sources) {
            out << obs.epoch << "," << s.source << ",";
            if (std::isinf(s.latency_ms)) out << "inf";
            else out << s.latency_ms;
            out << "," << s.pdr << "\n";
        }
}

} // namespace meshmon::anomaly
