#ifndef MESHMON_ANOMALY_HPP
#define MESHMON_ANOMALY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latency.hpp"
#include "paths.hpp"
#include "reliability.hpp"
#include "sampling.hpp"
#include "topology.hpp"

namespace meshmon::anomaly {

// ---------------------------------------------------------------------------
// Delivery probabilities over path groups (Compute-PDR algorithm)
// ---------------------------------------------------------------------------

struct PdrBreakdown {
    double total = 0.0;                 // sum of k_i * PDR_i
    std::map<int, double> per_hop;      // mean delivery belief per hop group
    std::map<int, int> group_sizes;     // path count per hop group
};

// For each hop count i <= max_hops: average, over the samples, the belief
// that a packet injected at src reaches dst through the union of the i-hop
// path group; then mix with the hop fractions. Hop groups with no paths
// contribute PDR_i = 0 (reported, not an error).
PdrBreakdown compute_pdr(const topo::MeshTopology& topology, int src, int dst,
                         const std::vector<topo::LinkSample>& samples, int max_hops,
                         const std::map<int, double>& k_fractions);

// Delivery belief of one trial over the union digraph of a path group;
// equals exact inference on the equivalent Noisy-OR network whenever that
// union is acyclic, and extends it (reachability semantics) when a hop
// group's union contains cycles.
double group_delivery_belief(const topo::MeshTopology& topology, const topo::PathGroup& group,
                             const topo::LinkSample& sample);

// Per-source delivery belief across the full destination-oriented DAG
// (every hop count at once); the per-trial PDR observable of the pipeline.
// Diagrams for every server source are compiled up front, so lookups are
// const and safe to share across trial threads.
class DeliveryModel {
public:
    DeliveryModel(const topo::MeshTopology& topology, int dst);
    double belief(int src, const topo::LinkSample& sample) const;
    const topo::Dag& dag() const { return dag_; }

private:
    topo::Dag dag_;
    std::map<int, rel::ReliabilityDd> dd_by_src_;
};

// Average full-DAG delivery over the two parity groups of server sources,
// then across the groups (the odd/even collection schedule).
double mesh_average_pdr(const topo::MeshTopology& topology,
                        const std::vector<topo::LinkSample>& samples, int dst);

// ---------------------------------------------------------------------------
// Baseline characterization
// ---------------------------------------------------------------------------

struct SourceBaseline {
    std::string source;
    double latency_mean_ms = 0.0;      // mean of per-epoch observed latency
    double latency_std_ms = 0.0;       // std of the epoch statistic
    double latency_trial_std_ms = 0.0; // per-trial dispersion, for reference
    double pdr_mean = 0.0;
    double pdr_std = 0.0;              // epoch statistic
    double pdr_trial_std = 0.0;
    double unreachable_fraction = 0.0;
    double b_thl_ms = 0.0;             // latency_mean + k_sigma * latency_std
    double b_thp = 0.0;                // pdr_mean - k_sigma * pdr_std, clamped
};

// An observation epoch aggregates `observation_window` Monte-Carlo trials
// (live deployments aggregate the measurement period the same way); the
// thresholds are set k_sigma standard deviations of that epoch statistic
// away from its baseline mean.
struct BaselineProfile {
    std::string scenario;
    int trials = 0;
    int observation_window = 0;
    double k_sigma = 3.0;
    std::uint64_t seed = 0;
    std::uint64_t topology_hash = 0;
    std::vector<SourceBaseline> sources;

    const SourceBaseline* find(const std::string& source) const;
};

struct CharacterizeOptions {
    int trials = 12000;
    int observation_window = 400;
    double k_sigma = 3.0;
    std::uint64_t seed = 7;
    int threads = 1;
};

// Per-source latency/PDR statistics toward the client over seeded trials.
// Throws ConfigError when a source is unreachable in the baseline.
BaselineProfile characterize_baseline(const topo::MeshTopology& topology,
                                      const CharacterizeOptions& options);

std::string profile_to_json(const BaselineProfile& profile);
BaselineProfile profile_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Observations and detection (network anomaly detection algorithm)
// ---------------------------------------------------------------------------

struct SourceObservation {
    std::string source;
    double latency_ms = 0.0;  // infinity when the source never reached the client
    double pdr = 0.0;
};

struct Observation {
    int epoch = 0;
    std::vector<SourceObservation> sources;

    const SourceObservation* find(const std::string& source) const;
};

// One epoch aggregate from fresh trials of (a possibly de-tangled) topology.
// Sources listed in the profile but missing from the topology read as
// latency infinity / PDR zero, the way dead telemetry would.
Observation simulate_observation(const topo::MeshTopology& topology,
                                 const std::vector<std::string>& sources, int dst, int window,
                                 std::uint64_t seed, int epoch = 0);

enum class Trigger { None, Latency, Pdr, Both };
enum class Severity { None, Mild, Severe, Disconnected };

struct AnomalyVerdict {
    std::string source;
    bool anom = false;
    Trigger triggered_by = Trigger::None;
    Severity severity = Severity::None;
    double observed_latency_ms = 0.0;
    double observed_pdr = 0.0;
    double baseline_latency_mean_ms = 0.0;
    double baseline_pdr_mean = 0.0;
    double latency_threshold_ms = 0.0;
    double pdr_threshold = 0.0;
};

struct AnomalyReport {
    int epoch = 0;
    std::vector<AnomalyVerdict> verdicts;
    std::vector<std::string> suspects;

    bool any_anomaly() const;
    const AnomalyVerdict* find(const std::string& source) const;
};

// Threshold comparison in the exact branch order of the detection
// algorithm: the latency check first, the PDR check only in its else branch.
// Throws IncompleteObservation when a profiled source has no reading.
AnomalyReport detect(const BaselineProfile& profile, const Observation& observation);

Severity severity_grade(const SourceBaseline& baseline, double latency_ms, double pdr);

// ---------------------------------------------------------------------------
// Localization via critical relays
// ---------------------------------------------------------------------------

struct CriticalEntry {
    double delta_ms = 0.0;  // paired-seed shift of the pair's mean latency
    bool disconnects = false;
};

struct CriticalNodeMap {
    std::string dst;
    double sensitivity_delta_ms = 0.15;
    // source -> (relay -> entry); only relays at or past the sensitivity.
    std::map<std::string, std::map<std::string, CriticalEntry>> by_source;

    bool is_critical(const std::string& source, const std::string& relay) const;
};

// Paired-seed comparison of every pair's mean latency with and without each
// candidate relay. A relay is critical to a pair when removing it shifts the
// mean by at least the sensitivity or cuts the pair off entirely.
CriticalNodeMap build_critical_node_map(const topo::MeshTopology& topology,
                                        const std::vector<int>& sources, int dst,
                                        const std::vector<topo::LinkSample>& samples,
                                        double sensitivity_delta_ms);

// Voting over the critical map: relays critical to anomalous pairs are
// suspects unless some healthy pair rules them out (a relay whose removal
// would have pushed a still-healthy pair past its threshold must still be
// present). Healthy sources are likewise ruled out as suspects.
std::vector<std::string> localize(const AnomalyReport& report, const CriticalNodeMap& cmap);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string report_to_json(const AnomalyReport& report);

// CSV columns: epoch,source,latency_ms,pdr ('inf' marks unreachable rows).
std::vector<Observation> load_observations_csv(const std::string& path);
void save_observations_csv(const std::vector<Observation>& observations, const std::string& path,
                           const std::string& comment = "");

std::uint64_t fnv1a64(const std::string& text);

} // namespace meshmon::anomaly

#endif
