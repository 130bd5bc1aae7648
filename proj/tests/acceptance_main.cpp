// Acceptance suite: every release criterion with its pinned tolerance, one
// PASS/FAIL line each. Run through CTest or directly:
//   meshmon_acceptance --cli <path-to-cli> --data <fixtures-dir> --scratch <dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "anomaly.hpp"
#include "bayes.hpp"
#include "hybrid.hpp"
#include "latency.hpp"
#include "oracles.hpp"
#include "paths.hpp"
#include "plc.hpp"
#include "sampling.hpp"
#include "topology.hpp"

using namespace meshmon;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string cli;
    std::string data = "data";
    std::string scratch = "acceptance_scratch";
};

struct Outcome {
    int criterion;
    std::string title;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Outcome> g_outcomes;

class Check {
public:
    Check(int criterion, std::string title)
        : criterion_(criterion), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            failures_ += failures_.empty() ? what : "; " + what;
        }
    }
    void note(const std::string& text) {
        notes_ += notes_.empty() ? text : "; " + text;
    }
    void runtime_cap(double seconds_limit) { limit_ = seconds_limit; }

    ~Check() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (limit_ > 0.0 && elapsed > limit_) {
            pass_ = false;
            failures_ += (failures_.empty() ? "" : "; ") + std::string("runtime ") +
                         std::to_string(elapsed) + "s exceeds " + std::to_string(limit_) + "s";
        }
        std::string detail = notes_;
        if (!failures_.empty()) detail += (detail.empty() ? "" : " | ") + failures_;
        g_outcomes.push_back({criterion_, title_, pass_, detail, elapsed});
        std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", pass_ ? "PASS" : "FAIL", criterion_,
                    title_.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }

private:
    int criterion_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    bool pass_ = true;
    std::string failures_;
    std::string notes_;
    double limit_ = 0.0;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream out;
    out.precision(digits);
    out << v;
    return out.str();
}

topo::LinkSample project_sample(const topo::MeshTopology& base, const topo::LinkSample& sample,
                                const topo::MeshTopology& reduced) {
    std::vector<int> link_map(reduced.link_count());
    for (int id = 0; id < reduced.link_count(); ++id) {
        const auto& link = reduced.links()[id];
        link_map[id] = base.link_id(base.index_of(reduced.label_of(link.from)),
                                    base.index_of(reduced.label_of(link.to)));
    }
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

// ---------------------------------------------------------------------------
// 1. Gate CPDs against brute-force inhibitor enumeration.
// ---------------------------------------------------------------------------
void criterion_1() {
    Check check(1, "Noisy-OR / Noisy-IntAdd CPDs match inhibitor enumeration (<=1e-12)");
    check.runtime_cap(5.0);
    oracles::TestRng rng(101);
    double worst = 0.0;
    for (int round = 0; round < 1000; ++round) {
        const int parents = rng.uniform_int(1, 5);
        std::vector<int> states;
        std::vector<double> q;
        for (int j = 0; j < parents; ++j) {
            states.push_back(rng.uniform_int(0, 3));
            q.push_back(rng.uniform());
        }
        int smax = 0;
        for (int s : states) smax += s;
        const auto add_expect = oracles::gate_distribution_bruteforce(
            bayes::CpdKind::NoisyIntAdd, states, q, smax + 1);
        const auto add_dist = bayes::noisy_int_add_cpd(states, q);
        for (size_t s = 0; s < add_expect.size(); ++s)
            worst = std::max(worst, std::abs(add_expect[s] - add_dist[s]));

        std::vector<int> binary(states.size());
        for (size_t j = 0; j < states.size(); ++j) binary[j] = states[j] > 0 ? 1 : 0;
        const auto or_expect =
            oracles::gate_distribution_bruteforce(bayes::CpdKind::NoisyOr, binary, q, 2);
        std::vector<double> active;
        for (size_t j = 0; j < binary.size(); ++j)
            if (binary[j]) active.push_back(q[j]);
        worst = std::max(worst, std::abs(bayes::noisy_or_cpd(active) - or_expect[1]));
    }
    check.note("max abs error " + fmt(worst, 3));
    check.expect(worst <= 1e-12, "max error above 1e-12");
}

// ---------------------------------------------------------------------------
// 2. Exact inference against full joint enumeration.
// ---------------------------------------------------------------------------
void criterion_2() {
    Check check(2, "variable elimination matches joint enumeration on 200 random nets (<=1e-9)");
    check.runtime_cap(60.0);
    oracles::TestRng rng(202);
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 200) {
        const bool integer_states = accepted % 2 == 1;
        const int n = integer_states ? rng.uniform_int(3, 6) : rng.uniform_int(3, 10);
        bayes::BayesNet net;
        net.nodes.resize(n);
        bool valid = true;
        for (int v = 0; v < n; ++v) {
            auto& node = net.nodes[v];
            node.label = "n" + std::to_string(v);
            if (v == 0 || rng.uniform() < 0.25) {
                node.kind = bayes::CpdKind::RootPrior;
                node.cardinality = 2;
                node.prior_active = rng.uniform();
                continue;
            }
            node.kind = integer_states ? bayes::CpdKind::NoisyIntAdd : bayes::CpdKind::NoisyOr;
            const int k = rng.uniform_int(1, std::min(v, 3));
            std::set<int> chosen;
            while (static_cast<int>(chosen.size()) < k) chosen.insert(rng.uniform_int(0, v - 1));
            int smax = 0;
            for (int p : chosen) {
                node.parents.push_back(p);
                node.inhibitions.push_back(rng.uniform());
                smax += net.nodes[p].cardinality - 1;
            }
            node.cardinality = integer_states ? smax + 1 : 2;
            if (node.cardinality > 6) valid = false;  // keep s_max <= 5
        }
        if (!valid) continue;
        ++accepted;
        std::map<int, int> evidence;
        if (rng.uniform() < 0.7) evidence[0] = 1;
        const int query = n - 1;
        bayes::Belief belief;
        try {
            belief = bayes::infer(net, evidence, query);
        } catch (const InconsistentEvidence&) {
            continue;
        }
        const auto expect = oracles::joint_enumeration_posterior(net, evidence, query);
        for (size_t s = 0; s < expect.size(); ++s)
            worst = std::max(worst, std::abs(expect[s] - belief.distribution[s]));
    }
    check.note("max abs error " + fmt(worst, 3));
    check.expect(worst <= 1e-9, "max error above 1e-9");
}

// ---------------------------------------------------------------------------
// 3. Hop-group delivery trend for the far corner pair.
// ---------------------------------------------------------------------------
void criterion_3() {
    Check check(3, "hop-group PDR trend on the baseline far-corner pair");
    check.runtime_cap(300.0);
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto samples = topo::sample_link_uncertainty(mesh, 1000, 7);
    const auto breakdown =
        anomaly::compute_pdr(mesh, mesh.index_of("S1"), mesh.client_index(), samples, 4,
                             {{2, 1.0 / 3.0}, {3, 1.0 / 3.0}, {4, 1.0 / 3.0}});
    const double pdr2 = breakdown.per_hop.at(2);
    const double pdr3 = breakdown.per_hop.at(3);
    const double pdr4 = breakdown.per_hop.at(4);
    check.note("PDR_2=" + fmt(pdr2) + " (paths " + std::to_string(breakdown.group_sizes.at(2)) +
               "), PDR_3=" + fmt(pdr3) + " (paths " + std::to_string(breakdown.group_sizes.at(3)) +
               "), PDR_4=" + fmt(pdr4) + " (paths " + std::to_string(breakdown.group_sizes.at(4)) +
               ")");
    check.expect(pdr2 > pdr3 && pdr3 > pdr4, "ordering PDR_2 > PDR_3 > PDR_4 not satisfied");
    check.expect(pdr2 >= 0.95, "PDR_2 below 0.95");
    check.expect(pdr4 >= 0.75 && pdr4 <= 0.90, "PDR_4 outside [0.75, 0.90]");
    check.expect(std::abs(pdr2 - 0.995) <= 0.05, "PDR_2 not within 0.05 of 0.995");
    check.expect(std::abs(pdr3 - 0.919) <= 0.05, "PDR_3 not within 0.05 of 0.919");
    check.expect(std::abs(pdr4 - 0.823) <= 0.05, "PDR_4 not within 0.05 of 0.823");
}

// ---------------------------------------------------------------------------
// 4. De-tanglement raises the no-path belief for the S7 pair.
// ---------------------------------------------------------------------------
void criterion_4() {
    Check check(4, "no-path belief rises under de-tanglement (paired seeds)");
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto reduced = topo::detangle(mesh, {"S10"});
    const int src = mesh.index_of("S7");
    const auto dag = topo::build_dag(mesh, src, mesh.client_index());
    const auto rdag = topo::build_dag(reduced, reduced.index_of("S7"), reduced.client_index());

    auto no_path_belief = [](const topo::MeshTopology& topology, const topo::Dag& dag_view,
                             const topo::LinkSample& sample) {
        const auto net = bayes::build_pathcount_bn(topology, dag_view, sample);
        return 1.0 - bayes::delivery_belief(net, net.source, net.sink);
    };

    int strict = 0;
    double ratio_sum = 0.0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto sample = topo::sample_trial(mesh, 7, t);
        const double base = no_path_belief(mesh, dag, sample);
        const double detangled = no_path_belief(reduced, rdag, project_sample(mesh, sample, reduced));
        if (detangled > base) ++strict;
        ratio_sum += detangled / std::max(base, 1e-300);
    }
    const double mean_ratio = ratio_sum / trials;
    check.note("strict increases " + std::to_string(strict) + "/100, mean ratio " +
               fmt(mean_ratio));
    check.expect(strict >= 95, "strict increase in fewer than 95 of 100 trials");
    check.expect(mean_ratio > 2.0, "mean belief ratio not above 2");
}

// ---------------------------------------------------------------------------
// 5. Latency oracle equivalence and paired-seed monotonicity.
// ---------------------------------------------------------------------------
void criterion_5() {
    Check check(5, "Dijkstra==Bellman-Ford, cut-set infinities, removal monotonicity");
    for (int preset : {1, 2}) {
        const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(preset));
        for (int t = 0; t < 200; ++t) {
            const auto sample = topo::sample_trial(mesh, 505 + preset, t);
            for (const auto& node : mesh.nodes()) {
                if (node.role != topo::Role::Server) continue;
                const double fast = latency::shortest_path_latency(mesh, sample, node.index,
                                                                   mesh.client_index());
                const double slow = oracles::bellman_ford_latency(mesh, sample, node.index,
                                                                  mesh.client_index());
                const bool equal = (std::isinf(fast) && std::isinf(slow)) ||
                                   std::abs(fast - slow) <= 1e-9;
                if (!equal) {
                    check.expect(false, "oracle mismatch at scenario " + std::to_string(preset));
                    t = 200;
                    break;
                }
            }
        }
    }

    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto samples = topo::sample_link_uncertainty(mesh, 300, 99);

    // cut-set infinities (exact)
    {
        const auto cut = topo::detangle(mesh, {"S3", "S4", "S5", "S6"});
        std::vector<topo::LinkSample> projected;
        for (const auto& s : samples) projected.push_back(project_sample(mesh, s, cut));
        const auto s1 = latency::average_latency(cut, projected, cut.index_of("S1"),
                                                 cut.client_index());
        const auto s2 = latency::average_latency(cut, projected, cut.index_of("S2"),
                                                 cut.client_index());
        check.expect(s1.unreachable_fraction == 1.0 && std::isinf(s1.mean_ms),
                     "S1 not fully unreachable in the cut case");
        check.expect(s2.unreachable_fraction == 1.0 && std::isinf(s2.mean_ms),
                     "S2 not fully unreachable in the cut case");
    }

    // paired-seed monotonicity for all three de-tangle cases
    const std::vector<std::vector<std::string>> cases = {
        {"S10"}, {"S3", "S5"}, {"S3", "S4", "S5", "S6"}};
    for (const auto& removal : cases) {
        const auto reduced = topo::detangle(mesh, removal);
        bool monotone = true;
        for (const auto& sample : samples) {
            const auto projected = project_sample(mesh, sample, reduced);
            for (const auto& node : reduced.nodes()) {
                if (node.role != topo::Role::Server) continue;
                const double before = latency::shortest_path_latency(
                    mesh, sample, mesh.index_of(node.label), mesh.client_index());
                const double after = latency::shortest_path_latency(reduced, projected,
                                                                    node.index,
                                                                    reduced.client_index());
                if (after < before - 1e-12) monotone = false;
            }
        }
        check.expect(monotone, "latency decreased after removing {" + removal.front() + ",...}");
    }
}

// ---------------------------------------------------------------------------
// 6. Scenario ordering and the shipped calibration point.
// ---------------------------------------------------------------------------
void criterion_6() {
    Check check(6, "scenario latency ordering and the 6.25 ms calibration (+-10%)");
    double means[4] = {0, 0, 0, 0};
    for (int preset = 1; preset <= 3; ++preset) {
        const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(preset));
        const auto samples = topo::sample_link_uncertainty(mesh, 1000, 606);
        means[preset] = latency::average_latency(mesh, samples, mesh.index_of("S1"),
                                                 mesh.client_index())
                            .mean_ms;
    }
    check.note("S1->C means: scenario1 " + fmt(means[1]) + " ms, scenario2 " + fmt(means[2]) +
               " ms, scenario3 " + fmt(means[3]) + " ms");
    check.expect(means[1] < means[2] && means[2] < means[3], "means not strictly ordered");
    check.expect(std::abs(means[1] - 6.25) <= 0.625, "scenario 1 mean off the 6.25 ms target");
}

// ---------------------------------------------------------------------------
// 7. PLC analytics: analytic spread, fixtures, noise law, Gaussian tail.
// ---------------------------------------------------------------------------
void criterion_7(const Options& options) {
    Check check(7, "PLC analytics against fixtures and closed forms");
    check.runtime_cap(5.0);

    // two equal taps at 0 and 6T spread exactly 3T
    {
        std::vector<double> profile(16, 0.0);
        profile[0] = 0.5;
        profile[6] = 0.5;
        const double spacing = 2.5e-7;
        const double err = std::abs(plc::rms_delay_spread(profile, spacing) - 3.0 * spacing);
        check.expect(err <= 1e-12, "two-tap spread not exact");
    }

    const auto gain_cfr = plc::load_cfr_csv(options.data + "/cfr_gain_reference.csv");
    const double gain_db = plc::gain_db(plc::channel_gain(gain_cfr));
    check.note("fixture gain " + fmt(gain_db, 6) + " dB");
    check.expect(std::abs(gain_db - (-34.36)) <= 0.05, "gain fixture off -34.36 dB");

    auto rms_ms = [](const plc::Cfr& cfr) {
        const auto cir = plc::cir_from_cfr(cfr);
        return 1e3 * plc::rms_delay_spread(plc::power_delay_profile(cir), cir.tap_spacing_s);
    };
    const double switching = rms_ms(plc::load_cfr_csv(options.data + "/cfr_switching_load.csv"));
    const double resistive = rms_ms(plc::load_cfr_csv(options.data + "/cfr_resistive_load.csv"));
    check.note("switching tau_rms " + fmt(switching, 6) + " ms, resistive " +
               fmt(resistive, 6) + " ms");
    check.expect(std::abs(switching - 10.8) <= 1e-6, "switching fixture off 10.8");
    check.expect(std::abs(resistive - 6.0) <= 1e-6, "resistive fixture off 6.0");

    check.expect(plc::noise_psd_dbm_per_hz(1e6, 200e3) == 35.0, "noise density at 1 MHz not 35");

    const double q2 = plc::ber_bpsk(1.0);
    const double oracle = oracles::q_function_quadrature(2.0);
    check.expect(std::abs(q2 - oracle) <= 1e-6, "Q(2) off the quadrature oracle");
    check.expect(std::abs(q2 - 0.022750) <= 1e-6, "Q(2) not 0.022750 within 1e-6");
}

// ---------------------------------------------------------------------------
// 8. Hybrid table reproduction.
// ---------------------------------------------------------------------------
void criterion_8() {
    Check check(8, "hybrid composition reproduces the reference tables");
    check.runtime_cap(1.0);

    check.expect(std::abs(hybrid::hybrid_pdr(0.9738, 0.938, 1, 1) - 0.913) <= 0.001,
                 "headline hybrid delivery cell off");

    const auto pdr_rows = hybrid::reference_pdr_table();
    std::map<int, double> alpha1;
    for (const auto& row : pdr_rows)
        if (row.alpha == 1) alpha1[row.scenario] = row.pdr_ble;
    int cells = 0;
    double worst_pdr = 0.0;
    for (const auto& row : pdr_rows) {
        if (row.beta == 0) continue;
        ++cells;
        const double composed = hybrid::hybrid_pdr(alpha1[row.scenario], row.pdr_plc, 1, row.beta);
        worst_pdr = std::max(worst_pdr, std::abs(composed - row.pdr_hybrid));
    }
    check.note(std::to_string(cells) + " delivery cells, worst " + fmt(100.0 * worst_pdr, 3) +
               " pp");
    check.expect(worst_pdr <= 0.002, "a delivery cell misses by more than 0.2 points");

    double worst_latency = 0.0;
    std::map<std::string, double> one_unit;
    for (const auto& row : hybrid::reference_latency_table())
        if (row.alpha == 1) one_unit[row.mesh_state] = row.l_ble_ms;
    for (const auto& row : hybrid::reference_latency_table()) {
        const double composed =
            hybrid::hybrid_latency(one_unit[row.mesh_state], 0.0, row.l_plc_ms, 0.0, 1, 1);
        worst_latency = std::max(worst_latency, std::abs(composed - row.l_hybrid_ms));
    }
    check.note("worst latency cell " + fmt(worst_latency, 3) + " ms");
    check.expect(worst_latency <= 0.3, "a latency cell misses by more than 0.3 ms");

    check.expect(hybrid::scalability_ratio() >= 8.0, "scalability ratio below 8");
}

// ---------------------------------------------------------------------------
// 9. Detection pipeline: power, false alarms, cut sets.
// ---------------------------------------------------------------------------
void criterion_9() {
    Check check(9, "detection power >=95%, false alarms <=1%, cut sets disconnected");
    check.runtime_cap(600.0);

    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    anomaly::CharacterizeOptions opts;  // shipped defaults
    opts.threads = static_cast<int>(std::min(8u, std::thread::hardware_concurrency()));
    if (opts.threads < 1) opts.threads = 1;
    const auto profile = anomaly::characterize_baseline(mesh, opts);

    std::vector<int> sources;
    std::vector<std::string> source_labels;
    for (const auto& node : mesh.nodes())
        if (node.role == topo::Role::Server) {
            sources.push_back(node.index);
            source_labels.push_back(node.label);
        }
    const auto cmap_samples = topo::sample_link_uncertainty(mesh, 1000, opts.seed);
    const auto cmap = anomaly::build_critical_node_map(mesh, sources, mesh.client_index(),
                                                       cmap_samples, 0.15);

    // detection power per critical (relay, pair)
    std::set<std::string> relays;
    for (const auto& [source, entries] : cmap.by_source)
        for (const auto& [relay, entry] : entries) relays.insert(relay);
    int combos = 0;
    std::string weakest;
    int weakest_hits = 101;
    for (const auto& relay : relays) {
        const auto reduced = topo::detangle(mesh, {relay});
        std::map<std::string, int> hits;
        for (int run = 0; run < 100; ++run) {
            const auto obs = anomaly::simulate_observation(
                reduced, source_labels, reduced.client_index(), profile.observation_window,
                topo::splitmix64(0x9e10 + run) ^ topo::splitmix64(anomaly::fnv1a64(relay)));
            const auto report = anomaly::detect(profile, obs);
            for (const auto& verdict : report.verdicts)
                if (verdict.anom && cmap.is_critical(verdict.source, relay))
                    ++hits[verdict.source];
        }
        for (const auto& [source, entries] : cmap.by_source) {
            if (!entries.count(relay) || source == relay) continue;
            ++combos;
            const int count = hits.count(source) ? hits.at(source) : 0;
            if (count < weakest_hits) {
                weakest_hits = count;
                weakest = relay + "->" + source;
            }
            if (count < 95)
                check.expect(false, "pair (" + source + ", C) missed removal of " + relay +
                                        " (" + std::to_string(count) + "/100)");
        }
    }
    check.note(std::to_string(combos) + " critical pairs, weakest " + weakest + " " +
               std::to_string(weakest_hits) + "/100");

    // false-alarm rate over fresh baseline epochs
    {
        const anomaly::DeliveryModel model(mesh, mesh.client_index());
        const int epochs = 10000;
        const int window = profile.observation_window;
        const int threads = opts.threads;
        std::vector<long long> flagged(threads, 0);
        auto worker = [&](int tid, int begin, int end) {
            for (int epoch = begin; epoch < end; ++epoch) {
                const std::uint64_t seed = topo::splitmix64(0xFA15EULL + epoch);
                std::vector<double> lat_sum(sources.size(), 0.0);
                std::vector<int> lat_n(sources.size(), 0);
                std::vector<double> pdr_sum(sources.size(), 0.0);
                for (int t = 0; t < window; ++t) {
                    const auto sample = topo::sample_trial(mesh, seed, t);
                    for (size_t s = 0; s < sources.size(); ++s) {
                        const double l = latency::shortest_path_latency(
                            mesh, sample, sources[s], mesh.client_index());
                        if (!std::isinf(l)) {
                            lat_sum[s] += l;
                            ++lat_n[s];
                        }
                        pdr_sum[s] += model.belief(sources[s], sample);
                    }
                }
                for (size_t s = 0; s < sources.size(); ++s) {
                    const auto& base = profile.sources[s];
                    const double lat =
                        lat_n[s] > 0 ? lat_sum[s] / lat_n[s] : latency::kUnreachable;
                    const double pdr = pdr_sum[s] / window;
                    if (lat >= base.b_thl_ms || pdr <= base.b_thp) ++flagged[tid];
                }
            }
        };
        std::vector<std::thread> pool;
        const int chunk = (epochs + threads - 1) / threads;
        for (int tid = 0; tid < threads; ++tid) {
            const int begin = tid * chunk;
            const int end = std::min(epochs, begin + chunk);
            if (begin < end) pool.emplace_back(worker, tid, begin, end);
        }
        for (auto& th : pool) th.join();
        long long total_flags = 0;
        for (long long f : flagged) total_flags += f;
        const double rate =
            static_cast<double>(total_flags) / (static_cast<double>(epochs) * sources.size());
        check.note("false-alarm rate " + fmt(100.0 * rate, 3) + "%");
        check.expect(rate <= 0.01, "false-alarm rate above 1%");
    }

    // cut-set removals always grade Disconnected
    {
        const auto cut = topo::detangle(mesh, {"S3", "S4", "S5", "S6"});
        bool always = true;
        for (int run = 0; run < 100; ++run) {
            const auto obs = anomaly::simulate_observation(cut, source_labels,
                                                           cut.client_index(),
                                                           profile.observation_window,
                                                           topo::splitmix64(0xC1175E7 + run));
            const auto report = anomaly::detect(profile, obs);
            for (const char* label : {"S1", "S2"}) {
                const auto* verdict = report.find(label);
                if (verdict == nullptr || !verdict->anom ||
                    verdict->severity != anomaly::Severity::Disconnected)
                    always = false;
            }
        }
        check.expect(always, "a cut-set run did not grade Disconnected");
    }
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CLI reruns.
// ---------------------------------------------------------------------------
void criterion_10(const Options& options) {
    Check check(10, "CLI reruns with identical config+seed are byte-identical");
    if (options.cli.empty()) {
        check.expect(false, "no --cli path given");
        return;
    }
    const fs::path scratch = options.scratch;
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const fs::path out = scratch / "out";

    const std::string config_path = (scratch / "config.json").string();
    {
        std::ofstream config(config_path);
        config << "{\n"
               << "  \"scenario\": 1,\n"
               << "  \"seed\": 7,\n"
               << "  \"trials\": 1200,\n"
               << "  \"observation_window\": 120,\n"
               << "  \"out_dir\": \"" << out.string() << "\"\n"
               << "}\n";
    }

    auto run = [&](const std::string& args, int expected_exit) {
        const std::string command =
            options.cli + " " + args + " > /dev/null 2> /dev/null";
        const int raw = std::system(command.c_str());
        const int exit_code = raw < 0 ? raw : WEXITSTATUS(raw);
        if (exit_code != expected_exit)
            check.expect(false, "`" + args + "` exited " + std::to_string(exit_code) +
                                    " (wanted " + std::to_string(expected_exit) + ")");
    };
    auto snapshot = [&]() {
        std::map<std::string, std::string> bytes;
        for (const auto& entry : fs::recursive_directory_iterator(out)) {
            if (!entry.is_regular_file()) continue;
            std::ifstream in(entry.path(), std::ios::binary);
            std::stringstream buffer;
            buffer << in.rdbuf();
            bytes[entry.path().lexically_relative(out).string()] = buffer.str();
        }
        return bytes;
    };

    auto run_all = [&]() {
        run("characterize --config " + config_path, 0);
        run("detect --config " + config_path + " --profile " + (out / "profile.json").string() +
                " --simulate-detangle S10",
            2);
        run("plc --config " + config_path + " --cfr " + options.data +
                "/cfr_gain_reference.csv",
            0);
        run("hybrid --config " + config_path, 0);
    };

    run_all();
    const auto first = snapshot();
    check.expect(first.size() >= 8, "expected at least eight output files, saw " +
                                        std::to_string(first.size()));
    run_all();
    const auto second = snapshot();

    check.expect(first.size() == second.size(), "output file sets differ between runs");
    for (const auto& [name, content] : first) {
        const auto it = second.find(name);
        if (it == second.end()) {
            check.expect(false, "missing " + name + " on rerun");
        } else if (it->second != content) {
            check.expect(false, name + " differs between identical reruns");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    Options options;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") options.cli = argv[i + 1];
        else if (flag == "--data") options.data = argv[i + 1];
        else if (flag == "--scratch") options.scratch = argv[i + 1];
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(options);
    criterion_8();
    criterion_9();
    criterion_10(options);

    int failed = 0;
    for (const auto& outcome : g_outcomes)
        if (!outcome.pass) ++failed;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_outcomes.size()) - failed,
                g_outcomes.size());
    return failed == 0 ? 0 : 1;
}
