#include "sampling.hpp"

#include <random>

namespace meshmon::topo {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Uniform double in [0,1) from the engine's raw 64 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

LinkSample sample_trial(const MeshTopology& topology, std::uint64_t seed, int trial_index) {
    if (trial_index < 0) throw InvalidArgument("trial index must be non-negative");

    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial_index))));

    const auto& links = topology.links();
    const auto& scenario = topology.scenario();

    LinkSample sample;
    sample.trial_index = trial_index;
    sample.failure_prob.resize(links.size());
    sample.latency_ms.resize(links.size());
    sample.present.assign(links.size(), 1);

    for (auto& q : sample.failure_prob) q = uniform01(rng);

    const double mean = scenario.hop_latency_mean_ms;
    for (auto& w : sample.latency_ms) w = mean * (0.8 + 0.4 * uniform01(rng));

    if (scenario.diagonal_mode == DiagonalMode::Intermittent) {
        // One symmetric presence draw per unordered diagonal pair.
        std::vector<std::uint8_t> pair_present(topology.diagonal_pairs().size());
        for (auto& p : pair_present)
            p = uniform01(rng) < scenario.intermittent_probability ? 1 : 0;
        for (int id = 0; id < topology.link_count(); ++id) {
            const int pair = topology.diagonal_pair_of_link(id);
            if (pair >= 0) sample.present[id] = pair_present[pair];
        }
    }
    return sample;
}

std::vector<LinkSample> sample_link_uncertainty(const MeshTopology& topology, int trials,
                                                std::uint64_t seed) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    std::vector<LinkSample> samples;
    samples.reserve(trials);
    for (int t = 0; t < trials; ++t) samples.push_back(sample_trial(topology, seed, t));
    return samples;
}

} // namespace meshmon::topo
