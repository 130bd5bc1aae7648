#ifndef MESHMON_SAMPLING_HPP
#define MESHMON_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "topology.hpp"

namespace meshmon::topo {

// One Monte-Carlo draw of per-link state. Vectors are indexed by link id in
// the topology's canonical link order.
struct LinkSample {
    int trial_index = 0;
    std::vector<double> failure_prob;   // i.i.d. uniform [0,1] per directed link
    std::vector<double> latency_ms;     // uniform [0.8*mean, 1.2*mean] per direction
    std::vector<std::uint8_t> present;  // 0 only for intermittent diagonals that dropped
};

// Deterministic 64-bit mix; used to derive independent per-trial streams.
std::uint64_t splitmix64(std::uint64_t x);

// Single trial, a pure function of (topology, seed, trial_index). Parallel
// callers can partition the trial index space freely.
LinkSample sample_trial(const MeshTopology& topology, std::uint64_t seed, int trial_index);

// trials >= 1 draws, bitwise reproducible for a given seed.
std::vector<LinkSample> sample_link_uncertainty(const MeshTopology& topology, int trials,
                                                std::uint64_t seed);

} // namespace meshmon::topo

#endif
