#include <doctest.h>

#include <cmath>

#include "latency.hpp"
#include "oracles.hpp"
#include "paths.hpp"
#include "sampling.hpp"
#include "topology.hpp"

using namespace meshmon;
using latency::kUnreachable;

namespace {

topo::LinkSample fixed_weights(const topo::MeshTopology& mesh, double weight) {
    topo::LinkSample s;
    s.trial_index = 0;
    s.failure_prob.assign(mesh.link_count(), 0.0);
    s.latency_ms.assign(mesh.link_count(), weight);
    s.present.assign(mesh.link_count(), 1);
    return s;
}

std::vector<topo::LinkSample> project_all(const topo::MeshTopology& base,
                                          const std::vector<topo::LinkSample>& samples,
                                          const topo::MeshTopology& reduced) {
    std::vector<int> link_map(reduced.link_count());
    for (int id = 0; id < reduced.link_count(); ++id) {
        const auto& link = reduced.links()[id];
        link_map[id] = base.link_id(base.index_of(reduced.label_of(link.from)),
                                    base.index_of(reduced.label_of(link.to)));
    }
    std::vector<topo::LinkSample> out;
    out.reserve(samples.size());
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
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

TEST_CASE("two-node shortest path is the single link weight") {
    const auto tiny = topo::build_grid_mesh(1, 2, topo::scenario_preset(1));
    const auto sample = fixed_weights(tiny, 1.5);
    CHECK(latency::shortest_path_latency(tiny, sample, tiny.index_of("S1"),
                                         tiny.client_index()) == doctest::Approx(1.5));
    CHECK_THROWS_AS(latency::shortest_path_latency(tiny, sample, 1, 1), InvalidArgument);
}

TEST_CASE("cut-set removal yields infinite latency for the far corner") {
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto cut = topo::detangle(mesh, {"S3", "S4", "S5", "S6"});
    const auto sample = topo::sample_trial(cut, 7, 0);
    CHECK(std::isinf(latency::shortest_path_latency(cut, sample, cut.index_of("S1"),
                                                    cut.client_index())));
    CHECK(std::isinf(latency::shortest_path_latency(cut, sample, cut.index_of("S2"),
                                                    cut.client_index())));
    CHECK_FALSE(std::isinf(latency::shortest_path_latency(cut, sample, cut.index_of("S7"),
                                                          cut.client_index())));
}

TEST_CASE("Dijkstra equals Bellman-Ford on sampled trials") {
    for (int preset : {1, 2}) {
        const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(preset));
        for (int t = 0; t < 100; ++t) {
            const auto sample = topo::sample_trial(mesh, 1234, t);
            for (const auto& node : mesh.nodes()) {
                if (node.role != topo::Role::Server) continue;
                const double fast = latency::shortest_path_latency(mesh, sample, node.index,
                                                                   mesh.client_index());
                const double slow =
                    oracles::bellman_ford_latency(mesh, sample, node.index, mesh.client_index());
                if (std::isinf(fast)) CHECK(std::isinf(slow));
                else CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("average latency statistics") {
    const auto tiny = topo::build_grid_mesh(1, 2, topo::scenario_preset(1));
    std::vector<topo::LinkSample> same(4, fixed_weights(tiny, 2.5));
    const auto stats =
        latency::average_latency(tiny, same, tiny.index_of("S1"), tiny.client_index());
    CHECK(stats.mean_ms == doctest::Approx(2.5));
    CHECK(stats.std_ms == doctest::Approx(0.0));
    CHECK(stats.unreachable_fraction == doctest::Approx(0.0));
    CHECK(stats.trials == 4);

    // fully disconnected pair
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto cut = topo::detangle(mesh, {"S3", "S4", "S5", "S6"});
    const auto samples = topo::sample_link_uncertainty(cut, 5, 3);
    const auto unreachable =
        latency::average_latency(cut, samples, cut.index_of("S1"), cut.client_index());
    CHECK(unreachable.unreachable_fraction == doctest::Approx(1.0));
    CHECK(std::isinf(unreachable.mean_ms));

    CHECK_THROWS_AS(latency::average_latency(tiny, {}, 1, 0), InvalidArgument);
}

TEST_CASE("node removal never shortens a trial's shortest path") {
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto samples = topo::sample_link_uncertainty(mesh, 50, 21);
    for (const char* removed : {"S10", "S5", "S8"}) {
        const auto reduced = topo::detangle(mesh, {removed});
        const auto projected = project_all(mesh, samples, reduced);
        for (size_t t = 0; t < samples.size(); ++t) {
            for (const auto& node : reduced.nodes()) {
                if (node.role != topo::Role::Server) continue;
                const double before = latency::shortest_path_latency(
                    mesh, samples[t], mesh.index_of(node.label), mesh.client_index());
                const double after = latency::shortest_path_latency(
                    reduced, projected[t], node.index, reduced.client_index());
                CHECK(after >= before - 1e-12);
            }
        }
    }
}

TEST_CASE("latency table rows and the critical-relay shift") {
    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto samples = topo::sample_link_uncertainty(mesh, 400, 97);

    const auto single = latency::latency_table(mesh, samples, {mesh.index_of("S9")},
                                               mesh.client_index());
    CHECK(single.size() == 1);
    CHECK(single[0].src == "S9");

    std::vector<int> sources{mesh.index_of("S7"), mesh.index_of("S8"), mesh.index_of("S1")};
    const auto base = latency::latency_table(mesh, samples, sources, mesh.client_index());

    // S10 separated: S7's mean shifts more than S8's (S10 relays for S7).
    {
        const auto reduced = topo::detangle(mesh, {"S10"});
        const auto projected = project_all(mesh, samples, reduced);
        const auto after = latency::latency_table(
            reduced, projected, {reduced.index_of("S7"), reduced.index_of("S8")},
            reduced.client_index());
        const double shift_s7 = after[0].mean_ms - base[0].mean_ms;
        const double shift_s8 = after[1].mean_ms - base[1].mean_ms;
        CHECK(shift_s7 > shift_s8);
    }

    // {S3,S5} separated: S1's mean strictly grows under paired seeds.
    {
        const auto reduced = topo::detangle(mesh, {"S3", "S5"});
        const auto projected = project_all(mesh, samples, reduced);
        const auto after = latency::average_latency(reduced, projected, reduced.index_of("S1"),
                                                    reduced.client_index());
        CHECK(after.mean_ms > base[2].mean_ms);
    }

    CHECK_THROWS_AS(latency::latency_table(mesh, samples, {}, mesh.client_index()),
                    InvalidArgument);
}

TEST_CASE("triangle property and scenario ordering for the far corner") {
    const double shared_mu = 2.19;
    auto mean_s1 = [&](int preset) {
        auto scenario = topo::scenario_preset(preset);
        scenario.hop_latency_mean_ms = shared_mu;
        const auto mesh = topo::build_grid_mesh(3, 4, scenario);
        const auto samples = topo::sample_link_uncertainty(mesh, 500, 11);
        return latency::average_latency(mesh, samples, mesh.index_of("S1"), mesh.client_index())
            .mean_ms;
    };
    const double s1 = mean_s1(1), s2 = mean_s1(2), s3 = mean_s1(3);
    CHECK(s1 < s2);
    CHECK(s2 < s3);

    const auto mesh = topo::build_grid_mesh(3, 4, topo::scenario_preset(1));
    const auto samples = topo::sample_link_uncertainty(mesh, 500, 11);
    const double far =
        latency::average_latency(mesh, samples, mesh.index_of("S1"), mesh.client_index()).mean_ms;
    const double near =
        latency::average_latency(mesh, samples, mesh.index_of("S9"), mesh.client_index()).mean_ms;
    CHECK(far >= near);
}
