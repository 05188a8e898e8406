#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "pumpsim/synth.hpp"
#include "pumpsim/trace_io.hpp"

using namespace pumpsim;

namespace {

Network two_neuron_net()
{
    Network net;
    net.neuron_count = 2;
    net.synapses.push_back({0, 0, 1, 1.0});
    return net;
}

} // namespace

TEST_CASE("network validation rejects structural violations")
{
    Network net = two_neuron_net();
    CHECK_NOTHROW(net.validate());

    Network self_loop = net;
    self_loop.synapses[0].post = 0;
    CHECK_THROWS_AS(self_loop.validate(), std::invalid_argument);

    Network out_of_range = net;
    out_of_range.synapses[0].post = 7;
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);

    Network dup = net;
    dup.synapses.push_back({1, 0, 1, 0.5});
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    Network sparse_ids = net;
    sparse_ids.synapses[0].id = 3;
    CHECK_THROWS_AS(sparse_ids.validate(), std::invalid_argument);
}

TEST_CASE("load_trace parses a minimal well-formed file")
{
    std::istringstream in(
            "# comment\n"
            "T_MS=60\n"
            "NEURONS=2\n"
            "SYN,0,0,1,1.0\n"
            "SPK,0,5.0\n"
            "SPK,0,12.0\n");
    const TraceData data = load_trace(in);
    CHECK(data.network.neuron_count == 2);
    CHECK(data.network.synapse_count() == 1);
    CHECK(data.spikes.horizon_ms == 60.0);
    REQUIRE(data.spikes.trains[0].size() == 2);
    CHECK(data.spikes.trains[0][0] == 5.0);
    CHECK(data.spikes.trains[0][1] == 12.0);
    CHECK(data.spikes.trains[1].empty());
}

TEST_CASE("load_trace rejects spike times past the horizon")
{
    std::istringstream in(
            "T_MS=60\n"
            "NEURONS=2\n"
            "SYN,0,0,1,1.0\n"
            "SPK,0,61.0\n");
    CHECK_THROWS_WITH_AS(load_trace(in),
            doctest::Contains("time exceeds horizon"), std::runtime_error);
}

TEST_CASE("load_trace reports the offending line")
{
    std::istringstream in(
            "T_MS=60\n"
            "NEURONS=2\n"
            "SYN,0,0,1,not_a_number\n");
    CHECK_THROWS_WITH_AS(load_trace(in), doctest::Contains("line 3"),
            std::runtime_error);

    std::istringstream unsorted(
            "T_MS=60\n"
            "NEURONS=2\n"
            "SPK,0,12.0\n"
            "SPK,0,5.0\n");
    CHECK_THROWS_WITH_AS(load_trace(unsorted),
            doctest::Contains("strictly increasing"), std::runtime_error);
}

TEST_CASE("write_trace emits a header-only file for an empty SpikeDb")
{
    Network net = two_neuron_net();
    SpikeDb db;
    db.horizon_ms = 60.0;
    db.trains.resize(2);
    std::ostringstream out;
    write_trace(net, db, out);
    CHECK(out.str() == "T_MS=60\nNEURONS=2\nSYN,0,0,1,1\n");
}

TEST_CASE("trace round-trip is the identity and byte-stable")
{
    Network net = two_neuron_net();
    SpikeDb db;
    db.horizon_ms = 60.0;
    db.trains = {{5.0, 12.0}, {}};

    std::ostringstream first;
    write_trace(net, db, first);
    std::istringstream back(first.str());
    const TraceData reloaded = load_trace(back);
    CHECK(reloaded.network.neuron_count == net.neuron_count);
    CHECK(reloaded.spikes.trains == db.trains);
    CHECK(reloaded.spikes.horizon_ms == db.horizon_ms);

    std::ostringstream second;
    write_trace(reloaded.network, reloaded.spikes, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("large Poisson workload round-trips losslessly")
{
    const Network net = gen_random_network(1000, 3000, -1.0, 1.0, 99);
    const SpikeDb db = gen_poisson(net, 23.7, 500.0, 99);
    std::ostringstream out;
    write_trace(net, db, out);
    std::istringstream in(out.str());
    const TraceData reloaded = load_trace(in);
    CHECK(reloaded.spikes.trains == db.trains);
    CHECK(reloaded.network.synapse_count() == net.synapse_count());
    for (int s = 0; s < net.synapse_count(); ++s) {
        CHECK(reloaded.network.synapses[s].pre == net.synapses[s].pre);
        CHECK(reloaded.network.synapses[s].post == net.synapses[s].post);
        CHECK(reloaded.network.synapses[s].weight == net.synapses[s].weight);
    }
}

TEST_CASE("gen_poisson: vanishing rate produces empty trains")
{
    const Network net = two_neuron_net();
    const SpikeDb db = gen_poisson(net, 0.0001, 100.0, 7);
    CHECK(db.total_spikes() == 0);
}

TEST_CASE("gen_poisson: spike counts match Poisson statistics")
{
    // 100 Hz over 10 s: mean 1000 spikes, sigma ~31.6; 3 sigma = 95.
    const Network net = gen_random_network(20, 40, 0.0, 1.0, 5);
    const SpikeDb db = gen_poisson(net, 100.0, 10000.0, 1234);
    for (const auto &train : db.trains) {
        const double count = static_cast<double>(train.size());
        CHECK(std::abs(count - 1000.0) <= 95.0);
    }
    db.validate();
}

TEST_CASE("gen_poisson is deterministic for a fixed seed")
{
    const Network net = gen_random_network(10, 30, 0.0, 1.0, 5);
    const SpikeDb a = gen_poisson(net, 50.0, 1000.0, 42);
    const SpikeDb b = gen_poisson(net, 50.0, 1000.0, 42);
    CHECK(a.trains == b.trains);
    const SpikeDb c = gen_poisson(net, 50.0, 1000.0, 43);
    CHECK(a.trains != c.trains);
}

TEST_CASE("simulate_lif: no input spikes, no output spikes")
{
    Network net;
    net.neuron_count = 3;
    net.synapses.push_back({0, 0, 1, 2.0});
    net.synapses.push_back({1, 1, 2, 2.0});
    const SpikeDb db = simulate_lif(net, {{0, {}}}, LifParams{}, 100.0);
    CHECK(db.total_spikes() == 0);
}

TEST_CASE("simulate_lif: suprathreshold weight fires one step after the input")
{
    Network net = two_neuron_net();
    net.synapses[0].weight = 1.0; // == threshold
    LifParams params;
    params.leak_tau_ms = std::numeric_limits<double>::infinity();
    params.threshold = 1.0;
    const std::map<int, std::vector<double>> inputs = {{0, {5.0}}};
    const SpikeDb db = simulate_lif(net, inputs, params, 60.0);
    REQUIRE(db.trains[1].size() == 1);
    CHECK(db.trains[1][0] == doctest::Approx(5.0 + params.step_ms));
}

TEST_CASE("simulate_lif: chain fires once per upstream spike, hand oracle")
{
    // 0 -> 1 -> 2 with suprathreshold weights and no leak. Hand simulation:
    // input spikes at 10 and 20 reach neuron 1 one step later and neuron 2
    // two steps later.
    Network net;
    net.neuron_count = 3;
    net.synapses.push_back({0, 0, 1, 1.5});
    net.synapses.push_back({1, 1, 2, 1.5});
    LifParams params;
    params.leak_tau_ms = std::numeric_limits<double>::infinity();
    params.threshold = 1.0;
    params.refractory_ms = 1.0;
    const std::map<int, std::vector<double>> inputs = {{0, {10.0, 20.0}}};
    const SpikeDb db = simulate_lif(net, inputs, params, 60.0);
    REQUIRE(db.trains[1].size() == 2);
    REQUIRE(db.trains[2].size() == 2);
    CHECK(db.trains[1][0] == doctest::Approx(10.1));
    CHECK(db.trains[1][1] == doctest::Approx(20.1));
    CHECK(db.trains[2][0] == doctest::Approx(10.2));
    CHECK(db.trains[2][1] == doctest::Approx(20.2));
}

TEST_CASE("simulate_lif rejects unstable parameters")
{
    Network net = two_neuron_net();
    LifParams params;
    params.threshold = 0.5;
    params.reset = 0.5;
    CHECK_THROWS_AS(simulate_lif(net, {}, params, 10.0), std::invalid_argument);

    // input neurons must not have incoming synapses
    LifParams ok;
    CHECK_THROWS_AS(simulate_lif(net, {{1, {1.0}}}, ok, 10.0),
            std::invalid_argument);
}

TEST_CASE("expand_to_synapses copies the pre-neuron train to each fan-out")
{
    Network net;
    net.neuron_count = 3;
    net.synapses.push_back({0, 0, 1, 1.0});
    net.synapses.push_back({1, 0, 2, 1.0});
    SpikeDb db;
    db.horizon_ms = 20.0;
    db.trains = {{5.0, 12.0}, {}, {}};
    const SynapseTrains st = expand_to_synapses(net, db);
    CHECK(st.trains[0] == std::vector<double>{5.0, 12.0});
    CHECK(st.trains[1] == std::vector<double>{5.0, 12.0});
    CHECK(st.total_spikes() == 4);
}

TEST_CASE("expansion conserves the brute-force spike-event count")
{
    const Network net = gen_random_network(10, 35, 0.0, 1.0, 11);
    const SpikeDb db = gen_poisson(net, 40.0, 500.0, 11);
    const SynapseTrains st = expand_to_synapses(net, db);

    // brute force: every (neuron spike, outgoing synapse) pair is one event
    std::int64_t expected = 0;
    for (int n = 0; n < net.neuron_count; ++n) {
        expected += static_cast<std::int64_t>(db.trains[n].size()) *
                net.out_degree(n);
    }
    CHECK(st.total_spikes() == expected);

    // per-synapse trains stay strictly increasing and inside [0, T]
    for (const auto &train : st.trains) {
        for (std::size_t i = 0; i < train.size(); ++i) {
            CHECK(train[i] >= 0.0);
            CHECK(train[i] <= db.horizon_ms);
            if (i > 0) {
                CHECK(train[i] > train[i - 1]);
            }
        }
    }
}
