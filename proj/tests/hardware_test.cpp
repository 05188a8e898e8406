#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "pumpsim/config_io.hpp"
#include "pumpsim/hardware.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/synth.hpp"

using namespace pumpsim;

TEST_CASE("default spec is the 6-crossbar, 2-pump reference platform")
{
    const HardwareSpec spec;
    CHECK(spec.crossbar_count == 6);
    CHECK(spec.pump_count == 2);
    CHECK(spec.placement == std::vector<int>{0, 0, 0, 1, 1, 1});
    CHECK_NOTHROW(validate_spec(spec));
}

TEST_CASE("validate_spec rejects a discharge level above idle")
{
    HardwareSpec spec;
    spec.v_discharge = 1.9; // > v_idle = 1.8
    CHECK_THROWS_WITH_AS(validate_spec(spec),
            doctest::Contains("v_discharge < v_idle < v_boost"),
            std::invalid_argument);
}

TEST_CASE("validate_spec rejects a placement of the wrong length")
{
    HardwareSpec spec;
    spec.placement = {0, 0, 1};
    CHECK_THROWS_WITH_AS(validate_spec(spec),
            doctest::Contains("one pump per crossbar"), std::invalid_argument);
}

TEST_CASE("validate_spec itemizes multiple violations")
{
    HardwareSpec spec;
    spec.v_discharge = 2.0;
    spec.t_pulse_ms = 0.0;
    spec.placement = {0};
    const auto violations = spec_violations(spec);
    CHECK(violations.size() == 3);
}

TEST_CASE("nbti validation enforces stress-positive operating voltages")
{
    const HardwareSpec spec;
    NbtiParams p;
    CHECK_NOTHROW(validate_nbti(p, spec));
    p.v_th = 1.2; // == v_discharge
    CHECK_THROWS_AS(validate_nbti(p, spec), std::invalid_argument);
    p = NbtiParams{};
    p.n_exp = 1.5;
    CHECK_THROWS_AS(validate_nbti(p, spec), std::invalid_argument);
    p = NbtiParams{};
    p.g0 = 0.0;
    CHECK_THROWS_AS(validate_nbti(p, spec), std::invalid_argument);
}

TEST_CASE("discharge policy strings round-trip")
{
    CHECK(DischargePolicy::parse("never") == DischargePolicy::never());
    CHECK(DischargePolicy::parse("perspike") == DischargePolicy::per_spike());
    CHECK(DischargePolicy::parse("interval:10") ==
            DischargePolicy::fixed_interval(10.0));
    CHECK(DischargePolicy::fixed_interval(12.5).to_string() == "interval:12.5");
    CHECK_THROWS_AS(DischargePolicy::parse("sometimes"), std::invalid_argument);
    CHECK_THROWS_AS(DischargePolicy::parse("interval:-3"), std::invalid_argument);
}

namespace {

MappingMatrix mapping_for(const Network &net, const std::vector<int> &neuron_to_cb,
        const HardwareSpec &spec)
{
    NeuronPartition part;
    part.crossbar_of = neuron_to_cb;
    return derive_mapping(part, net, spec);
}

} // namespace

TEST_CASE("synapse_to_pump with a single pump maps everything to pump 0")
{
    HardwareSpec spec;
    spec.crossbar_count = 3;
    spec.pump_count = 1;
    spec.placement = {0, 0, 0};
    const Network net = gen_random_network(6, 12, 0.0, 1.0, 3);
    const auto mapping = mapping_for(net, {0, 1, 2, 0, 1, 2}, spec);
    for (int pump : synapse_to_pump(mapping, spec)) {
        CHECK(pump == 0);
    }
}

TEST_CASE("synapse_to_pump follows the reference placement")
{
    const HardwareSpec spec; // placement 0,0,0,1,1,1
    Network net;
    net.neuron_count = 2;
    net.synapses.push_back({0, 0, 1, 1.0});
    // post-neuron on crossbar 4 puts the synapse on pump 1
    const auto mapping = mapping_for(net, {0, 4}, spec);
    const auto pumps = synapse_to_pump(mapping, spec);
    REQUIRE(pumps.size() == 1);
    CHECK(pumps[0] == 1);
}

TEST_CASE("synapse_to_pump equals the brute-force one-hot double sum")
{
    std::mt19937_64 g(2024);
    for (int trial = 0; trial < 25; ++trial) {
        HardwareSpec spec;
        spec.crossbar_count = 2 + static_cast<int>(g() % 7);
        spec.pump_count = 1 + static_cast<int>(g() % 4);
        spec.placement.resize(spec.crossbar_count);
        for (int &p : spec.placement) {
            p = static_cast<int>(g() % spec.pump_count);
        }
        const int neurons = 4 + static_cast<int>(g() % 8);
        const Network net = gen_random_network(neurons, 3 * neurons, 0.0, 1.0,
                g());
        std::vector<int> assign(neurons);
        for (int &a : assign) {
            a = static_cast<int>(g() % spec.crossbar_count);
        }
        const auto mapping = mapping_for(net, assign, spec);
        const auto pumps = synapse_to_pump(mapping, spec);

        // brute force over the one-hot matrices: m[i][j] * p[j][k]
        for (int i = 0; i < net.synapse_count(); ++i) {
            int hits = 0;
            int pump = -1;
            for (int j = 0; j < spec.crossbar_count; ++j) {
                const int m_ij = mapping.crossbar_of_synapse[i] == j ? 1 : 0;
                for (int k = 0; k < spec.pump_count; ++k) {
                    const int p_jk = spec.placement[j] == k ? 1 : 0;
                    if (m_ij * p_jk == 1) {
                        ++hits;
                        pump = k;
                    }
                }
            }
            CHECK(hits == 1); // composition is a total one-hot function
            CHECK(pump == pumps[i]);
        }
    }
}

TEST_CASE("relabeling crossbars together with the placement is invariant")
{
    HardwareSpec spec;
    spec.crossbar_count = 4;
    spec.pump_count = 2;
    spec.placement = {0, 1, 0, 1};
    const Network net = gen_random_network(8, 20, 0.0, 1.0, 17);
    const std::vector<int> assign = {0, 1, 2, 3, 0, 1, 2, 3};
    const auto pumps = synapse_to_pump(mapping_for(net, assign, spec), spec);

    const std::vector<int> perm = {2, 0, 3, 1}; // crossbar j -> perm[j]
    HardwareSpec permuted = spec;
    for (int j = 0; j < 4; ++j) {
        permuted.placement[perm[j]] = spec.placement[j];
    }
    std::vector<int> perm_assign(assign.size());
    for (std::size_t n = 0; n < assign.size(); ++n) {
        perm_assign[n] = perm[assign[n]];
    }
    const auto permuted_pumps =
            synapse_to_pump(mapping_for(net, perm_assign, permuted), permuted);
    CHECK(pumps == permuted_pumps);
}

TEST_CASE("config files round-trip and support overrides")
{
    ToolConfig cfg;
    cfg.hw.crossbar_count = 4;
    cfg.hw.placement = {0, 1, 1, 0};
    cfg.hw.t_recover_ms = 2.25;
    cfg.nbti.v_th = 0.3;

    std::ostringstream out;
    save_config(cfg, out);
    std::istringstream in(out.str());
    const ToolConfig reloaded = load_config(in);
    CHECK(reloaded.hw.crossbar_count == 4);
    CHECK(reloaded.hw.placement == cfg.hw.placement);
    CHECK(reloaded.hw.t_recover_ms == 2.25);
    CHECK(reloaded.nbti.v_th == 0.3);

    ToolConfig overridden = reloaded;
    apply_config_override(overridden, "nbti_v_th=0.6");
    CHECK(overridden.nbti.v_th == 0.6);
    CHECK_THROWS_AS(apply_config_override(overridden, "bogus_key=1"),
            ConfigError);

    std::istringstream bad("crossbar_count=abc\n");
    CHECK_THROWS_AS(load_config(bad), ConfigError);
}
