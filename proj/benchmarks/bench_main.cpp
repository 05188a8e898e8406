#include <benchmark/benchmark.h>

#include "pumpsim/engine.hpp"
#include "pumpsim/explore.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/reliability.hpp"
#include "pumpsim/synth.hpp"

namespace {

struct Fixture {
    pumpsim::Network net;
    pumpsim::SpikeDb db;
    pumpsim::HardwareSpec hw;
    pumpsim::MappingMatrix mapping;

    Fixture()
    {
        net = pumpsim::gen_random_network(50, 500, 0.5, 1.5, 7);
        db = pumpsim::gen_poisson(net, 10.0, 1000.0, 7);
        const auto partition = pumpsim::map_round_robin(net, hw);
        mapping = pumpsim::derive_mapping(partition, net, hw);
    }
};

const Fixture &fixture()
{
    static Fixture f;
    return f;
}

void BM_replay(benchmark::State &state, const pumpsim::DischargePolicy &policy)
{
    const Fixture &f = fixture();
    for (auto _ : state) {
        auto result = pumpsim::replay(f.net, f.db, f.mapping, f.hw, policy);
        benchmark::DoNotOptimize(result.counters.total_added_delay_ms);
    }
}

void BM_replay_never(benchmark::State &state)
{
    BM_replay(state, pumpsim::DischargePolicy::never());
}

void BM_replay_perspike(benchmark::State &state)
{
    BM_replay(state, pumpsim::DischargePolicy::per_spike());
}

void BM_replay_interval10(benchmark::State &state)
{
    BM_replay(state, pumpsim::DischargePolicy::fixed_interval(10.0));
}

void BM_map_balanced(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state) {
        auto part = pumpsim::map_balanced(f.net, f.db, f.hw);
        benchmark::DoNotOptimize(part.crossbar_of.data());
    }
}

void BM_map_min_comm(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state) {
        auto part = pumpsim::map_min_comm(f.net, f.db, f.hw, 11);
        benchmark::DoNotOptimize(part.crossbar_of.data());
    }
}

void BM_synapse_aging(benchmark::State &state)
{
    const Fixture &f = fixture();
    const auto trains = pumpsim::expand_to_synapses(f.net, f.db);
    const pumpsim::NbtiParams nbti;
    const auto policy = pumpsim::DischargePolicy::fixed_interval(10.0);
    for (auto _ : state) {
        auto aging = pumpsim::all_synapse_aging(trains, f.db.horizon_ms, policy,
                f.hw, nbti);
        benchmark::DoNotOptimize(aging.data());
    }
}

} // namespace

BENCHMARK(BM_replay_never);
BENCHMARK(BM_replay_perspike);
BENCHMARK(BM_replay_interval10);
BENCHMARK(BM_map_balanced);
BENCHMARK(BM_map_min_comm);
BENCHMARK(BM_synapse_aging);

BENCHMARK_MAIN();
