#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pumpsim/network.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

/// Independent Poisson spike train per neuron, rate in Hz, deterministic for
/// a fixed seed.
SpikeDb gen_poisson(const Network &net, const std::vector<double> &rate_hz,
        double horizon_ms, std::uint64_t seed);
SpikeDb gen_poisson(const Network &net, double rate_hz, double horizon_ms,
        std::uint64_t seed);

struct LifParams {
    double step_ms = 0.1;        // simulation tick
    double leak_tau_ms = 20.0;   // membrane time constant; +inf disables leak
    double threshold = 1.0;      // fire when membrane >= threshold
    double reset = 0.0;          // membrane value after a spike
    double refractory_ms = 2.0;  // absolute refractory period
};

/// Discrete-time leaky integrate-and-fire replay. `inputs` maps designated
/// input neurons (which must have no incoming synapses) to their externally
/// driven spike trains. A spike emitted at tick t is delivered to its
/// post-neurons at tick t + step_ms. Deterministic.
SpikeDb simulate_lif(const Network &net,
        const std::map<int, std::vector<double>> &inputs,
        const LifParams &params, double horizon_ms);

/// Uniform random graph: `synapse_count` distinct directed edges, no
/// self-loops, weights uniform in [weight_min, weight_max].
Network gen_random_network(int neuron_count, int synapse_count,
        double weight_min, double weight_max, std::uint64_t seed);

/// Every neuron receives exactly `in_degree` synapses from distinct
/// pre-neurons. Useful when per-crossbar synapse counts should be determined
/// by neuron counts alone.
Network gen_regular_indegree_network(int neuron_count, int in_degree,
        double weight_min, double weight_max, std::uint64_t seed);

/// Log-normally skewed per-neuron rates with the given median `base_hz`;
/// sigma = 0 yields uniform rates.
std::vector<double> lognormal_rates(double base_hz, double sigma, int count,
        std::uint64_t seed);

} // namespace pumpsim
