#pragma once

#include <cstdint>
#include <vector>

#include "pumpsim/network.hpp"

namespace pumpsim {

/// Recorded firing times of every neuron over the interval [0, horizon_ms].
/// Trains are strictly increasing; simultaneous spikes on one neuron are
/// illegal because the ISI statistics assume distinct firing times.
struct SpikeDb {
    double horizon_ms = 0.0;
    std::vector<std::vector<double>> trains; // one sorted train per neuron

    /// Throws std::invalid_argument on negative horizon, unsorted trains or
    /// spike times outside [0, horizon_ms].
    void validate() const;

    std::int64_t total_spikes() const;
};

/// Spike times arranged by the synapse they excite. A pre-neuron's spike
/// drives all of its outgoing synapses at the same instant, so the train of a
/// synapse is a copy of its pre-neuron's train.
struct SynapseTrains {
    std::vector<std::vector<double>> trains; // one sorted train per synapse

    std::int64_t total_spikes() const;
};

SynapseTrains expand_to_synapses(const Network &net, const SpikeDb &db);

} // namespace pumpsim
