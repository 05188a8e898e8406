#pragma once

#include <vector>

namespace pumpsim {

struct Synapse {
    int id = 0;
    int pre = 0;
    int post = 0;
    double weight = 0.0;
};

/// Static structure of an SNN workload: N neurons and S directed, weighted
/// synapses. Synapses are stored sorted by id, and ids are dense 0..S-1.
struct Network {
    int neuron_count = 0;
    std::vector<Synapse> synapses;

    int synapse_count() const { return static_cast<int>(synapses.size()); }

    /// Throws std::invalid_argument on the first structural violation:
    /// non-dense ids, self-loops, out-of-range endpoints, duplicate edges.
    void validate() const;

    int out_degree(int neuron) const;
    int in_degree(int neuron) const;
};

} // namespace pumpsim
