#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pumpsim/hardware.hpp"
#include "pumpsim/network.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

/// Cluster assignment: crossbar index per neuron. A synapse is stored in the
/// crossbar of its post-neuron, occupying one cell in that crossbar's column
/// for the post-neuron and row for the pre-neuron.
struct NeuronPartition {
    std::vector<int> crossbar_of;

    bool operator==(const NeuronPartition &) const = default;
};

/// Dense encoding of the one-hot synapse-to-crossbar matrix, together with
/// the neuron partition it was derived from (needed to tell which spikes
/// cross the interconnect).
struct MappingMatrix {
    std::vector<int> crossbar_of_synapse;
    NeuronPartition partition;
};

/// Capacity violations of a partition against the crossbar geometry; empty
/// when the partition fits.
std::vector<std::string> partition_violations(const NeuronPartition &partition,
        const Network &net, const HardwareSpec &spec);

/// Realizes the one-hot mapping: synapse i lives in the crossbar of its
/// post-neuron's cluster. Throws on capacity violations.
MappingMatrix derive_mapping(const NeuronPartition &partition,
        const Network &net, const HardwareSpec &spec);

/// Number of spikes that must traverse the shared interconnect: the spike
/// count of every synapse whose pre- and post-neurons sit on different
/// crossbars.
std::int64_t cut_spike_count(const NeuronPartition &partition,
        const Network &net, const SpikeDb &db);

/// Per-neuron activation weight used by the balancing strategy: total spikes
/// arriving on the neuron's incoming synapses.
std::vector<std::int64_t> neuron_activation_weights(const Network &net,
        const SpikeDb &db);

/// Baseline: neuron n -> crossbar (n mod C), then greedily repaired until the
/// capacity invariants hold. Throws when no repair is found.
NeuronPartition map_round_robin(const Network &net, const HardwareSpec &spec);

/// Utilization balancing: longest-processing-time greedy over neuron
/// activation weights, always extending the least-loaded crossbar that still
/// has capacity. Ties break toward the lowest index.
NeuronPartition map_balanced(const Network &net, const SpikeDb &db,
        const HardwareSpec &spec);

/// Communication minimization: starts from map_round_robin and applies
/// single-neuron moves and pairwise swaps that strictly reduce
/// cut_spike_count while respecting capacity, until a local minimum.
/// Candidate visit order is shuffled by `seed`; deterministic for a fixed
/// seed.
NeuronPartition map_min_comm(const Network &net, const SpikeDb &db,
        const HardwareSpec &spec, std::uint64_t seed);

/// Spike-activation events served by each crossbar; sums to the total
/// expanded spike count.
std::vector<std::int64_t> utilization(const MappingMatrix &mapping,
        const SpikeDb &db, const Network &net, const HardwareSpec &spec);

// Partition files: one `NRN,<neuron_id>,<crossbar>` line per neuron,
// ascending id; '#' comments allowed on load.
void write_partition(const NeuronPartition &partition, std::ostream &out);
void write_partition(const NeuronPartition &partition, const std::string &path);
NeuronPartition load_partition(std::istream &in, int neuron_count);
NeuronPartition load_partition(const std::string &path, int neuron_count);

} // namespace pumpsim
