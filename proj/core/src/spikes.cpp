#include "pumpsim/spikes.hpp"

#include <stdexcept>
#include <string>

namespace pumpsim {

void SpikeDb::validate() const
{
    if (horizon_ms <= 0.0) {
        throw std::invalid_argument("spikes: horizon_ms must be positive");
    }
    for (std::size_t n = 0; n < trains.size(); ++n) {
        const auto &train = trains[n];
        double prev = -1.0;
        for (double t : train) {
            if (t < 0.0) {
                throw std::invalid_argument("spikes: neuron " +
                        std::to_string(n) + " has a negative spike time");
            }
            if (t > horizon_ms) {
                throw std::invalid_argument("spikes: neuron " +
                        std::to_string(n) + " time exceeds horizon");
            }
            if (t <= prev) {
                throw std::invalid_argument("spikes: neuron " +
                        std::to_string(n) +
                        " train is not strictly increasing");
            }
            prev = t;
        }
    }
}

std::int64_t SpikeDb::total_spikes() const
{
    std::int64_t total = 0;
    for (const auto &train : trains) {
        total += static_cast<std::int64_t>(train.size());
    }
    return total;
}

std::int64_t SynapseTrains::total_spikes() const
{
    std::int64_t total = 0;
    for (const auto &train : trains) {
        total += static_cast<std::int64_t>(train.size());
    }
    return total;
}

SynapseTrains expand_to_synapses(const Network &net, const SpikeDb &db)
{
    if (static_cast<int>(db.trains.size()) != net.neuron_count) {
        throw std::invalid_argument(
                "expand_to_synapses: spike trains do not match neuron count");
    }
    SynapseTrains result;
    result.trains.reserve(net.synapses.size());
    for (const Synapse &s : net.synapses) {
        result.trains.push_back(db.trains[s.pre]);
    }
    return result;
}

} // namespace pumpsim
