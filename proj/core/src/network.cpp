#include "pumpsim/network.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace pumpsim {

void Network::validate() const
{
    if (neuron_count <= 0) {
        throw std::invalid_argument("network: neuron_count must be positive");
    }
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < synapses.size(); ++i) {
        const Synapse &s = synapses[i];
        if (s.id != static_cast<int>(i)) {
            throw std::invalid_argument("network: synapse ids must be dense "
                    "0..S-1, got id " + std::to_string(s.id) + " at position " +
                    std::to_string(i));
        }
        if (s.pre < 0 || s.pre >= neuron_count || s.post < 0 ||
                s.post >= neuron_count) {
            throw std::invalid_argument("network: synapse " +
                    std::to_string(s.id) + " endpoint out of range");
        }
        if (s.pre == s.post) {
            throw std::invalid_argument("network: synapse " +
                    std::to_string(s.id) + " is a self-loop on neuron " +
                    std::to_string(s.pre));
        }
        if (!edges.insert({s.pre, s.post}).second) {
            throw std::invalid_argument("network: duplicate synapse (" +
                    std::to_string(s.pre) + " -> " + std::to_string(s.post) +
                    ")");
        }
    }
}

int Network::out_degree(int neuron) const
{
    int d = 0;
    for (const Synapse &s : synapses) {
        if (s.pre == neuron) {
            ++d;
        }
    }
    return d;
}

int Network::in_degree(int neuron) const
{
    int d = 0;
    for (const Synapse &s : synapses) {
        if (s.post == neuron) {
            ++d;
        }
    }
    return d;
}

} // namespace pumpsim
