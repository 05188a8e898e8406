#include "pumpsim/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "rng.hpp"

namespace pumpsim {

SpikeDb gen_poisson(const Network &net, const std::vector<double> &rate_hz,
        double horizon_ms, std::uint64_t seed)
{
    if (static_cast<int>(rate_hz.size()) != net.neuron_count) {
        throw std::invalid_argument("gen_poisson: one rate per neuron required");
    }
    for (double r : rate_hz) {
        if (r <= 0.0) {
            throw std::invalid_argument("gen_poisson: rates must be positive");
        }
    }
    if (horizon_ms <= 0.0) {
        throw std::invalid_argument("gen_poisson: horizon must be positive");
    }

    SpikeDb db;
    db.horizon_ms = horizon_ms;
    db.trains.resize(net.neuron_count);
    std::mt19937_64 g(seed);
    for (int n = 0; n < net.neuron_count; ++n) {
        const double rate_per_ms = rate_hz[n] / 1000.0;
        double t = 0.0;
        auto &train = db.trains[n];
        while (true) {
            const double gap = rng::exponential_gap(g, rate_per_ms);
            t += std::max(gap, 1e-9); // keep trains strictly increasing
            if (t > horizon_ms) {
                break;
            }
            train.push_back(t);
        }
    }
    return db;
}

SpikeDb gen_poisson(const Network &net, double rate_hz, double horizon_ms,
        std::uint64_t seed)
{
    return gen_poisson(net, std::vector<double>(net.neuron_count, rate_hz),
            horizon_ms, seed);
}

SpikeDb simulate_lif(const Network &net,
        const std::map<int, std::vector<double>> &inputs,
        const LifParams &params, double horizon_ms)
{
    net.validate();
    if (params.step_ms <= 0.0 || params.threshold <= 0.0 ||
            params.leak_tau_ms <= 0.0 || params.refractory_ms < 0.0) {
        throw std::invalid_argument("simulate_lif: parameters must be positive");
    }
    if (params.threshold <= params.reset) {
        throw std::invalid_argument(
                "simulate_lif: unstable parameters, threshold must exceed reset");
    }
    if (horizon_ms <= 0.0) {
        throw std::invalid_argument("simulate_lif: horizon must be positive");
    }
    for (const auto &[neuron, train] : inputs) {
        if (neuron < 0 || neuron >= net.neuron_count) {
            throw std::invalid_argument("simulate_lif: input neuron out of range");
        }
        if (net.in_degree(neuron) != 0) {
            throw std::invalid_argument("simulate_lif: input neuron " +
                    std::to_string(neuron) + " has incoming synapses");
        }
        double prev = -1.0;
        for (double t : train) {
            if (t < 0.0 || t > horizon_ms || t <= prev) {
                throw std::invalid_argument(
                        "simulate_lif: input train invalid for neuron " +
                        std::to_string(neuron));
            }
            prev = t;
        }
    }

    const double step = params.step_ms;
    const std::int64_t steps =
            static_cast<std::int64_t>(std::ceil(horizon_ms / step - 1e-9));
    const double decay = std::isinf(params.leak_tau_ms)
            ? 1.0
            : std::exp(-step / params.leak_tau_ms);

    std::vector<std::vector<std::pair<int, double>>> out_edges(net.neuron_count);
    for (const Synapse &s : net.synapses) {
        out_edges[s.pre].push_back({s.post, s.weight});
    }

    SpikeDb db;
    db.horizon_ms = horizon_ms;
    db.trains.resize(net.neuron_count);
    for (const auto &[neuron, train] : inputs) {
        db.trains[neuron] = train;
    }

    std::vector<double> membrane(net.neuron_count, 0.0);
    std::vector<double> refractory_until(net.neuron_count, -1.0);
    // pending[n]: charge arriving at the next tick
    std::vector<double> pending(net.neuron_count, 0.0);
    std::vector<double> next_pending(net.neuron_count, 0.0);
    std::vector<std::size_t> input_pos; // cursor into each input train
    std::vector<int> input_ids;
    for (const auto &[neuron, train] : inputs) {
        input_ids.push_back(neuron);
        input_pos.push_back(0);
    }

    for (std::int64_t k = 1; k <= steps; ++k) {
        const double now = static_cast<double>(k) * step;
        // externally driven spikes in (now - step, now] are emitted this tick
        // and delivered at the next one
        for (std::size_t i = 0; i < input_ids.size(); ++i) {
            const auto &train = inputs.at(input_ids[i]);
            while (input_pos[i] < train.size() &&
                    train[input_pos[i]] <= now + 1e-9) {
                for (const auto &[post, weight] : out_edges[input_ids[i]]) {
                    next_pending[post] += weight;
                }
                ++input_pos[i];
            }
        }
        for (int n = 0; n < net.neuron_count; ++n) {
            if (inputs.count(n) != 0) {
                continue;
            }
            if (now < refractory_until[n]) {
                pending[n] = 0.0; // arrivals during refractory are lost
                continue;
            }
            membrane[n] = membrane[n] * decay + pending[n];
            pending[n] = 0.0;
            if (membrane[n] >= params.threshold) {
                db.trains[n].push_back(now);
                membrane[n] = params.reset;
                refractory_until[n] = now + params.refractory_ms;
                for (const auto &[post, weight] : out_edges[n]) {
                    next_pending[post] += weight;
                }
            }
        }
        for (int n = 0; n < net.neuron_count; ++n) {
            pending[n] += next_pending[n];
            next_pending[n] = 0.0;
        }
    }
    return db;
}

Network gen_random_network(int neuron_count, int synapse_count,
        double weight_min, double weight_max, std::uint64_t seed)
{
    if (neuron_count < 2) {
        throw std::invalid_argument("gen_random_network: need at least 2 neurons");
    }
    const std::int64_t max_edges =
            static_cast<std::int64_t>(neuron_count) * (neuron_count - 1);
    if (synapse_count < 0 || synapse_count > max_edges) {
        throw std::invalid_argument("gen_random_network: synapse count infeasible");
    }

    Network net;
    net.neuron_count = neuron_count;
    std::mt19937_64 g(seed);
    std::set<std::pair<int, int>> edges;
    while (static_cast<int>(edges.size()) < synapse_count) {
        const int pre = static_cast<int>(rng::index(g, neuron_count));
        const int post = static_cast<int>(rng::index(g, neuron_count));
        if (pre == post) {
            continue;
        }
        if (edges.insert({pre, post}).second) {
            Synapse s;
            s.id = static_cast<int>(net.synapses.size());
            s.pre = pre;
            s.post = post;
            s.weight = rng::uniform(g, weight_min, weight_max);
            net.synapses.push_back(s);
        }
    }
    net.validate();
    return net;
}

Network gen_regular_indegree_network(int neuron_count, int in_degree,
        double weight_min, double weight_max, std::uint64_t seed)
{
    if (neuron_count < 2 || in_degree < 1 || in_degree > neuron_count - 1) {
        throw std::invalid_argument(
                "gen_regular_indegree_network: infeasible in-degree");
    }
    Network net;
    net.neuron_count = neuron_count;
    std::mt19937_64 g(seed);
    std::vector<int> candidates(neuron_count);
    for (int post = 0; post < neuron_count; ++post) {
        candidates.clear();
        for (int pre = 0; pre < neuron_count; ++pre) {
            if (pre != post) {
                candidates.push_back(pre);
            }
        }
        rng::shuffle(candidates, g);
        for (int j = 0; j < in_degree; ++j) {
            Synapse s;
            s.id = static_cast<int>(net.synapses.size());
            s.pre = candidates[j];
            s.post = post;
            s.weight = rng::uniform(g, weight_min, weight_max);
            net.synapses.push_back(s);
        }
    }
    net.validate();
    return net;
}

std::vector<double> lognormal_rates(double base_hz, double sigma, int count,
        std::uint64_t seed)
{
    if (base_hz <= 0.0 || sigma < 0.0 || count <= 0) {
        throw std::invalid_argument("lognormal_rates: invalid arguments");
    }
    std::vector<double> rates(count, base_hz);
    if (sigma == 0.0) {
        return rates;
    }
    std::mt19937_64 g(seed);
    for (int i = 0; i < count; ++i) {
        rates[i] = base_hz * std::exp(sigma * rng::standard_normal(g));
    }
    return rates;
}

} // namespace pumpsim
