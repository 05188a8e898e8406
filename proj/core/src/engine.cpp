#include "pumpsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "pumpsim/trace_io.hpp"

namespace pumpsim {

std::optional<double> compute_isi(const std::vector<double> &train)
{
    const std::size_t k = train.size();
    if (k < 2) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        sum += train[i] - train[i - 1];
    }
    return sum / static_cast<double>(k - 1);
}

IsiStats compute_isi_stats(const std::vector<std::vector<double>> &trains)
{
    IsiStats stats;
    stats.per_neuron_ms.reserve(trains.size());
    double sum = 0.0;
    for (const auto &train : trains) {
        auto isi = compute_isi(train);
        if (isi) {
            sum += *isi;
            ++stats.defined_count;
        } else {
            ++stats.undefined_count;
        }
        stats.per_neuron_ms.push_back(isi);
    }
    stats.mean_ms = stats.defined_count > 0
            ? sum / static_cast<double>(stats.defined_count)
            : 0.0;
    return stats;
}

IsiDelta isi_change(const IsiStats &reference, const IsiStats &observed)
{
    if (reference.per_neuron_ms.size() != observed.per_neuron_ms.size()) {
        throw std::invalid_argument("isi_change: neuron sets differ in size");
    }
    IsiDelta delta;
    delta.per_neuron_frac.resize(reference.per_neuron_ms.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < reference.per_neuron_ms.size(); ++n) {
        const auto &ref = reference.per_neuron_ms[n];
        const auto &obs = observed.per_neuron_ms[n];
        if (ref.has_value() != obs.has_value()) {
            ++delta.excluded_count;
            continue;
        }
        if (!ref) {
            continue;
        }
        const double frac = std::abs(*obs - *ref) / *ref;
        delta.per_neuron_frac[n] = frac;
        sum += frac;
        ++delta.compared_count;
    }
    delta.mean_frac = delta.compared_count > 0
            ? sum / static_cast<double>(delta.compared_count)
            : 0.0;
    return delta;
}

namespace {

struct Event {
    double t = 0.0;       // recorded spike time
    double arrival = 0.0; // after bus serialization
    double served = 0.0;  // after pump service
    int synapse = 0;
    int pump = 0;
    bool cut = false;
};

} // namespace

ExecutionResult replay(const Network &net, const SpikeDb &db,
        const MappingMatrix &mapping, const HardwareSpec &spec,
        const DischargePolicy &policy)
{
    net.validate();
    db.validate();
    validate_spec(spec);
    validate_policy(policy, spec);
    if (static_cast<int>(db.trains.size()) != net.neuron_count) {
        throw std::invalid_argument("replay: spike trains do not match network");
    }
    if (mapping.crossbar_of_synapse.size() != net.synapses.size() ||
            static_cast<int>(mapping.partition.crossbar_of.size()) !=
                    net.neuron_count) {
        throw std::invalid_argument("replay: mapping does not match network");
    }
    const std::vector<int> pump_of = synapse_to_pump(mapping, spec);

    ExecutionResult result;
    result.policy = policy;
    result.spec = spec;

    std::vector<Event> events;
    for (const Synapse &s : net.synapses) {
        const bool cut = mapping.partition.crossbar_of[s.pre] !=
                mapping.crossbar_of_synapse[s.id];
        for (double t : db.trains[s.pre]) {
            Event e;
            e.t = t;
            e.synapse = s.id;
            e.pump = pump_of[s.id];
            e.cut = cut;
            events.push_back(e);
        }
    }
    std::sort(events.begin(), events.end(), [](const Event &a, const Event &b) {
        if (a.t != b.t) {
            return a.t < b.t;
        }
        return a.synapse < b.synapse;
    });

    // Stage 1: cut spikes share one FIFO bus, t_hop_ms of service each.
    double bus_free = 0.0;
    for (Event &e : events) {
        if (e.cut) {
            const double start = std::max(e.t, bus_free);
            e.arrival = start + spec.t_hop_ms;
            bus_free = e.arrival;
            ++result.counters.cut_spikes;
        } else {
            e.arrival = e.t;
        }
    }

    // Stage 2: pump service under the discharge policy.
    std::vector<std::vector<Event *>> by_pump(spec.pump_count);
    for (Event &e : events) {
        by_pump[e.pump].push_back(&e);
    }
    result.pump_pulse_times.resize(spec.pump_count);
    for (int k = 0; k < spec.pump_count; ++k) {
        auto &queue = by_pump[k];
        std::stable_sort(queue.begin(), queue.end(),
                [](const Event *a, const Event *b) {
                    return a->arrival < b->arrival;
                });
        auto &pulses = result.pump_pulse_times[k];
        switch (policy.kind) {
        case DischargePolicy::Kind::never:
            for (Event *e : queue) {
                e->served = e->arrival;
            }
            break;
        case DischargePolicy::Kind::fixed_interval:
            for (Event *e : queue) {
                e->served = fixed_interval_serve(e->arrival, policy.interval_ms,
                        spec.t_recover_ms);
            }
            break;
        case DischargePolicy::Kind::per_spike: {
            // The pump discharges after every pulse and needs t_recover_ms
            // when the next event wakes it, so each gap between distinct
            // arrival groups stretches by exactly t_recover_ms. Simultaneous
            // events share one pulse.
            double prev_arrival = 0.0;
            double prev_served = 0.0;
            bool first = true;
            for (Event *e : queue) {
                if (first) {
                    e->served = e->arrival;
                    first = false;
                } else if (e->arrival == prev_arrival) {
                    e->served = prev_served;
                } else {
                    e->served = prev_served + (e->arrival - prev_arrival) +
                            spec.t_recover_ms;
                }
                prev_arrival = e->arrival;
                prev_served = e->served;
            }
            break;
        }
        }
        for (const Event *e : queue) {
            if (pulses.empty() || pulses.back() != e->served) {
                pulses.push_back(e->served);
            }
        }
    }

    // Counters, per-synapse served trains, execution horizon.
    result.served_synapse_trains.resize(net.synapses.size());
    double horizon = db.horizon_ms;
    result.counters.spikes_processed = static_cast<std::int64_t>(events.size());
    for (const Event &e : events) {
        const double delay = e.served - e.t;
        if (delay > 0.0) {
            ++result.counters.spikes_delayed;
        }
        result.counters.total_added_delay_ms += delay;
        result.served_synapse_trains[e.synapse].push_back(e.served);
        horizon = std::max(horizon, e.served + spec.t_pulse_ms);
    }
    result.exec_horizon_ms = horizon;
    for (auto &train : result.served_synapse_trains) {
        std::sort(train.begin(), train.end());
    }

    // Observed firing times (single-stage, open-loop replay). A neuron fed by
    // synapses shifts with the lateness of the spikes delivered to it: each
    // inter-spike gap absorbs the largest delay among deliveries falling
    // inside it, and shifts accumulate so a train is never reordered. An
    // externally driven neuron (no incoming synapses) is observed when the
    // hardware finishes processing its own spikes, ratcheted monotone.
    std::vector<int> in_degree(net.neuron_count, 0);
    for (const Synapse &s : net.synapses) {
        ++in_degree[s.post];
    }
    std::vector<std::vector<std::pair<double, double>>> deliveries(
            net.neuron_count); // (recorded time, delay) sorted by time
    std::vector<std::vector<std::pair<double, double>>> own_processing(
            net.neuron_count); // per source spike time, max fan-out delay
    for (const Event &e : events) {
        deliveries[net.synapses[e.synapse].post].push_back(
                {e.t, e.served - e.t});
        const int pre = net.synapses[e.synapse].pre;
        if (in_degree[pre] == 0) {
            auto &own = own_processing[pre];
            if (!own.empty() && own.back().first == e.t) {
                own.back().second =
                        std::max(own.back().second, e.served - e.t);
            } else {
                own.push_back({e.t, e.served - e.t});
            }
        }
    }
    result.observed_trains.resize(net.neuron_count);
    for (int n = 0; n < net.neuron_count; ++n) {
        auto &observed = result.observed_trains[n];
        observed.reserve(db.trains[n].size());
        if (in_degree[n] > 0) {
            const auto &incoming = deliveries[n];
            std::size_t pos = 0;
            double shift = 0.0;
            for (double t : db.trains[n]) {
                double gap_max = 0.0;
                while (pos < incoming.size() && incoming[pos].first <= t) {
                    gap_max = std::max(gap_max, incoming[pos].second);
                    ++pos;
                }
                shift += gap_max;
                observed.push_back(t + shift);
            }
        } else {
            const auto &own = own_processing[n];
            std::size_t pos = 0;
            double shift = 0.0;
            for (double t : db.trains[n]) {
                while (pos < own.size() && own[pos].first <= t) {
                    shift = std::max(shift, own[pos].second);
                    ++pos;
                }
                observed.push_back(t + shift);
            }
        }
    }

    result.pump_schedules = build_pump_schedules(result);
    return result;
}

std::vector<VoltageSchedule> build_pump_schedules(const ExecutionResult &result)
{
    std::vector<VoltageSchedule> schedules;
    schedules.reserve(result.pump_pulse_times.size());
    for (const auto &pulses : result.pump_pulse_times) {
        schedules.push_back(build_schedule_for_pulses(pulses, result.policy,
                result.spec, result.exec_horizon_ms));
    }
    return schedules;
}

void write_schedule_dump(const std::vector<VoltageSchedule> &schedules,
        std::ostream &out)
{
    for (std::size_t k = 0; k < schedules.size(); ++k) {
        for (const auto &seg : schedules[k].segments) {
            out << "PUMP," << k << ',' << format_double(seg.start_ms) << ','
                << format_double(seg.end_ms) << ',' << format_double(seg.volts)
                << '\n';
        }
    }
    if (!out) {
        throw std::runtime_error("write_schedule_dump: stream failure");
    }
}

void write_schedule_dump(const std::vector<VoltageSchedule> &schedules,
        const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_schedule_dump(schedules, out);
}

} // namespace pumpsim
