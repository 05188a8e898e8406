#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pumpsim/hardware.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/network.hpp"
#include "pumpsim/schedule.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

/// Average inter-spike interval of one sorted train, (t_K - t_1) / (K - 1).
/// Undefined (nullopt) for trains with fewer than two spikes.
std::optional<double> compute_isi(const std::vector<double> &train);

struct IsiStats {
    std::vector<std::optional<double>> per_neuron_ms;
    double mean_ms = 0.0; // over neurons with a defined ISI
    int defined_count = 0;
    int undefined_count = 0;
};

IsiStats compute_isi_stats(const std::vector<std::vector<double>> &trains);

struct IsiDelta {
    std::vector<std::optional<double>> per_neuron_frac; // |obs - ref| / ref
    double mean_frac = 0.0;
    int compared_count = 0;
    int excluded_count = 0; // defined in only one of the two inputs
};

/// Fractional ISI deviation of `observed` against `reference`, per neuron and
/// averaged over neurons defined in both.
IsiDelta isi_change(const IsiStats &reference, const IsiStats &observed);

struct ReplayCounters {
    std::int64_t spikes_processed = 0;
    std::int64_t spikes_delayed = 0;
    std::int64_t cut_spikes = 0;
    double total_added_delay_ms = 0.0;
};

struct ExecutionResult {
    /// Recorded firing times shifted by the delays of the spikes delivered to
    /// each neuron; externally driven neurons (no incoming synapses) shift
    /// with the processing of their own spikes instead. Open-loop trace
    /// replay; shifts never reorder a train.
    std::vector<std::vector<double>> observed_trains;
    /// Per-synapse event service times: when the pump actually processed each
    /// spike of the synapse's train.
    std::vector<std::vector<double>> served_synapse_trains;
    /// Distinct boost-pulse start times per pump (simultaneous events on one
    /// pump share a single physical pulse).
    std::vector<std::vector<double>> pump_pulse_times;
    std::vector<VoltageSchedule> pump_schedules;
    ReplayCounters counters;
    /// max(trace horizon, end of the last boost pulse): delayed service can
    /// stretch execution past the nominal horizon.
    double exec_horizon_ms = 0.0;
    DischargePolicy policy;
    HardwareSpec spec;
};

/// Replays the mapped workload event by event. Cut spikes are serialized
/// through a single shared FIFO bus (t_hop_ms each); pump service follows the
/// discharge policy: `never` serves at arrival, `fixed_interval` postpones
/// arrivals that collide with a discharge window, and `per_spike` discharges
/// after every pulse so that each inter-event gap on a pump stretches by
/// t_recover_ms.
ExecutionResult replay(const Network &net, const SpikeDb &db,
        const MappingMatrix &mapping, const HardwareSpec &spec,
        const DischargePolicy &policy);

/// Canonical merged voltage schedules for every pump of a completed replay.
std::vector<VoltageSchedule> build_pump_schedules(const ExecutionResult &result);

// Dump formats for offline plotting.
void write_schedule_dump(const std::vector<VoltageSchedule> &schedules,
        std::ostream &out);
void write_schedule_dump(const std::vector<VoltageSchedule> &schedules,
        const std::string &path);

} // namespace pumpsim
