#pragma once

#include <vector>

#include "pumpsim/hardware.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/schedule.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

/// Generated defects for one constant-voltage interval:
/// g0 * (v - v_th)^m_exp * dt^n_exp, zero at or below v_th or for dt = 0.
double defects(double volts, double dt_ms, const NbtiParams &p);

/// Aging of a full schedule: sum of defects over its segments.
double schedule_aging(const VoltageSchedule &sched, const NbtiParams &p);

/// Aging a single synapse's spike train induces on its pump: the voltage
/// schedule this train alone would produce under the policy, summed through
/// the defect model. Independent of the mapping, so per-pump totals can be
/// assembled from it.
double synapse_aging(const std::vector<double> &train, double horizon_ms,
        const DischargePolicy &policy, const HardwareSpec &spec,
        const NbtiParams &p);

std::vector<double> all_synapse_aging(const SynapseTrains &trains,
        double horizon_ms, const DischargePolicy &policy,
        const HardwareSpec &spec, const NbtiParams &p);

/// Per-pump aging: sum of per-synapse aging over the synapses each pump
/// powers (composition of the synapse-to-crossbar and crossbar-to-pump
/// mappings). Conserves the total across pumps.
std::vector<double> pump_aging(const std::vector<double> &per_synapse,
        const MappingMatrix &mapping, const HardwareSpec &spec);

/// R = exp(-A^beta), in (0, 1], decreasing in A.
double reliability_at(double aging, double beta);

/// Time for accumulated aging to reach the R = e^-1 knee under sustained
/// workload repetition: 1 / aging_rate. Infinite for a zero rate.
double mttf_proxy(double aging_rate_per_ms);

struct AgingReport {
    std::vector<double> synapse_aging_detail;  // per synapse
    std::vector<double> pump_aging_sum;        // per-synapse attribution summed per pump
    std::vector<double> pump_aging_schedule;   // aging of the pump's merged schedule
    std::vector<double> pump_reliability;      // R at pump_aging_sum
    std::vector<double> pump_mttf_ms;          // horizon / pump_aging_sum
};

/// Assembles both aging views for one evaluated workload: the per-synapse
/// attribution (canonical) and the merged-schedule aggregate (counts shared
/// idle time once).
AgingReport build_aging_report(const SynapseTrains &trains, double horizon_ms,
        const MappingMatrix &mapping, const HardwareSpec &spec,
        const NbtiParams &p, const DischargePolicy &policy,
        const std::vector<VoltageSchedule> &pump_schedules);

} // namespace pumpsim
