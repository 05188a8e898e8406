#include "pumpsim/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pumpsim {

double defects(double volts, double dt_ms, const NbtiParams &p)
{
    if (dt_ms < 0.0) {
        throw std::invalid_argument("defects: negative duration");
    }
    const double overdrive = volts - p.v_th;
    if (overdrive <= 0.0 || dt_ms == 0.0) {
        return 0.0; // sub-threshold voltage generates no defects
    }
    return p.g0 * std::pow(overdrive, p.m_exp) * std::pow(dt_ms, p.n_exp);
}

double schedule_aging(const VoltageSchedule &sched, const NbtiParams &p)
{
    double aging = 0.0;
    for (const auto &seg : sched.segments) {
        aging += defects(seg.volts, seg.end_ms - seg.start_ms, p);
    }
    return aging;
}

double synapse_aging(const std::vector<double> &train, double horizon_ms,
        const DischargePolicy &policy, const HardwareSpec &spec,
        const NbtiParams &p)
{
    // Service times this train alone would see on its pump, mirroring the
    // engine's policy semantics for a single-synapse workload.
    std::vector<double> pulses;
    pulses.reserve(train.size());
    switch (policy.kind) {
    case DischargePolicy::Kind::never:
        pulses = train;
        break;
    case DischargePolicy::Kind::per_spike:
        for (std::size_t j = 0; j < train.size(); ++j) {
            pulses.push_back(train[j] +
                    static_cast<double>(j) * spec.t_recover_ms);
        }
        break;
    case DischargePolicy::Kind::fixed_interval:
        for (double t : train) {
            const double served = fixed_interval_serve(t, policy.interval_ms,
                    spec.t_recover_ms);
            if (pulses.empty() || pulses.back() != served) {
                pulses.push_back(served); // window collisions share a pulse
            }
        }
        break;
    }
    double horizon = horizon_ms;
    if (!pulses.empty()) {
        horizon = std::max(horizon, pulses.back() + spec.t_pulse_ms);
    }
    const VoltageSchedule sched =
            build_schedule_for_pulses(pulses, policy, spec, horizon);
    return schedule_aging(sched, p);
}

std::vector<double> all_synapse_aging(const SynapseTrains &trains,
        double horizon_ms, const DischargePolicy &policy,
        const HardwareSpec &spec, const NbtiParams &p)
{
    std::vector<double> aging;
    aging.reserve(trains.trains.size());
    for (const auto &train : trains.trains) {
        aging.push_back(synapse_aging(train, horizon_ms, policy, spec, p));
    }
    return aging;
}

std::vector<double> pump_aging(const std::vector<double> &per_synapse,
        const MappingMatrix &mapping, const HardwareSpec &spec)
{
    if (per_synapse.size() != mapping.crossbar_of_synapse.size()) {
        throw std::invalid_argument("pump_aging: aging/mapping size mismatch");
    }
    const std::vector<int> pump_of = synapse_to_pump(mapping, spec);
    std::vector<double> per_pump(spec.pump_count, 0.0);
    for (std::size_t s = 0; s < per_synapse.size(); ++s) {
        per_pump[pump_of[s]] += per_synapse[s];
    }
    return per_pump;
}

double reliability_at(double aging, double beta)
{
    if (aging < 0.0) {
        throw std::invalid_argument("reliability_at: negative aging");
    }
    return std::exp(-std::pow(aging, beta));
}

double mttf_proxy(double aging_rate_per_ms)
{
    if (aging_rate_per_ms < 0.0) {
        throw std::invalid_argument("mttf_proxy: negative aging rate");
    }
    if (aging_rate_per_ms == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / aging_rate_per_ms;
}

AgingReport build_aging_report(const SynapseTrains &trains, double horizon_ms,
        const MappingMatrix &mapping, const HardwareSpec &spec,
        const NbtiParams &p, const DischargePolicy &policy,
        const std::vector<VoltageSchedule> &pump_schedules)
{
    AgingReport report;
    report.synapse_aging_detail =
            all_synapse_aging(trains, horizon_ms, policy, spec, p);
    report.pump_aging_sum = pump_aging(report.synapse_aging_detail, mapping, spec);
    report.pump_aging_schedule.reserve(pump_schedules.size());
    for (const auto &sched : pump_schedules) {
        report.pump_aging_schedule.push_back(schedule_aging(sched, p));
    }
    report.pump_reliability.reserve(report.pump_aging_sum.size());
    report.pump_mttf_ms.reserve(report.pump_aging_sum.size());
    for (double aging : report.pump_aging_sum) {
        report.pump_reliability.push_back(reliability_at(aging, p.beta));
        report.pump_mttf_ms.push_back(mttf_proxy(aging / horizon_ms));
    }
    return report;
}

} // namespace pumpsim
