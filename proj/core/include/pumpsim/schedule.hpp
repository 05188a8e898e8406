#pragma once

#include <string>
#include <vector>

#include "pumpsim/hardware.hpp"

namespace pumpsim {

struct VoltageSegment {
    double start_ms = 0.0;
    double end_ms = 0.0;
    double volts = 0.0;
};

/// Piecewise-constant pump voltage over [0, horizon_ms]: contiguous,
/// non-overlapping segments whose union is the full horizon, adjacent
/// segments differing in voltage. Only the three operating levels appear;
/// recovery ramps are modeled at v_idle.
struct VoltageSchedule {
    double horizon_ms = 0.0;
    std::vector<VoltageSegment> segments;
};

/// Well-formedness violations (coverage, ordering, canonical merging);
/// empty when the schedule is sound.
std::vector<std::string> schedule_violations(const VoltageSchedule &sched);

/// Assembles a canonical schedule from a base layer (appended left to right,
/// must tile [0, horizon]) plus boost pulses that override whatever they
/// cover.
class ScheduleBuilder {
public:
    explicit ScheduleBuilder(double horizon_ms);

    void base_segment(double end_ms, double volts); // extends from the cursor
    void overlay_pulse(double start_ms, double end_ms, double volts);

    VoltageSchedule finish();

private:
    double horizon_ms_;
    double cursor_ = 0.0;
    std::vector<VoltageSegment> base_;
    std::vector<VoltageSegment> pulses_;
};

/// Service completion time for an arrival under a fixed-interval discharge:
/// arrivals inside a discharge/recovery window [m*interval, m*interval +
/// recover) are postponed to the window end.
double fixed_interval_serve(double arrival_ms, double interval_ms,
        double recover_ms);

/// Pump voltage schedule induced by boost pulses at `pulse_times` (sorted,
/// distinct) under a discharge policy. Pulses override the base layer; the
/// per-spike policy drops to v_discharge between pulses and recovers at
/// v_idle for t_recover_ms before each next pulse.
VoltageSchedule build_schedule_for_pulses(const std::vector<double> &pulse_times,
        const DischargePolicy &policy, const HardwareSpec &spec,
        double horizon_ms);

} // namespace pumpsim
