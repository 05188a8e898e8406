#include "pumpsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pumpsim {

std::vector<std::string> schedule_violations(const VoltageSchedule &sched)
{
    std::vector<std::string> v;
    if (sched.horizon_ms <= 0.0) {
        v.push_back("horizon must be positive");
        return v;
    }
    if (sched.segments.empty()) {
        v.push_back("schedule has no segments");
        return v;
    }
    if (sched.segments.front().start_ms != 0.0) {
        v.push_back("first segment must start at 0");
    }
    if (sched.segments.back().end_ms != sched.horizon_ms) {
        v.push_back("last segment must end at the horizon");
    }
    for (std::size_t i = 0; i < sched.segments.size(); ++i) {
        const auto &seg = sched.segments[i];
        if (!(seg.start_ms < seg.end_ms)) {
            v.push_back("segment " + std::to_string(i) + " has no extent");
        }
        if (i > 0) {
            const auto &prev = sched.segments[i - 1];
            if (prev.end_ms != seg.start_ms) {
                v.push_back("gap or overlap before segment " + std::to_string(i));
            }
            if (prev.volts == seg.volts) {
                v.push_back("segments " + std::to_string(i - 1) + " and " +
                        std::to_string(i) + " are not merged");
            }
        }
    }
    return v;
}

ScheduleBuilder::ScheduleBuilder(double horizon_ms) : horizon_ms_(horizon_ms)
{
    if (horizon_ms <= 0.0) {
        throw std::invalid_argument("schedule horizon must be positive");
    }
}

void ScheduleBuilder::base_segment(double end_ms, double volts)
{
    end_ms = std::min(end_ms, horizon_ms_);
    if (end_ms <= cursor_) {
        return;
    }
    base_.push_back({cursor_, end_ms, volts});
    cursor_ = end_ms;
}

void ScheduleBuilder::overlay_pulse(double start_ms, double end_ms, double volts)
{
    start_ms = std::max(start_ms, 0.0);
    end_ms = std::min(end_ms, horizon_ms_);
    if (end_ms <= start_ms) {
        return;
    }
    pulses_.push_back({start_ms, end_ms, volts});
}

VoltageSchedule ScheduleBuilder::finish()
{
    if (cursor_ != horizon_ms_) {
        throw std::logic_error("schedule base layer does not tile the horizon");
    }

    std::sort(pulses_.begin(), pulses_.end(),
            [](const VoltageSegment &a, const VoltageSegment &b) {
                return a.start_ms < b.start_ms;
            });
    // merge overlapping/adjacent pulses; all pulses share one voltage level
    std::vector<VoltageSegment> merged;
    for (const auto &p : pulses_) {
        if (!merged.empty() && p.start_ms <= merged.back().end_ms) {
            merged.back().end_ms = std::max(merged.back().end_ms, p.end_ms);
        } else {
            merged.push_back(p);
        }
    }

    VoltageSchedule sched;
    sched.horizon_ms = horizon_ms_;
    std::size_t pulse_idx = 0;
    auto emit = [&](double start, double end, double volts) {
        if (end <= start) {
            return;
        }
        if (!sched.segments.empty() && sched.segments.back().volts == volts) {
            sched.segments.back().end_ms = end;
        } else {
            sched.segments.push_back({start, end, volts});
        }
    };
    for (const auto &seg : base_) {
        double pos = seg.start_ms;
        while (pos < seg.end_ms) {
            // skip pulses that end at or before pos
            while (pulse_idx < merged.size() && merged[pulse_idx].end_ms <= pos) {
                ++pulse_idx;
            }
            if (pulse_idx == merged.size() ||
                    merged[pulse_idx].start_ms >= seg.end_ms) {
                emit(pos, seg.end_ms, seg.volts);
                pos = seg.end_ms;
                break;
            }
            const auto &p = merged[pulse_idx];
            if (p.start_ms > pos) {
                emit(pos, p.start_ms, seg.volts);
                pos = p.start_ms;
            }
            const double pulse_end = std::min(p.end_ms, seg.end_ms);
            emit(pos, pulse_end, p.volts);
            pos = pulse_end;
        }
    }
    return sched;
}

double fixed_interval_serve(double arrival_ms, double interval_ms,
        double recover_ms)
{
    if (recover_ms <= 0.0) {
        return arrival_ms;
    }
    double t = arrival_ms;
    while (true) {
        const auto m = static_cast<long long>(std::floor(t / interval_ms));
        if (m < 1) {
            return t;
        }
        const double window_start = static_cast<double>(m) * interval_ms;
        const double window_end = window_start + recover_ms;
        if (t >= window_start && t < window_end) {
            t = window_end; // postponed; may land in a later window
        } else {
            return t;
        }
    }
}

VoltageSchedule build_schedule_for_pulses(const std::vector<double> &pulse_times,
        const DischargePolicy &policy, const HardwareSpec &spec,
        double horizon_ms)
{
    ScheduleBuilder builder(horizon_ms);
    switch (policy.kind) {
    case DischargePolicy::Kind::never:
        builder.base_segment(horizon_ms, spec.v_idle);
        break;
    case DischargePolicy::Kind::per_spike:
        if (pulse_times.empty()) {
            builder.base_segment(horizon_ms, spec.v_idle);
            break;
        }
        builder.base_segment(pulse_times.front(), spec.v_idle);
        for (std::size_t g = 0; g < pulse_times.size(); ++g) {
            const double pulse_end = pulse_times[g] + spec.t_pulse_ms;
            builder.base_segment(pulse_end, spec.v_idle); // overlaid by boost
            if (g + 1 < pulse_times.size()) {
                const double next = pulse_times[g + 1];
                builder.base_segment(next - spec.t_recover_ms, spec.v_discharge);
                builder.base_segment(next, spec.v_idle); // recovery ramp
            } else {
                builder.base_segment(horizon_ms, spec.v_discharge);
            }
        }
        break;
    case DischargePolicy::Kind::fixed_interval: {
        for (double w = policy.interval_ms; w < horizon_ms;
                w += policy.interval_ms) {
            builder.base_segment(w, spec.v_idle);
            builder.base_segment(w + spec.t_recover_ms, spec.v_discharge);
        }
        builder.base_segment(horizon_ms, spec.v_idle);
        break;
    }
    }
    for (double p : pulse_times) {
        builder.overlay_pulse(p, p + spec.t_pulse_ms, spec.v_boost);
    }
    return builder.finish();
}

} // namespace pumpsim
