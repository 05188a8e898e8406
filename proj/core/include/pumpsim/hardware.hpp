#pragma once

#include <string>
#include <vector>

namespace pumpsim {

struct MappingMatrix; // mapping.hpp

/// Crossbar/charge-pump platform description. A crossbar stores one synapse
/// per cell; distinct pre-neurons occupy rows and distinct post-neurons
/// occupy columns. Each crossbar is powered by exactly one charge pump.
struct HardwareSpec {
    int crossbar_count = 6;
    int crossbar_rows = 128;
    int crossbar_cols = 128;
    int pump_count = 2;
    std::vector<int> placement = {0, 0, 0, 1, 1, 1}; // crossbar -> pump

    double v_idle = 1.8;      // standby level, volts
    double v_boost = 3.0;     // spike-processing level, volts
    double v_discharge = 1.2; // forced-discharge level, volts

    double t_pulse_ms = 0.1;   // boost pulse per processed spike event
    double t_recover_ms = 1.5; // discharge-to-idle recovery delay
    double t_hop_ms = 0.01;    // shared-bus service time per cut spike
};

/// NBTI generated-defect model constants. Defects for one constant-voltage
/// segment are g0 * (V - v_th)^m_exp * dt^n_exp, clamped to zero at or below
/// v_th. Values are uncalibrated placeholders; only ratios and orderings of
/// aging results are meaningful.
struct NbtiParams {
    double g0 = 1.0;
    double m_exp = 2.0;
    double n_exp = 1.0;
    double beta = 1.0;
    double v_th = 0.45;
};

struct DischargePolicy {
    enum class Kind { never, per_spike, fixed_interval };

    Kind kind = Kind::never;
    double interval_ms = 0.0; // fixed_interval only

    static DischargePolicy never() { return {Kind::never, 0.0}; }
    static DischargePolicy per_spike() { return {Kind::per_spike, 0.0}; }
    static DischargePolicy fixed_interval(double ms)
    {
        return {Kind::fixed_interval, ms};
    }

    bool operator==(const DischargePolicy &) const = default;

    /// "never" | "perspike" | "interval:<ms>"
    std::string to_string() const;
    static DischargePolicy parse(const std::string &text);
};

/// All invariant violations of the spec, empty when valid.
std::vector<std::string> spec_violations(const HardwareSpec &spec);
/// Throws std::invalid_argument with an itemized report when invalid.
void validate_spec(const HardwareSpec &spec);

std::vector<std::string> nbti_violations(const NbtiParams &p,
        const HardwareSpec &spec);
void validate_nbti(const NbtiParams &p, const HardwareSpec &spec);

void validate_policy(const DischargePolicy &policy, const HardwareSpec &spec);

/// Composes the synapse-to-crossbar mapping with the crossbar-to-pump
/// placement; result[s] is the pump powering synapse s.
std::vector<int> synapse_to_pump(const MappingMatrix &mapping,
        const HardwareSpec &spec);

} // namespace pumpsim
