#include "pumpsim/hardware.hpp"

#include <charconv>
#include <stdexcept>

#include "pumpsim/mapping.hpp"

namespace pumpsim {

std::string DischargePolicy::to_string() const
{
    switch (kind) {
    case Kind::never:
        return "never";
    case Kind::per_spike:
        return "perspike";
    case Kind::fixed_interval: {
        char buf[48] = "interval:";
        auto [ptr, ec] = std::to_chars(buf + 9, buf + sizeof(buf), interval_ms);
        (void)ec;
        return std::string(buf, ptr);
    }
    }
    return "never";
}

DischargePolicy DischargePolicy::parse(const std::string &text)
{
    if (text == "never") {
        return never();
    }
    if (text == "perspike") {
        return per_spike();
    }
    if (text.rfind("interval:", 0) == 0) {
        const std::string num = text.substr(9);
        double ms = 0.0;
        const char *begin = num.data();
        const char *end = begin + num.size();
        auto [ptr, ec] = std::from_chars(begin, end, ms);
        if (ec == std::errc{} && ptr == end && ms > 0.0) {
            return fixed_interval(ms);
        }
    }
    throw std::invalid_argument("unknown discharge policy '" + text +
            "', expected never|perspike|interval:<ms>");
}

std::vector<std::string> spec_violations(const HardwareSpec &spec)
{
    std::vector<std::string> v;
    if (spec.crossbar_count <= 0) {
        v.push_back("crossbar_count must be positive");
    }
    if (spec.crossbar_rows <= 0 || spec.crossbar_cols <= 0) {
        v.push_back("crossbar geometry must be positive");
    }
    if (spec.pump_count <= 0) {
        v.push_back("pump_count must be positive");
    }
    if (static_cast<int>(spec.placement.size()) != spec.crossbar_count) {
        v.push_back("placement must list exactly one pump per crossbar (got " +
                std::to_string(spec.placement.size()) + " entries for " +
                std::to_string(spec.crossbar_count) + " crossbars)");
    } else {
        for (int j = 0; j < spec.crossbar_count; ++j) {
            if (spec.placement[j] < 0 || spec.placement[j] >= spec.pump_count) {
                v.push_back("crossbar " + std::to_string(j) +
                        " maps to invalid pump " +
                        std::to_string(spec.placement[j]));
            }
        }
    }
    if (!(spec.v_discharge < spec.v_idle && spec.v_idle < spec.v_boost)) {
        v.push_back("voltage levels must satisfy v_discharge < v_idle < v_boost");
    }
    if (spec.t_pulse_ms <= 0.0) {
        v.push_back("t_pulse_ms must be positive");
    }
    if (spec.t_recover_ms < 0.0 || spec.t_hop_ms < 0.0) {
        v.push_back("timing constants must be nonnegative");
    }
    return v;
}

namespace {

[[noreturn]] void throw_itemized(const char *label,
        const std::vector<std::string> &violations)
{
    std::string msg = label;
    for (const std::string &item : violations) {
        msg += "\n  - " + item;
    }
    throw std::invalid_argument(msg);
}

} // namespace

void validate_spec(const HardwareSpec &spec)
{
    const auto violations = spec_violations(spec);
    if (!violations.empty()) {
        throw_itemized("invalid hardware spec:", violations);
    }
}

std::vector<std::string> nbti_violations(const NbtiParams &p,
        const HardwareSpec &spec)
{
    std::vector<std::string> v;
    if (p.g0 <= 0.0) {
        v.push_back("g0 must be positive");
    }
    if (p.m_exp <= 0.0) {
        v.push_back("m_exp must be positive");
    }
    if (p.n_exp <= 0.0 || p.n_exp > 1.0) {
        v.push_back("n_exp must be in (0, 1]");
    }
    if (p.beta <= 0.0) {
        v.push_back("beta must be positive");
    }
    if (p.v_th < 0.0) {
        v.push_back("v_th must be nonnegative");
    }
    if (p.v_th >= spec.v_discharge) {
        v.push_back("v_th must stay below v_discharge so every operating "
                "level is stress-positive");
    }
    return v;
}

void validate_nbti(const NbtiParams &p, const HardwareSpec &spec)
{
    const auto violations = nbti_violations(p, spec);
    if (!violations.empty()) {
        throw_itemized("invalid NBTI parameters:", violations);
    }
}

void validate_policy(const DischargePolicy &policy, const HardwareSpec &spec)
{
    if (policy.kind == DischargePolicy::Kind::fixed_interval) {
        if (policy.interval_ms <= 0.0) {
            throw std::invalid_argument("discharge interval must be positive");
        }
        if (policy.interval_ms <= spec.t_recover_ms) {
            throw std::invalid_argument("discharge interval must exceed "
                    "t_recover_ms, otherwise the pump never finishes recovering");
        }
    }
}

std::vector<int> synapse_to_pump(const MappingMatrix &mapping,
        const HardwareSpec &spec)
{
    std::vector<int> pumps;
    pumps.reserve(mapping.crossbar_of_synapse.size());
    for (int crossbar : mapping.crossbar_of_synapse) {
        if (crossbar < 0 || crossbar >= spec.crossbar_count) {
            throw std::invalid_argument(
                    "synapse_to_pump: crossbar index out of range");
        }
        pumps.push_back(spec.placement[crossbar]);
    }
    return pumps;
}

} // namespace pumpsim
