#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pumpsim/hardware.hpp"

namespace pumpsim {

/// Raised for unreadable or malformed config files; callers treat it as a
/// usage/config error rather than a runtime failure.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Key-value config file, one `key=value` per line, '#' comments. Unknown keys
// are rejected. Missing keys keep their defaults. `placement` is a
// comma-separated pump index per crossbar.
//
//   crossbar_count=6
//   crossbar_rows=128
//   crossbar_cols=128
//   pump_count=2
//   placement=0,0,0,1,1,1
//   v_idle=1.8
//   v_boost=3
//   v_discharge=1.2
//   t_pulse_ms=0.1
//   t_recover_ms=1.5
//   t_hop_ms=0.01
//   nbti_g0=1
//   nbti_m_exp=2
//   nbti_n_exp=1
//   nbti_beta=1
//   nbti_v_th=0.45

struct ToolConfig {
    HardwareSpec hw;
    NbtiParams nbti;
};

ToolConfig load_config(std::istream &in);
ToolConfig load_config(const std::string &path);

/// Applies one `key=value` assignment in config-file syntax; used for CLI
/// overrides, which take precedence over file values.
void apply_config_override(ToolConfig &cfg, const std::string &key_value);

void save_config(const ToolConfig &cfg, std::ostream &out);
void save_config(const ToolConfig &cfg, const std::string &path);

} // namespace pumpsim
