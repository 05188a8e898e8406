#include "pumpsim/config_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "pumpsim/trace_io.hpp"

namespace pumpsim {

namespace {

double to_double(const std::string &value, const std::string &key, int line_no)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("config line " + std::to_string(line_no) +
                ": bad numeric value for " + key);
    }
    return out;
}

int to_int(const std::string &value, const std::string &key, int line_no)
{
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("config line " + std::to_string(line_no) +
                ": bad integer value for " + key);
    }
    return out;
}

std::vector<int> to_int_list(const std::string &value, const std::string &key,
        int line_no)
{
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
        out.push_back(to_int(cur, key, line_no));
        cur.clear();
    };
    for (char c : value) {
        if (c == ',') {
            flush();
        } else {
            cur.push_back(c);
        }
    }
    flush();
    return out;
}

void apply_line(ToolConfig &cfg, const std::string &line, int line_no)
{
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(line_no) +
                ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);

    if (key == "crossbar_count") {
        cfg.hw.crossbar_count = to_int(value, key, line_no);
    } else if (key == "crossbar_rows") {
        cfg.hw.crossbar_rows = to_int(value, key, line_no);
    } else if (key == "crossbar_cols") {
        cfg.hw.crossbar_cols = to_int(value, key, line_no);
    } else if (key == "pump_count") {
        cfg.hw.pump_count = to_int(value, key, line_no);
    } else if (key == "placement") {
        cfg.hw.placement = to_int_list(value, key, line_no);
    } else if (key == "v_idle") {
        cfg.hw.v_idle = to_double(value, key, line_no);
    } else if (key == "v_boost") {
        cfg.hw.v_boost = to_double(value, key, line_no);
    } else if (key == "v_discharge") {
        cfg.hw.v_discharge = to_double(value, key, line_no);
    } else if (key == "t_pulse_ms") {
        cfg.hw.t_pulse_ms = to_double(value, key, line_no);
    } else if (key == "t_recover_ms") {
        cfg.hw.t_recover_ms = to_double(value, key, line_no);
    } else if (key == "t_hop_ms") {
        cfg.hw.t_hop_ms = to_double(value, key, line_no);
    } else if (key == "nbti_g0") {
        cfg.nbti.g0 = to_double(value, key, line_no);
    } else if (key == "nbti_m_exp") {
        cfg.nbti.m_exp = to_double(value, key, line_no);
    } else if (key == "nbti_n_exp") {
        cfg.nbti.n_exp = to_double(value, key, line_no);
    } else if (key == "nbti_beta") {
        cfg.nbti.beta = to_double(value, key, line_no);
    } else if (key == "nbti_v_th") {
        cfg.nbti.v_th = to_double(value, key, line_no);
    } else {
        throw ConfigError("config line " + std::to_string(line_no) +
                ": unknown key '" + key + "'");
    }
}

} // namespace

ToolConfig load_config(std::istream &in)
{
    ToolConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        apply_line(cfg, line, line_no);
    }
    return cfg;
}

ToolConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return load_config(in);
}

void apply_config_override(ToolConfig &cfg, const std::string &key_value)
{
    apply_line(cfg, key_value, 0);
}

void save_config(const ToolConfig &cfg, std::ostream &out)
{
    out << "crossbar_count=" << cfg.hw.crossbar_count << '\n';
    out << "crossbar_rows=" << cfg.hw.crossbar_rows << '\n';
    out << "crossbar_cols=" << cfg.hw.crossbar_cols << '\n';
    out << "pump_count=" << cfg.hw.pump_count << '\n';
    out << "placement=";
    for (std::size_t j = 0; j < cfg.hw.placement.size(); ++j) {
        if (j != 0) {
            out << ',';
        }
        out << cfg.hw.placement[j];
    }
    out << '\n';
    out << "v_idle=" << format_double(cfg.hw.v_idle) << '\n';
    out << "v_boost=" << format_double(cfg.hw.v_boost) << '\n';
    out << "v_discharge=" << format_double(cfg.hw.v_discharge) << '\n';
    out << "t_pulse_ms=" << format_double(cfg.hw.t_pulse_ms) << '\n';
    out << "t_recover_ms=" << format_double(cfg.hw.t_recover_ms) << '\n';
    out << "t_hop_ms=" << format_double(cfg.hw.t_hop_ms) << '\n';
    out << "nbti_g0=" << format_double(cfg.nbti.g0) << '\n';
    out << "nbti_m_exp=" << format_double(cfg.nbti.m_exp) << '\n';
    out << "nbti_n_exp=" << format_double(cfg.nbti.n_exp) << '\n';
    out << "nbti_beta=" << format_double(cfg.nbti.beta) << '\n';
    out << "nbti_v_th=" << format_double(cfg.nbti.v_th) << '\n';
}

void save_config(const ToolConfig &cfg, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    save_config(cfg, out);
}

} // namespace pumpsim
