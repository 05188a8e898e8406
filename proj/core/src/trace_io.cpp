#include "pumpsim/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pumpsim {

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string &what)
{
    throw std::runtime_error("trace parse error at line " +
            std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string &text, int line_no, const char *field)
{
    double value = 0.0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        parse_fail(line_no, std::string("bad ") + field + " '" + text + "'");
    }
    return value;
}

int parse_int(const std::string &text, int line_no, const char *field)
{
    int value = 0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        parse_fail(line_no, std::string("bad ") + field + " '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string format_double(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

TraceData load_trace(std::istream &in)
{
    TraceData data;
    bool have_horizon = false;
    bool have_neurons = false;
    bool seen_spike = false;
    int last_spike_neuron = -1;
    double last_spike_time = -1.0;
    int line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line.rfind("T_MS=", 0) == 0) {
            if (have_horizon) {
                parse_fail(line_no, "duplicate T_MS header");
            }
            data.spikes.horizon_ms = parse_double(line.substr(5), line_no, "T_MS");
            if (data.spikes.horizon_ms <= 0.0) {
                parse_fail(line_no, "T_MS must be positive");
            }
            have_horizon = true;
            continue;
        }
        if (line.rfind("NEURONS=", 0) == 0) {
            if (have_neurons) {
                parse_fail(line_no, "duplicate NEURONS header");
            }
            data.network.neuron_count = parse_int(line.substr(8), line_no, "NEURONS");
            if (data.network.neuron_count <= 0) {
                parse_fail(line_no, "NEURONS must be positive");
            }
            have_neurons = true;
            data.spikes.trains.assign(data.network.neuron_count, {});
            continue;
        }
        if (line.rfind("SYN,", 0) == 0) {
            if (!have_horizon || !have_neurons) {
                parse_fail(line_no, "SYN record before T_MS/NEURONS headers");
            }
            if (seen_spike) {
                parse_fail(line_no, "SYN record after the spike section");
            }
            auto fields = split(line, ',');
            if (fields.size() != 5) {
                parse_fail(line_no, "SYN expects id,pre,post,weight");
            }
            Synapse s;
            s.id = parse_int(fields[1], line_no, "synapse id");
            s.pre = parse_int(fields[2], line_no, "pre neuron");
            s.post = parse_int(fields[3], line_no, "post neuron");
            s.weight = parse_double(fields[4], line_no, "weight");
            if (s.id != static_cast<int>(data.network.synapses.size())) {
                parse_fail(line_no, "synapse ids must be dense and ascending");
            }
            data.network.synapses.push_back(s);
            continue;
        }
        if (line.rfind("SPK,", 0) == 0) {
            if (!have_horizon || !have_neurons) {
                parse_fail(line_no, "SPK record before T_MS/NEURONS headers");
            }
            auto fields = split(line, ',');
            if (fields.size() != 3) {
                parse_fail(line_no, "SPK expects neuron_id,time_ms");
            }
            const int neuron = parse_int(fields[1], line_no, "neuron id");
            const double t = parse_double(fields[2], line_no, "spike time");
            if (neuron < 0 || neuron >= data.network.neuron_count) {
                parse_fail(line_no, "neuron id out of range");
            }
            if (t < 0.0) {
                parse_fail(line_no, "negative spike time");
            }
            if (t > data.spikes.horizon_ms) {
                parse_fail(line_no, "time exceeds horizon");
            }
            if (neuron < last_spike_neuron) {
                parse_fail(line_no, "spike lines must be sorted by neuron id");
            }
            if (neuron == last_spike_neuron && t <= last_spike_time) {
                parse_fail(line_no,
                        "spike times must be strictly increasing per neuron");
            }
            data.spikes.trains[neuron].push_back(t);
            last_spike_neuron = neuron;
            last_spike_time = t;
            seen_spike = true;
            continue;
        }
        parse_fail(line_no, "unrecognized record '" + line + "'");
    }

    if (!have_horizon) {
        throw std::runtime_error("trace parse error: missing T_MS header");
    }
    if (!have_neurons) {
        throw std::runtime_error("trace parse error: missing NEURONS header");
    }
    try {
        data.network.validate();
        data.spikes.validate();
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(std::string("trace invariant violation: ") +
                e.what());
    }
    return data;
}

TraceData load_trace(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trace file '" + path + "'");
    }
    return load_trace(in);
}

void write_trace(const Network &net, const SpikeDb &db, std::ostream &out)
{
    net.validate();
    db.validate();
    if (static_cast<int>(db.trains.size()) != net.neuron_count) {
        throw std::invalid_argument("write_trace: trains/neuron count mismatch");
    }
    out << "T_MS=" << format_double(db.horizon_ms) << '\n';
    out << "NEURONS=" << net.neuron_count << '\n';
    for (const Synapse &s : net.synapses) {
        out << "SYN," << s.id << ',' << s.pre << ',' << s.post << ','
            << format_double(s.weight) << '\n';
    }
    for (std::size_t n = 0; n < db.trains.size(); ++n) {
        for (double t : db.trains[n]) {
            out << "SPK," << n << ',' << format_double(t) << '\n';
        }
    }
    if (!out) {
        throw std::runtime_error("write_trace: stream failure");
    }
}

void write_trace(const Network &net, const SpikeDb &db, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_trace(net, db, out);
}

} // namespace pumpsim
