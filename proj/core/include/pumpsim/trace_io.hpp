#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "pumpsim/network.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

// Trace file format (text, UTF-8):
//   T_MS=<real>
//   NEURONS=<int>
//   SYN,<id>,<pre>,<post>,<weight>     one line per synapse, ascending id
//   SPK,<neuron_id>,<time_ms>          sorted by (neuron_id, time)
// Lines starting with '#' are comments. The writer emits the sections in
// exactly this order, so write -> load -> write is byte identical.

struct TraceData {
    Network network;
    SpikeDb spikes;
};

TraceData load_trace(std::istream &in);
TraceData load_trace(const std::string &path);

void write_trace(const Network &net, const SpikeDb &db, std::ostream &out);
void write_trace(const Network &net, const SpikeDb &db, const std::string &path);

/// Shortest decimal representation that parses back to the same double.
/// Used by every text emitter so round-trips are lossless.
std::string format_double(double value);

} // namespace pumpsim
