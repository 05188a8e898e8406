#include "pumpsim/mapping.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "rng.hpp"

namespace pumpsim {

namespace {

// Incremental row/column occupancy per crossbar. A synapse lives in the
// crossbar of its post-neuron, occupying that crossbar's row for its pre
// and column for its post, so moving a neuron relocates exactly its
// incoming synapses.
class CapacityTracker {
public:
    CapacityTracker(const Network &net, const HardwareSpec &spec)
            : spec_(spec), rows_(spec.crossbar_count), cols_(spec.crossbar_count),
              distinct_rows_(spec.crossbar_count, 0),
              distinct_cols_(spec.crossbar_count, 0),
              in_edges_(net.neuron_count)
    {
        for (const Synapse &s : net.synapses) {
            in_edges_[s.post].push_back(s.pre);
        }
    }

    void place(int neuron, int crossbar)
    {
        for (int pre : in_edges_[neuron]) {
            if (++rows_[crossbar][pre] == 1) {
                ++distinct_rows_[crossbar];
            }
        }
        if (!in_edges_[neuron].empty()) {
            const int count = static_cast<int>(in_edges_[neuron].size());
            auto [it, fresh] = cols_[crossbar].try_emplace(neuron, 0);
            if (it->second == 0) {
                ++distinct_cols_[crossbar];
            }
            it->second += count;
            (void)fresh;
        }
    }

    void remove(int neuron, int crossbar)
    {
        for (int pre : in_edges_[neuron]) {
            if (--rows_[crossbar][pre] == 0) {
                --distinct_rows_[crossbar];
            }
        }
        if (!in_edges_[neuron].empty()) {
            auto it = cols_[crossbar].find(neuron);
            it->second -= static_cast<int>(in_edges_[neuron].size());
            if (it->second == 0) {
                --distinct_cols_[crossbar];
            }
        }
    }

    bool fits(int crossbar) const
    {
        return distinct_rows_[crossbar] <= spec_.crossbar_rows &&
                distinct_cols_[crossbar] <= spec_.crossbar_cols;
    }

    int overflow(int crossbar) const
    {
        return std::max(0, distinct_rows_[crossbar] - spec_.crossbar_rows) +
                std::max(0, distinct_cols_[crossbar] - spec_.crossbar_cols);
    }

    /// Would the crossbar still fit after gaining this neuron?
    bool accepts(int neuron, int crossbar) const
    {
        if (in_edges_[neuron].empty()) {
            return fits(crossbar);
        }
        int new_rows = distinct_rows_[crossbar];
        std::set<int> seen;
        const auto &rows = rows_[crossbar];
        for (int pre : in_edges_[neuron]) {
            if (seen.insert(pre).second) {
                auto it = rows.find(pre);
                if (it == rows.end() || it->second == 0) {
                    ++new_rows;
                }
            }
        }
        int new_cols = distinct_cols_[crossbar];
        auto it = cols_[crossbar].find(neuron);
        if (it == cols_[crossbar].end() || it->second == 0) {
            ++new_cols;
        }
        return new_rows <= spec_.crossbar_rows && new_cols <= spec_.crossbar_cols;
    }

private:
    const HardwareSpec &spec_;
    std::vector<std::unordered_map<int, int>> rows_;
    std::vector<std::unordered_map<int, int>> cols_;
    std::vector<int> distinct_rows_;
    std::vector<int> distinct_cols_;
    std::vector<std::vector<int>> in_edges_;
};

void check_inputs(const Network &net, const HardwareSpec &spec)
{
    net.validate();
    validate_spec(spec);
}

std::vector<std::int64_t> spike_counts(const Network &net, const SpikeDb &db)
{
    if (static_cast<int>(db.trains.size()) != net.neuron_count) {
        throw std::invalid_argument("mapping: spike trains do not match network");
    }
    std::vector<std::int64_t> counts(net.neuron_count);
    for (int n = 0; n < net.neuron_count; ++n) {
        counts[n] = static_cast<std::int64_t>(db.trains[n].size());
    }
    return counts;
}

} // namespace

std::vector<std::string> partition_violations(const NeuronPartition &partition,
        const Network &net, const HardwareSpec &spec)
{
    std::vector<std::string> v;
    if (static_cast<int>(partition.crossbar_of.size()) != net.neuron_count) {
        v.push_back("partition must assign every neuron exactly once");
        return v;
    }
    for (int n = 0; n < net.neuron_count; ++n) {
        const int j = partition.crossbar_of[n];
        if (j < 0 || j >= spec.crossbar_count) {
            v.push_back("neuron " + std::to_string(n) +
                    " assigned to invalid crossbar " + std::to_string(j));
            return v;
        }
    }
    std::vector<std::set<int>> rows(spec.crossbar_count);
    std::vector<std::set<int>> cols(spec.crossbar_count);
    for (const Synapse &s : net.synapses) {
        const int j = partition.crossbar_of[s.post];
        rows[j].insert(s.pre);
        cols[j].insert(s.post);
    }
    for (int j = 0; j < spec.crossbar_count; ++j) {
        if (static_cast<int>(rows[j].size()) > spec.crossbar_rows) {
            v.push_back("crossbar " + std::to_string(j) + " needs " +
                    std::to_string(rows[j].size()) + " rows, has " +
                    std::to_string(spec.crossbar_rows));
        }
        if (static_cast<int>(cols[j].size()) > spec.crossbar_cols) {
            v.push_back("crossbar " + std::to_string(j) + " needs " +
                    std::to_string(cols[j].size()) + " columns, has " +
                    std::to_string(spec.crossbar_cols));
        }
    }
    return v;
}

MappingMatrix derive_mapping(const NeuronPartition &partition,
        const Network &net, const HardwareSpec &spec)
{
    check_inputs(net, spec);
    const auto violations = partition_violations(partition, net, spec);
    if (!violations.empty()) {
        std::string msg = "derive_mapping: capacity violation:";
        for (const auto &item : violations) {
            msg += "\n  - " + item;
        }
        throw std::invalid_argument(msg);
    }
    MappingMatrix m;
    m.partition = partition;
    m.crossbar_of_synapse.reserve(net.synapses.size());
    for (const Synapse &s : net.synapses) {
        m.crossbar_of_synapse.push_back(partition.crossbar_of[s.post]);
    }
    return m;
}

std::int64_t cut_spike_count(const NeuronPartition &partition,
        const Network &net, const SpikeDb &db)
{
    const auto counts = spike_counts(net, db);
    if (static_cast<int>(partition.crossbar_of.size()) != net.neuron_count) {
        throw std::invalid_argument("cut_spike_count: partition/network mismatch");
    }
    std::int64_t cut = 0;
    for (const Synapse &s : net.synapses) {
        if (partition.crossbar_of[s.pre] != partition.crossbar_of[s.post]) {
            cut += counts[s.pre];
        }
    }
    return cut;
}

std::vector<std::int64_t> neuron_activation_weights(const Network &net,
        const SpikeDb &db)
{
    const auto counts = spike_counts(net, db);
    std::vector<std::int64_t> weights(net.neuron_count, 0);
    for (const Synapse &s : net.synapses) {
        weights[s.post] += counts[s.pre];
    }
    return weights;
}

NeuronPartition map_round_robin(const Network &net, const HardwareSpec &spec)
{
    check_inputs(net, spec);
    NeuronPartition part;
    part.crossbar_of.resize(net.neuron_count);
    CapacityTracker tracker(net, spec);
    for (int n = 0; n < net.neuron_count; ++n) {
        part.crossbar_of[n] = n % spec.crossbar_count;
        tracker.place(n, part.crossbar_of[n]);
    }

    // Greedy repair: pull neurons out of overfull crossbars into ones that
    // can take them, as long as the overflow strictly shrinks.
    const int max_steps = net.neuron_count * spec.crossbar_count + 1;
    for (int step = 0; step < max_steps; ++step) {
        int bad = -1;
        for (int j = 0; j < spec.crossbar_count; ++j) {
            if (!tracker.fits(j)) {
                bad = j;
                break;
            }
        }
        if (bad < 0) {
            return part;
        }
        bool moved = false;
        for (int u = 0; u < net.neuron_count && !moved; ++u) {
            if (part.crossbar_of[u] != bad) {
                continue;
            }
            const int before = tracker.overflow(bad);
            tracker.remove(u, bad);
            if (tracker.overflow(bad) >= before) {
                tracker.place(u, bad); // removing u does not help
                continue;
            }
            for (int target = 0; target < spec.crossbar_count; ++target) {
                if (target == bad) {
                    continue;
                }
                if (tracker.accepts(u, target)) {
                    tracker.place(u, target);
                    part.crossbar_of[u] = target;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                tracker.place(u, bad);
            }
        }
        if (!moved) {
            throw std::invalid_argument("map_round_robin: workload does not fit "
                    "the crossbar capacities");
        }
    }
    throw std::invalid_argument("map_round_robin: repair did not converge");
}

NeuronPartition map_balanced(const Network &net, const SpikeDb &db,
        const HardwareSpec &spec)
{
    check_inputs(net, spec);
    const auto weights = neuron_activation_weights(net, db);

    std::vector<int> order(net.neuron_count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (weights[a] != weights[b]) {
            return weights[a] > weights[b];
        }
        return a < b;
    });

    NeuronPartition part;
    part.crossbar_of.assign(net.neuron_count, -1);
    CapacityTracker tracker(net, spec);
    std::vector<std::int64_t> loads(spec.crossbar_count, 0);
    for (int u : order) {
        int best = -1;
        for (int j = 0; j < spec.crossbar_count; ++j) {
            if (!tracker.accepts(u, j)) {
                continue;
            }
            if (best < 0 || loads[j] < loads[best]) {
                best = j;
            }
        }
        if (best < 0) {
            throw std::invalid_argument("map_balanced: workload does not fit "
                    "the crossbar capacities");
        }
        part.crossbar_of[u] = best;
        loads[best] += weights[u];
        tracker.place(u, best);
    }
    return part;
}

NeuronPartition map_min_comm(const Network &net, const SpikeDb &db,
        const HardwareSpec &spec, std::uint64_t seed)
{
    check_inputs(net, spec);
    NeuronPartition part = map_round_robin(net, spec);
    const auto counts = spike_counts(net, db);

    std::vector<std::vector<std::pair<int, std::int64_t>>> out_edges(
            net.neuron_count);
    std::vector<std::vector<std::pair<int, std::int64_t>>> in_edges(
            net.neuron_count);
    for (const Synapse &s : net.synapses) {
        out_edges[s.pre].push_back({s.post, counts[s.pre]});
        in_edges[s.post].push_back({s.pre, counts[s.pre]});
    }

    CapacityTracker tracker(net, spec);
    for (int n = 0; n < net.neuron_count; ++n) {
        tracker.place(n, part.crossbar_of[n]);
    }

    // Change in cut spikes if `u` moved to crossbar `target` right now.
    auto move_delta = [&](int u, int target) {
        std::int64_t delta = 0;
        const int from = part.crossbar_of[u];
        for (const auto &[post, k] : out_edges[u]) {
            const int other = (post == u) ? target : part.crossbar_of[post];
            delta += (target != other ? k : 0) - (from != other ? k : 0);
        }
        for (const auto &[pre, k] : in_edges[u]) {
            if (pre == u) {
                continue; // self-loops are rejected upstream anyway
            }
            const int other = part.crossbar_of[pre];
            delta += (other != target ? k : 0) - (other != from ? k : 0);
        }
        return delta;
    };
    auto apply_move = [&](int u, int target) {
        tracker.remove(u, part.crossbar_of[u]);
        tracker.place(u, target);
        part.crossbar_of[u] = target;
    };

    struct Candidate {
        int u;
        int v;      // -1 for single moves
        int target; // move target; unused for swaps
    };
    std::vector<Candidate> candidates;
    for (int u = 0; u < net.neuron_count; ++u) {
        for (int j = 0; j < spec.crossbar_count; ++j) {
            candidates.push_back({u, -1, j});
        }
        for (int v = u + 1; v < net.neuron_count; ++v) {
            candidates.push_back({u, v, -1});
        }
    }

    std::mt19937_64 g(seed);
    bool improved = true;
    while (improved) {
        improved = false;
        rng::shuffle(candidates, g);
        for (const Candidate &c : candidates) {
            if (c.v < 0) {
                const int from = part.crossbar_of[c.u];
                if (c.target == from) {
                    continue;
                }
                if (move_delta(c.u, c.target) >= 0) {
                    continue;
                }
                tracker.remove(c.u, from);
                if (tracker.accepts(c.u, c.target)) {
                    tracker.place(c.u, c.target);
                    part.crossbar_of[c.u] = c.target;
                    improved = true;
                } else {
                    tracker.place(c.u, from);
                }
            } else {
                const int a = part.crossbar_of[c.u];
                const int b = part.crossbar_of[c.v];
                if (a == b) {
                    continue;
                }
                const std::int64_t d1 = move_delta(c.u, b);
                apply_move(c.u, b);
                const std::int64_t d2 = move_delta(c.v, a);
                apply_move(c.v, a);
                if (d1 + d2 < 0 && tracker.fits(a) && tracker.fits(b)) {
                    improved = true;
                } else {
                    apply_move(c.v, b);
                    apply_move(c.u, a);
                }
            }
        }
    }
    return part;
}

std::vector<std::int64_t> utilization(const MappingMatrix &mapping,
        const SpikeDb &db, const Network &net, const HardwareSpec &spec)
{
    const auto counts = spike_counts(net, db);
    if (mapping.crossbar_of_synapse.size() != net.synapses.size()) {
        throw std::invalid_argument("utilization: mapping/network mismatch");
    }
    std::vector<std::int64_t> util(spec.crossbar_count, 0);
    for (const Synapse &s : net.synapses) {
        const int j = mapping.crossbar_of_synapse[s.id];
        if (j < 0 || j >= spec.crossbar_count) {
            throw std::invalid_argument("utilization: crossbar index out of range");
        }
        util[j] += counts[s.pre];
    }
    return util;
}

void write_partition(const NeuronPartition &partition, std::ostream &out)
{
    for (std::size_t n = 0; n < partition.crossbar_of.size(); ++n) {
        out << "NRN," << n << ',' << partition.crossbar_of[n] << '\n';
    }
    if (!out) {
        throw std::runtime_error("write_partition: stream failure");
    }
}

void write_partition(const NeuronPartition &partition, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_partition(partition, out);
}

NeuronPartition load_partition(std::istream &in, int neuron_count)
{
    NeuronPartition part;
    part.crossbar_of.assign(neuron_count, -1);
    std::string line;
    int line_no = 0;
    int assigned = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        int neuron = -1;
        int crossbar = -1;
        if (line.rfind("NRN,", 0) != 0) {
            throw std::runtime_error("mapping parse error at line " +
                    std::to_string(line_no) + ": expected NRN record");
        }
        const char *p = line.data() + 4;
        const char *end = line.data() + line.size();
        auto r1 = std::from_chars(p, end, neuron);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') {
            throw std::runtime_error("mapping parse error at line " +
                    std::to_string(line_no));
        }
        auto r2 = std::from_chars(r1.ptr + 1, end, crossbar);
        if (r2.ec != std::errc{} || r2.ptr != end) {
            throw std::runtime_error("mapping parse error at line " +
                    std::to_string(line_no));
        }
        if (neuron < 0 || neuron >= neuron_count) {
            throw std::runtime_error("mapping parse error at line " +
                    std::to_string(line_no) + ": neuron id out of range");
        }
        if (part.crossbar_of[neuron] != -1) {
            throw std::runtime_error("mapping parse error at line " +
                    std::to_string(line_no) + ": duplicate neuron assignment");
        }
        part.crossbar_of[neuron] = crossbar;
        ++assigned;
    }
    if (assigned != neuron_count) {
        throw std::runtime_error("mapping file assigns " +
                std::to_string(assigned) + " of " + std::to_string(neuron_count) +
                " neurons");
    }
    return part;
}

NeuronPartition load_partition(const std::string &path, int neuron_count)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open mapping file '" + path + "'");
    }
    return load_partition(in, neuron_count);
}

} // namespace pumpsim
