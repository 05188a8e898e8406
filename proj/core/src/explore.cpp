#include "pumpsim/explore.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pumpsim/config_io.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/reliability.hpp"
#include "pumpsim/synth.hpp"
#include "pumpsim/trace_io.hpp"

namespace pumpsim {

std::string strategy_to_string(MappingStrategy s)
{
    switch (s) {
    case MappingStrategy::round_robin:
        return "roundrobin";
    case MappingStrategy::balanced:
        return "balanced";
    case MappingStrategy::min_comm:
        return "mincomm";
    }
    return "roundrobin";
}

MappingStrategy strategy_parse(const std::string &text)
{
    if (text == "roundrobin") {
        return MappingStrategy::round_robin;
    }
    if (text == "balanced") {
        return MappingStrategy::balanced;
    }
    if (text == "mincomm") {
        return MappingStrategy::min_comm;
    }
    throw std::invalid_argument("unknown mapping strategy '" + text +
            "', expected roundrobin|balanced|mincomm");
}

void materialize_workload(const WorkloadSource &source, std::uint64_t seed,
        Network &net, SpikeDb &db)
{
    if (!source.trace_path.empty()) {
        TraceData data = load_trace(source.trace_path);
        net = std::move(data.network);
        db = std::move(data.spikes);
        return;
    }
    const SyntheticWorkload &s = source.synth;
    net = s.in_degree > 0
            ? gen_regular_indegree_network(s.neurons, s.in_degree, s.weight_min,
                      s.weight_max, seed)
            : gen_random_network(s.neurons, s.synapses, s.weight_min,
                      s.weight_max, seed);
    const auto rates = lognormal_rates(s.rate_hz, s.rate_skew, s.neurons,
            seed + 1);
    db = gen_poisson(net, rates, s.horizon_ms, seed + 2);
}

namespace {

NeuronPartition compute_partition(const Network &net, const SpikeDb &db,
        MappingStrategy strategy, const HardwareSpec &spec, std::uint64_t seed)
{
    switch (strategy) {
    case MappingStrategy::round_robin:
        return map_round_robin(net, spec);
    case MappingStrategy::balanced:
        return map_balanced(net, db, spec);
    case MappingStrategy::min_comm:
        return map_min_comm(net, db, spec, seed);
    }
    throw std::logic_error("unreachable strategy");
}

std::string join_ints(const std::vector<int> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out.push_back(';');
        }
        out += std::to_string(values[i]);
    }
    return out;
}

ReportRow run_cell(const Network &net, const SpikeDb &db,
        MappingStrategy strategy, const NeuronPartition &partition,
        const DischargePolicy &policy, const HardwareSpec &spec,
        const NbtiParams &nbti, std::uint64_t seed, int placement_id)
{
    const auto start = std::chrono::steady_clock::now();

    ReportRow row;
    row.strategy = strategy_to_string(strategy);
    row.policy = policy.to_string();
    row.placement_id = placement_id;
    row.placement = join_ints(spec.placement);
    row.seed = seed;
    row.neurons = net.neuron_count;
    row.synapses = net.synapse_count();
    row.crossbars = spec.crossbar_count;
    row.pumps = spec.pump_count;

    validate_nbti(nbti, spec);
    const MappingMatrix mapping = derive_mapping(partition, net, spec);
    const ExecutionResult exec = replay(net, db, mapping, spec, policy);

    row.spikes_total = exec.counters.spikes_processed;
    row.cut_spikes = exec.counters.cut_spikes;
    row.spikes_delayed = exec.counters.spikes_delayed;
    row.total_added_delay_ms = exec.counters.total_added_delay_ms;
    row.exec_horizon_ms = exec.exec_horizon_ms;

    const IsiStats reference = compute_isi_stats(db.trains);
    const IsiStats observed = compute_isi_stats(exec.observed_trains);
    const IsiDelta delta = isi_change(reference, observed);
    row.mean_isi_ms = observed.mean_ms;
    row.mean_isi_change = delta.mean_frac;
    row.isi_defined = observed.defined_count;
    row.isi_excluded = delta.excluded_count;

    const SynapseTrains trains = expand_to_synapses(net, db);
    const AgingReport aging = build_aging_report(trains, db.horizon_ms, mapping,
            spec, nbti, policy, exec.pump_schedules);
    row.pump_aging_sum = aging.pump_aging_sum;
    row.pump_aging_schedule = aging.pump_aging_schedule;
    row.pump_reliability = aging.pump_reliability;
    row.pump_mttf_ms = aging.pump_mttf_ms;
    for (double &mttf : row.pump_mttf_ms) {
        if (std::isinf(mttf)) {
            mttf = -1.0; // unloaded pump: no aging accumulates
        }
    }
    auto aggregate = [](const std::vector<double> &v, double &total,
                             double &mean, double &max) {
        total = 0.0;
        max = 0.0;
        for (double x : v) {
            total += x;
            max = std::max(max, x);
        }
        mean = v.empty() ? 0.0 : total / static_cast<double>(v.size());
    };
    aggregate(row.pump_aging_sum, row.aging_sum_total, row.aging_sum_mean,
            row.aging_sum_max);
    aggregate(row.pump_aging_schedule, row.aging_schedule_total,
            row.aging_schedule_mean, row.aging_schedule_max);

    row.crossbar_util = utilization(mapping, db, net, spec);
    for (std::int64_t u : row.crossbar_util) {
        row.util_total += u;
        row.util_max = std::max(row.util_max, u);
    }

    row.runtime_ms = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
                             .count();
    return row;
}

double normalize_value(double value, double baseline)
{
    if (baseline > 0.0) {
        return value / baseline;
    }
    return value == 0.0 ? 1.0 : 0.0; // degenerate baseline, documented
}

} // namespace

ReportRow run_single(const Network &net, const SpikeDb &db,
        MappingStrategy strategy, const DischargePolicy &policy,
        const HardwareSpec &spec, const NbtiParams &nbti, std::uint64_t seed)
{
    validate_spec(spec);
    const NeuronPartition partition =
            compute_partition(net, db, strategy, spec, seed);
    return run_cell(net, db, strategy, partition, policy, spec, nbti, seed, 0);
}

void normalize_rows(std::vector<ReportRow> &rows)
{
    std::map<std::pair<std::string, int>, const ReportRow *> baselines;
    for (const ReportRow &row : rows) {
        if (row.policy == "never" && row.status == "ok") {
            baselines[{row.strategy, row.placement_id}] = &row;
        }
    }
    for (ReportRow &row : rows) {
        auto it = baselines.find({row.strategy, row.placement_id});
        if (it == baselines.end() || row.status != "ok") {
            row.norm_aging_sum_total = 0.0;
            row.norm_aging_sum_max = 0.0;
            row.norm_aging_schedule_total = 0.0;
            row.norm_aging_schedule_max = 0.0;
            row.norm_mean_isi = 0.0;
            row.norm_mean_isi_change = 0.0;
            continue;
        }
        const ReportRow &base = *it->second;
        row.norm_aging_sum_total =
                normalize_value(row.aging_sum_total, base.aging_sum_total);
        row.norm_aging_sum_max =
                normalize_value(row.aging_sum_max, base.aging_sum_max);
        row.norm_aging_schedule_total = normalize_value(
                row.aging_schedule_total, base.aging_schedule_total);
        row.norm_aging_schedule_max = normalize_value(row.aging_schedule_max,
                base.aging_schedule_max);
        row.norm_mean_isi = normalize_value(row.mean_isi_ms, base.mean_isi_ms);
        row.norm_mean_isi_change =
                normalize_value(row.mean_isi_change, base.mean_isi_change);
    }
}

std::vector<ReportRow> run_sweep(const SweepPlan &plan)
{
    if (plan.strategies.empty() || plan.policies.empty()) {
        throw std::invalid_argument("sweep plan needs at least one strategy "
                "and one policy");
    }
    std::vector<std::vector<int>> placements = plan.placements;
    if (placements.empty()) {
        placements.push_back(plan.hw.placement);
    }
    for (const auto &placement : placements) {
        HardwareSpec spec = plan.hw;
        spec.placement = placement;
        validate_spec(spec);
        validate_nbti(plan.nbti, spec);
    }

    Network net;
    SpikeDb db;
    materialize_workload(plan.workload, plan.seed, net, db);

    // The partition depends only on geometry, not on the pump placement, so
    // each strategy is mapped once.
    HardwareSpec mapping_spec = plan.hw;
    mapping_spec.placement = placements.front();
    std::map<std::string, NeuronPartition> partitions;
    std::map<std::string, std::string> partition_errors;
    for (MappingStrategy strategy : plan.strategies) {
        const std::string key = strategy_to_string(strategy);
        if (partitions.count(key) || partition_errors.count(key)) {
            continue;
        }
        try {
            partitions[key] =
                    compute_partition(net, db, strategy, mapping_spec, plan.seed);
        } catch (const std::exception &e) {
            partition_errors[key] = e.what();
        }
    }

    struct Cell {
        MappingStrategy strategy;
        int placement_id;
        DischargePolicy policy;
    };
    std::vector<Cell> cells;
    for (MappingStrategy strategy : plan.strategies) {
        for (std::size_t pi = 0; pi < placements.size(); ++pi) {
            for (const DischargePolicy &policy : plan.policies) {
                cells.push_back({strategy, static_cast<int>(pi), policy});
            }
        }
    }

    std::vector<ReportRow> rows(cells.size());
    auto run_one = [&](std::size_t i) {
        const Cell &cell = cells[i];
        HardwareSpec spec = plan.hw;
        spec.placement = placements[cell.placement_id];
        const std::string key = strategy_to_string(cell.strategy);
        ReportRow &row = rows[i];
        try {
            auto err = partition_errors.find(key);
            if (err != partition_errors.end()) {
                throw std::runtime_error("mapping: " + err->second);
            }
            row = run_cell(net, db, cell.strategy, partitions.at(key),
                    cell.policy, spec, plan.nbti, plan.seed, cell.placement_id);
        } catch (const std::exception &e) {
            row = ReportRow{};
            row.strategy = key;
            row.policy = cell.policy.to_string();
            row.placement_id = cell.placement_id;
            row.placement = join_ints(spec.placement);
            row.seed = plan.seed;
            row.neurons = net.neuron_count;
            row.synapses = net.synapse_count();
            row.crossbars = spec.crossbar_count;
            row.pumps = spec.pump_count;
            std::string what = e.what();
            for (char &c : what) {
                if (c == ',' || c == '\n') {
                    c = ';';
                }
            }
            row.status = "error: " + what;
        }
    };

    const int jobs = std::max(1, plan.jobs);
    if (jobs == 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            run_one(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const std::size_t worker_count =
                std::min(static_cast<std::size_t>(jobs), cells.size());
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) {
                        return;
                    }
                    run_one(i);
                }
            });
        }
        for (auto &worker : workers) {
            worker.join();
        }
    }

    normalize_rows(rows);
    return rows;
}

// --- report serialization ---------------------------------------------------

namespace {

const char *const kCsvHeader =
        "strategy,policy,placement_id,placement,seed,status,neurons,synapses,"
        "crossbars,pumps,spikes_total,cut_spikes,spikes_delayed,"
        "total_added_delay_ms,exec_horizon_ms,mean_isi_ms,mean_isi_change,"
        "isi_defined,isi_excluded,aging_sum_total,aging_sum_mean,aging_sum_max,"
        "aging_schedule_total,aging_schedule_mean,aging_schedule_max,"
        "util_total,util_max,norm_aging_sum_total,norm_aging_sum_max,"
        "norm_aging_schedule_total,norm_aging_schedule_max,norm_mean_isi,"
        "norm_mean_isi_change,pump_aging_sum,pump_aging_schedule,"
        "pump_reliability,pump_mttf_ms,crossbar_util,runtime_ms";

std::string join_doubles(const std::vector<double> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out.push_back(';');
        }
        out += format_double(values[i]);
    }
    return out;
}

std::string join_int64(const std::vector<std::int64_t> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out.push_back(';');
        }
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<std::string> split_on(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
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

double field_double(const std::string &text)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("report parse error: bad number '" + text + "'");
    }
    return v;
}

std::int64_t field_int64(const std::string &text)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("report parse error: bad integer '" + text + "'");
    }
    return v;
}

std::vector<double> field_doubles(const std::string &text)
{
    std::vector<double> out;
    if (text.empty()) {
        return out;
    }
    for (const auto &piece : split_on(text, ';')) {
        out.push_back(field_double(piece));
    }
    return out;
}

std::vector<std::int64_t> field_int64s(const std::string &text)
{
    std::vector<std::int64_t> out;
    if (text.empty()) {
        return out;
    }
    for (const auto &piece : split_on(text, ';')) {
        out.push_back(field_int64(piece));
    }
    return out;
}

} // namespace

std::string report_to_csv(const std::vector<ReportRow> &rows)
{
    std::string out = kCsvHeader;
    out.push_back('\n');
    for (const ReportRow &r : rows) {
        out += r.strategy;
        out += ',' + r.policy;
        out += ',' + std::to_string(r.placement_id);
        out += ',' + r.placement;
        out += ',' + std::to_string(r.seed);
        out += ',' + r.status;
        out += ',' + std::to_string(r.neurons);
        out += ',' + std::to_string(r.synapses);
        out += ',' + std::to_string(r.crossbars);
        out += ',' + std::to_string(r.pumps);
        out += ',' + std::to_string(r.spikes_total);
        out += ',' + std::to_string(r.cut_spikes);
        out += ',' + std::to_string(r.spikes_delayed);
        out += ',' + format_double(r.total_added_delay_ms);
        out += ',' + format_double(r.exec_horizon_ms);
        out += ',' + format_double(r.mean_isi_ms);
        out += ',' + format_double(r.mean_isi_change);
        out += ',' + std::to_string(r.isi_defined);
        out += ',' + std::to_string(r.isi_excluded);
        out += ',' + format_double(r.aging_sum_total);
        out += ',' + format_double(r.aging_sum_mean);
        out += ',' + format_double(r.aging_sum_max);
        out += ',' + format_double(r.aging_schedule_total);
        out += ',' + format_double(r.aging_schedule_mean);
        out += ',' + format_double(r.aging_schedule_max);
        out += ',' + std::to_string(r.util_total);
        out += ',' + std::to_string(r.util_max);
        out += ',' + format_double(r.norm_aging_sum_total);
        out += ',' + format_double(r.norm_aging_sum_max);
        out += ',' + format_double(r.norm_aging_schedule_total);
        out += ',' + format_double(r.norm_aging_schedule_max);
        out += ',' + format_double(r.norm_mean_isi);
        out += ',' + format_double(r.norm_mean_isi_change);
        out += ',' + join_doubles(r.pump_aging_sum);
        out += ',' + join_doubles(r.pump_aging_schedule);
        out += ',' + join_doubles(r.pump_reliability);
        out += ',' + join_doubles(r.pump_mttf_ms);
        out += ',' + join_int64(r.crossbar_util);
        out += ',' + format_double(r.runtime_ms);
        out.push_back('\n');
    }
    return out;
}

std::vector<ReportRow> report_from_csv(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("report parse error: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kCsvHeader) {
        throw std::runtime_error("report parse error: unexpected CSV header");
    }
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_on(line, ',');
        if (f.size() != 39) {
            throw std::runtime_error("report parse error: expected 39 fields, "
                    "got " + std::to_string(f.size()));
        }
        ReportRow r;
        std::size_t i = 0;
        r.strategy = f[i++];
        r.policy = f[i++];
        r.placement_id = static_cast<int>(field_int64(f[i++]));
        r.placement = f[i++];
        r.seed = static_cast<std::uint64_t>(field_int64(f[i++]));
        r.status = f[i++];
        r.neurons = static_cast<int>(field_int64(f[i++]));
        r.synapses = static_cast<int>(field_int64(f[i++]));
        r.crossbars = static_cast<int>(field_int64(f[i++]));
        r.pumps = static_cast<int>(field_int64(f[i++]));
        r.spikes_total = field_int64(f[i++]);
        r.cut_spikes = field_int64(f[i++]);
        r.spikes_delayed = field_int64(f[i++]);
        r.total_added_delay_ms = field_double(f[i++]);
        r.exec_horizon_ms = field_double(f[i++]);
        r.mean_isi_ms = field_double(f[i++]);
        r.mean_isi_change = field_double(f[i++]);
        r.isi_defined = static_cast<int>(field_int64(f[i++]));
        r.isi_excluded = static_cast<int>(field_int64(f[i++]));
        r.aging_sum_total = field_double(f[i++]);
        r.aging_sum_mean = field_double(f[i++]);
        r.aging_sum_max = field_double(f[i++]);
        r.aging_schedule_total = field_double(f[i++]);
        r.aging_schedule_mean = field_double(f[i++]);
        r.aging_schedule_max = field_double(f[i++]);
        r.util_total = field_int64(f[i++]);
        r.util_max = field_int64(f[i++]);
        r.norm_aging_sum_total = field_double(f[i++]);
        r.norm_aging_sum_max = field_double(f[i++]);
        r.norm_aging_schedule_total = field_double(f[i++]);
        r.norm_aging_schedule_max = field_double(f[i++]);
        r.norm_mean_isi = field_double(f[i++]);
        r.norm_mean_isi_change = field_double(f[i++]);
        r.pump_aging_sum = field_doubles(f[i++]);
        r.pump_aging_schedule = field_doubles(f[i++]);
        r.pump_reliability = field_doubles(f[i++]);
        r.pump_mttf_ms = field_doubles(f[i++]);
        r.crossbar_util = field_int64s(f[i++]);
        r.runtime_ms = field_double(f[i++]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

nlohmann::ordered_json row_to_json(const ReportRow &r)
{
    nlohmann::ordered_json j;
    j["strategy"] = r.strategy;
    j["policy"] = r.policy;
    j["placement_id"] = r.placement_id;
    j["placement"] = r.placement;
    j["seed"] = r.seed;
    j["status"] = r.status;
    j["neurons"] = r.neurons;
    j["synapses"] = r.synapses;
    j["crossbars"] = r.crossbars;
    j["pumps"] = r.pumps;
    j["spikes_total"] = r.spikes_total;
    j["cut_spikes"] = r.cut_spikes;
    j["spikes_delayed"] = r.spikes_delayed;
    j["total_added_delay_ms"] = r.total_added_delay_ms;
    j["exec_horizon_ms"] = r.exec_horizon_ms;
    j["mean_isi_ms"] = r.mean_isi_ms;
    j["mean_isi_change"] = r.mean_isi_change;
    j["isi_defined"] = r.isi_defined;
    j["isi_excluded"] = r.isi_excluded;
    j["aging_sum_total"] = r.aging_sum_total;
    j["aging_sum_mean"] = r.aging_sum_mean;
    j["aging_sum_max"] = r.aging_sum_max;
    j["aging_schedule_total"] = r.aging_schedule_total;
    j["aging_schedule_mean"] = r.aging_schedule_mean;
    j["aging_schedule_max"] = r.aging_schedule_max;
    j["util_total"] = r.util_total;
    j["util_max"] = r.util_max;
    j["norm_aging_sum_total"] = r.norm_aging_sum_total;
    j["norm_aging_sum_max"] = r.norm_aging_sum_max;
    j["norm_aging_schedule_total"] = r.norm_aging_schedule_total;
    j["norm_aging_schedule_max"] = r.norm_aging_schedule_max;
    j["norm_mean_isi"] = r.norm_mean_isi;
    j["norm_mean_isi_change"] = r.norm_mean_isi_change;
    j["pump_aging_sum"] = r.pump_aging_sum;
    j["pump_aging_schedule"] = r.pump_aging_schedule;
    j["pump_reliability"] = r.pump_reliability;
    j["pump_mttf_ms"] = r.pump_mttf_ms;
    j["crossbar_util"] = r.crossbar_util;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

ReportRow row_from_json(const nlohmann::json &j)
{
    ReportRow r;
    r.strategy = j.at("strategy").get<std::string>();
    r.policy = j.at("policy").get<std::string>();
    r.placement_id = j.at("placement_id").get<int>();
    r.placement = j.at("placement").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    r.neurons = j.at("neurons").get<int>();
    r.synapses = j.at("synapses").get<int>();
    r.crossbars = j.at("crossbars").get<int>();
    r.pumps = j.at("pumps").get<int>();
    r.spikes_total = j.at("spikes_total").get<std::int64_t>();
    r.cut_spikes = j.at("cut_spikes").get<std::int64_t>();
    r.spikes_delayed = j.at("spikes_delayed").get<std::int64_t>();
    r.total_added_delay_ms = j.at("total_added_delay_ms").get<double>();
    r.exec_horizon_ms = j.at("exec_horizon_ms").get<double>();
    r.mean_isi_ms = j.at("mean_isi_ms").get<double>();
    r.mean_isi_change = j.at("mean_isi_change").get<double>();
    r.isi_defined = j.at("isi_defined").get<int>();
    r.isi_excluded = j.at("isi_excluded").get<int>();
    r.aging_sum_total = j.at("aging_sum_total").get<double>();
    r.aging_sum_mean = j.at("aging_sum_mean").get<double>();
    r.aging_sum_max = j.at("aging_sum_max").get<double>();
    r.aging_schedule_total = j.at("aging_schedule_total").get<double>();
    r.aging_schedule_mean = j.at("aging_schedule_mean").get<double>();
    r.aging_schedule_max = j.at("aging_schedule_max").get<double>();
    r.util_total = j.at("util_total").get<std::int64_t>();
    r.util_max = j.at("util_max").get<std::int64_t>();
    r.norm_aging_sum_total = j.at("norm_aging_sum_total").get<double>();
    r.norm_aging_sum_max = j.at("norm_aging_sum_max").get<double>();
    r.norm_aging_schedule_total = j.at("norm_aging_schedule_total").get<double>();
    r.norm_aging_schedule_max = j.at("norm_aging_schedule_max").get<double>();
    r.norm_mean_isi = j.at("norm_mean_isi").get<double>();
    r.norm_mean_isi_change = j.at("norm_mean_isi_change").get<double>();
    r.pump_aging_sum = j.at("pump_aging_sum").get<std::vector<double>>();
    r.pump_aging_schedule =
            j.at("pump_aging_schedule").get<std::vector<double>>();
    r.pump_reliability = j.at("pump_reliability").get<std::vector<double>>();
    r.pump_mttf_ms = j.at("pump_mttf_ms").get<std::vector<double>>();
    r.crossbar_util = j.at("crossbar_util").get<std::vector<std::int64_t>>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    return r;
}

} // namespace

std::string report_to_json(const std::vector<ReportRow> &rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ReportRow &r : rows) {
        arr.push_back(row_to_json(r));
    }
    return arr.dump(2) + "\n";
}

std::vector<ReportRow> report_from_json(const std::string &text)
{
    const auto parsed = nlohmann::json::parse(text);
    std::vector<ReportRow> rows;
    for (const auto &j : parsed) {
        rows.push_back(row_from_json(j));
    }
    return rows;
}

void emit_report(const std::vector<ReportRow> &rows, const std::string &format,
        std::ostream &out)
{
    if (rows.empty()) {
        throw std::invalid_argument("emit_report: no rows to emit");
    }
    if (format == "csv") {
        out << report_to_csv(rows);
    } else if (format == "json") {
        out << report_to_json(rows);
    } else {
        throw std::invalid_argument("emit_report: unknown format '" + format +
                "', expected csv|json");
    }
    if (!out) {
        throw std::runtime_error("emit_report: stream failure");
    }
}

void emit_report(const std::vector<ReportRow> &rows, const std::string &format,
        const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    emit_report(rows, format, out);
}

SweepPlan load_plan(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open plan file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("plan parse error: " + std::string(e.what()));
    }

    SweepPlan plan;
    try {
        if (j.contains("config")) {
            const ToolConfig cfg = load_config(j.at("config").get<std::string>());
            plan.hw = cfg.hw;
            plan.nbti = cfg.nbti;
        }
        if (j.contains("hardware")) {
            const auto &h = j.at("hardware");
            if (h.contains("crossbar_count")) {
                plan.hw.crossbar_count = h.at("crossbar_count").get<int>();
            }
            if (h.contains("crossbar_rows")) {
                plan.hw.crossbar_rows = h.at("crossbar_rows").get<int>();
            }
            if (h.contains("crossbar_cols")) {
                plan.hw.crossbar_cols = h.at("crossbar_cols").get<int>();
            }
            if (h.contains("pump_count")) {
                plan.hw.pump_count = h.at("pump_count").get<int>();
            }
            if (h.contains("placement")) {
                plan.hw.placement = h.at("placement").get<std::vector<int>>();
            }
            if (h.contains("v_idle")) {
                plan.hw.v_idle = h.at("v_idle").get<double>();
            }
            if (h.contains("v_boost")) {
                plan.hw.v_boost = h.at("v_boost").get<double>();
            }
            if (h.contains("v_discharge")) {
                plan.hw.v_discharge = h.at("v_discharge").get<double>();
            }
            if (h.contains("t_pulse_ms")) {
                plan.hw.t_pulse_ms = h.at("t_pulse_ms").get<double>();
            }
            if (h.contains("t_recover_ms")) {
                plan.hw.t_recover_ms = h.at("t_recover_ms").get<double>();
            }
            if (h.contains("t_hop_ms")) {
                plan.hw.t_hop_ms = h.at("t_hop_ms").get<double>();
            }
        }
        if (j.contains("nbti")) {
            const auto &n = j.at("nbti");
            if (n.contains("g0")) {
                plan.nbti.g0 = n.at("g0").get<double>();
            }
            if (n.contains("m_exp")) {
                plan.nbti.m_exp = n.at("m_exp").get<double>();
            }
            if (n.contains("n_exp")) {
                plan.nbti.n_exp = n.at("n_exp").get<double>();
            }
            if (n.contains("beta")) {
                plan.nbti.beta = n.at("beta").get<double>();
            }
            if (n.contains("v_th")) {
                plan.nbti.v_th = n.at("v_th").get<double>();
            }
        }

        const auto &w = j.at("workload");
        if (w.contains("trace")) {
            plan.workload.trace_path = w.at("trace").get<std::string>();
        } else {
            const auto &g = w.at("generate");
            auto &s = plan.workload.synth;
            if (g.contains("neurons")) {
                s.neurons = g.at("neurons").get<int>();
            }
            if (g.contains("synapses")) {
                s.synapses = g.at("synapses").get<int>();
            }
            if (g.contains("in_degree")) {
                s.in_degree = g.at("in_degree").get<int>();
            }
            if (g.contains("rate_hz")) {
                s.rate_hz = g.at("rate_hz").get<double>();
            }
            if (g.contains("rate_skew")) {
                s.rate_skew = g.at("rate_skew").get<double>();
            }
            if (g.contains("horizon_ms")) {
                s.horizon_ms = g.at("horizon_ms").get<double>();
            }
            if (g.contains("weight_min")) {
                s.weight_min = g.at("weight_min").get<double>();
            }
            if (g.contains("weight_max")) {
                s.weight_max = g.at("weight_max").get<double>();
            }
        }

        for (const auto &s : j.at("strategies")) {
            plan.strategies.push_back(strategy_parse(s.get<std::string>()));
        }
        for (const auto &p : j.at("policies")) {
            plan.policies.push_back(DischargePolicy::parse(p.get<std::string>()));
        }
        if (j.contains("placements")) {
            plan.placements =
                    j.at("placements").get<std::vector<std::vector<int>>>();
        }
        if (j.contains("seed")) {
            plan.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("out")) {
            plan.out_path = j.at("out").get<std::string>();
        }
        if (j.contains("format")) {
            plan.format = j.at("format").get<std::string>();
        }
        if (j.contains("jobs")) {
            plan.jobs = j.at("jobs").get<int>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("plan schema error: " + std::string(e.what()));
    }
    return plan;
}

} // namespace pumpsim
