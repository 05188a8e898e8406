// Command-line front end: gen | map | eval | sweep.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pumpsim/config_io.hpp"
#include "pumpsim/engine.hpp"
#include "pumpsim/explore.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/reliability.hpp"
#include "pumpsim/synth.hpp"
#include "pumpsim/trace_io.hpp"

namespace {

struct GenOptions {
    std::string out;
    int neurons = 50;
    int synapses = 500;
    int in_degree = 0;
    double rate_hz = 10.0;
    double rate_skew = 0.0;
    double horizon_ms = 1000.0;
    double weight_min = 0.5;
    double weight_max = 1.5;
    std::uint64_t seed = 1;
};

struct MapOptions {
    std::string trace;
    std::string config;
    std::vector<std::string> overrides;
    std::string strategy = "balanced";
    std::string out;
    std::uint64_t seed = 1;
};

struct EvalOptions {
    std::string trace;
    std::string config;
    std::vector<std::string> overrides;
    std::string mapping_path;
    std::string strategy;
    std::string policy = "never";
    std::string format = "csv";
    std::string out;
    std::string dump_schedule;
    std::string dump_delayed_trace;
    std::uint64_t seed = 1;
};

struct SweepOptions {
    std::string plan;
    std::string out;
    std::string format;
    std::vector<std::string> overrides;
    int jobs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

pumpsim::ToolConfig resolve_config(const std::string &path,
        const std::vector<std::string> &overrides)
{
    pumpsim::ToolConfig cfg;
    if (!path.empty()) {
        cfg = pumpsim::load_config(path);
    }
    for (const std::string &kv : overrides) {
        pumpsim::apply_config_override(cfg, kv);
    }
    return cfg;
}

int run_gen(const GenOptions &opt)
{
    pumpsim::Network net = opt.in_degree > 0
            ? pumpsim::gen_regular_indegree_network(opt.neurons, opt.in_degree,
                      opt.weight_min, opt.weight_max, opt.seed)
            : pumpsim::gen_random_network(opt.neurons, opt.synapses,
                      opt.weight_min, opt.weight_max, opt.seed);
    const auto rates = pumpsim::lognormal_rates(opt.rate_hz, opt.rate_skew,
            opt.neurons, opt.seed + 1);
    const pumpsim::SpikeDb db =
            pumpsim::gen_poisson(net, rates, opt.horizon_ms, opt.seed + 2);
    pumpsim::write_trace(net, db, opt.out);
    std::printf("wrote %s: %d neurons, %d synapses, %lld spikes over %s ms\n",
            opt.out.c_str(), net.neuron_count, net.synapse_count(),
            static_cast<long long>(db.total_spikes()),
            pumpsim::format_double(db.horizon_ms).c_str());
    return 0;
}

pumpsim::NeuronPartition partition_for(const std::string &strategy,
        const pumpsim::Network &net, const pumpsim::SpikeDb &db,
        const pumpsim::HardwareSpec &hw, std::uint64_t seed)
{
    switch (pumpsim::strategy_parse(strategy)) {
    case pumpsim::MappingStrategy::round_robin:
        return pumpsim::map_round_robin(net, hw);
    case pumpsim::MappingStrategy::balanced:
        return pumpsim::map_balanced(net, db, hw);
    case pumpsim::MappingStrategy::min_comm:
        return pumpsim::map_min_comm(net, db, hw, seed);
    }
    throw std::logic_error("unreachable strategy");
}

int run_map(const MapOptions &opt)
{
    const pumpsim::ToolConfig cfg = resolve_config(opt.config, opt.overrides);
    pumpsim::validate_spec(cfg.hw);
    const pumpsim::TraceData data = pumpsim::load_trace(opt.trace);
    const auto partition = partition_for(opt.strategy, data.network,
            data.spikes, cfg.hw, opt.seed);
    const auto mapping =
            pumpsim::derive_mapping(partition, data.network, cfg.hw);
    pumpsim::write_partition(partition, opt.out);

    const auto cut =
            pumpsim::cut_spike_count(partition, data.network, data.spikes);
    const auto util =
            pumpsim::utilization(mapping, data.spikes, data.network, cfg.hw);
    std::printf("wrote %s\n", opt.out.c_str());
    std::printf("cut_spikes=%lld\n", static_cast<long long>(cut));
    std::printf("utilization=");
    for (std::size_t j = 0; j < util.size(); ++j) {
        std::printf("%s%lld", j ? "," : "", static_cast<long long>(util[j]));
    }
    std::printf("\n");
    return 0;
}

int run_eval(const EvalOptions &opt)
{
    if (opt.mapping_path.empty() == opt.strategy.empty()) {
        throw CLI::ValidationError(
                "eval needs exactly one of --mapping or --strategy");
    }
    const pumpsim::ToolConfig cfg = resolve_config(opt.config, opt.overrides);
    pumpsim::validate_spec(cfg.hw);
    pumpsim::validate_nbti(cfg.nbti, cfg.hw);
    const pumpsim::TraceData data = pumpsim::load_trace(opt.trace);
    const auto policy = pumpsim::DischargePolicy::parse(opt.policy);

    pumpsim::NeuronPartition partition;
    std::string strategy_name;
    if (!opt.mapping_path.empty()) {
        partition = pumpsim::load_partition(opt.mapping_path,
                data.network.neuron_count);
        strategy_name = "file";
    } else {
        partition = partition_for(opt.strategy, data.network, data.spikes,
                cfg.hw, opt.seed);
        strategy_name = opt.strategy;
    }
    const auto mapping =
            pumpsim::derive_mapping(partition, data.network, cfg.hw);

    // The never-policy baseline always runs too, so the emitted row's
    // normalized columns are meaningful.
    std::vector<pumpsim::ReportRow> rows;
    const auto never = pumpsim::DischargePolicy::never();
    auto evaluate = [&](const pumpsim::DischargePolicy &p) {
        pumpsim::ReportRow row;
        const auto exec =
                pumpsim::replay(data.network, data.spikes, mapping, cfg.hw, p);
        const auto ref_stats = pumpsim::compute_isi_stats(data.spikes.trains);
        const auto obs_stats = pumpsim::compute_isi_stats(exec.observed_trains);
        const auto delta = pumpsim::isi_change(ref_stats, obs_stats);
        const auto trains =
                pumpsim::expand_to_synapses(data.network, data.spikes);
        const auto aging = pumpsim::build_aging_report(trains,
                data.spikes.horizon_ms, mapping, cfg.hw, cfg.nbti, p,
                exec.pump_schedules);

        row.strategy = strategy_name;
        row.policy = p.to_string();
        row.placement_id = 0;
        for (std::size_t j = 0; j < cfg.hw.placement.size(); ++j) {
            if (j) {
                row.placement.push_back(';');
            }
            row.placement += std::to_string(cfg.hw.placement[j]);
        }
        row.seed = opt.seed;
        row.neurons = data.network.neuron_count;
        row.synapses = data.network.synapse_count();
        row.crossbars = cfg.hw.crossbar_count;
        row.pumps = cfg.hw.pump_count;
        row.spikes_total = exec.counters.spikes_processed;
        row.cut_spikes = exec.counters.cut_spikes;
        row.spikes_delayed = exec.counters.spikes_delayed;
        row.total_added_delay_ms = exec.counters.total_added_delay_ms;
        row.exec_horizon_ms = exec.exec_horizon_ms;
        row.mean_isi_ms = obs_stats.mean_ms;
        row.mean_isi_change = delta.mean_frac;
        row.isi_defined = obs_stats.defined_count;
        row.isi_excluded = delta.excluded_count;
        row.pump_aging_sum = aging.pump_aging_sum;
        row.pump_aging_schedule = aging.pump_aging_schedule;
        row.pump_reliability = aging.pump_reliability;
        row.pump_mttf_ms = aging.pump_mttf_ms;
        for (double &mttf : row.pump_mttf_ms) {
            if (std::isinf(mttf)) {
                mttf = -1.0;
            }
        }
        for (double a : row.pump_aging_sum) {
            row.aging_sum_total += a;
            row.aging_sum_max = std::max(row.aging_sum_max, a);
        }
        row.aging_sum_mean = row.pump_aging_sum.empty()
                ? 0.0
                : row.aging_sum_total / row.pump_aging_sum.size();
        for (double a : row.pump_aging_schedule) {
            row.aging_schedule_total += a;
            row.aging_schedule_max = std::max(row.aging_schedule_max, a);
        }
        row.aging_schedule_mean = row.pump_aging_schedule.empty()
                ? 0.0
                : row.aging_schedule_total / row.pump_aging_schedule.size();
        row.crossbar_util = pumpsim::utilization(mapping, data.spikes,
                data.network, cfg.hw);
        for (auto u : row.crossbar_util) {
            row.util_total += u;
            row.util_max = std::max(row.util_max, u);
        }

        if (p == policy) {
            if (!opt.dump_schedule.empty()) {
                pumpsim::write_schedule_dump(exec.pump_schedules,
                        opt.dump_schedule);
            }
            if (!opt.dump_delayed_trace.empty()) {
                pumpsim::SpikeDb delayed;
                delayed.horizon_ms = exec.exec_horizon_ms;
                // accumulated shifts can outlast the final pump pulse
                for (const auto &train : exec.observed_trains) {
                    if (!train.empty()) {
                        delayed.horizon_ms =
                                std::max(delayed.horizon_ms, train.back());
                    }
                }
                delayed.trains = exec.observed_trains;
                pumpsim::write_trace(data.network, delayed,
                        opt.dump_delayed_trace);
            }
        }
        return row;
    };

    rows.push_back(evaluate(never));
    if (!(policy == never)) {
        rows.push_back(evaluate(policy));
    }
    pumpsim::normalize_rows(rows);
    std::vector<pumpsim::ReportRow> emitted = {rows.back()};

    if (opt.out.empty() || opt.out == "-") {
        pumpsim::emit_report(emitted, opt.format, std::cout);
    } else {
        pumpsim::emit_report(emitted, opt.format, opt.out);
    }
    return 0;
}

int run_sweep_cmd(const SweepOptions &opt)
{
    pumpsim::SweepPlan plan = pumpsim::load_plan(opt.plan);
    if (!opt.out.empty()) {
        plan.out_path = opt.out;
    }
    if (!opt.format.empty()) {
        plan.format = opt.format;
    }
    if (opt.jobs > 0) {
        plan.jobs = opt.jobs;
    }
    if (opt.seed_set) {
        plan.seed = opt.seed;
    }
    for (const std::string &kv : opt.overrides) {
        pumpsim::ToolConfig cfg{plan.hw, plan.nbti};
        pumpsim::apply_config_override(cfg, kv);
        plan.hw = cfg.hw;
        plan.nbti = cfg.nbti;
    }

    const auto rows = pumpsim::run_sweep(plan);
    if (plan.out_path.empty() || plan.out_path == "-") {
        pumpsim::emit_report(rows, plan.format, std::cout);
    } else {
        pumpsim::emit_report(rows, plan.format, plan.out_path);
        std::printf("wrote %s (%zu rows)\n", plan.out_path.c_str(), rows.size());
    }
    int failures = 0;
    for (const auto &row : rows) {
        if (row.status != "ok") {
            ++failures;
        }
    }
    if (failures > 0) {
        std::fprintf(stderr, "%d of %zu cells failed; see the status column\n",
                failures, rows.size());
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Charge-pump aging and ISI evaluation for crossbar-mapped "
                 "SNN workloads"};
    app.require_subcommand(1);

    GenOptions gen;
    auto *cmd_gen = app.add_subcommand("gen",
            "Generate a synthetic Poisson workload trace");
    cmd_gen->add_option("--out", gen.out, "Output trace file")->required();
    cmd_gen->add_option("--neurons", gen.neurons, "Neuron count");
    cmd_gen->add_option("--synapses", gen.synapses,
            "Synapse count (random topology)");
    cmd_gen->add_option("--in-degree", gen.in_degree,
            "Regular in-degree topology instead of random edges");
    cmd_gen->add_option("--rate-hz", gen.rate_hz, "Median firing rate");
    cmd_gen->add_option("--rate-skew", gen.rate_skew,
            "Lognormal sigma for skewed per-neuron rates");
    cmd_gen->add_option("--horizon-ms", gen.horizon_ms, "Trace horizon");
    cmd_gen->add_option("--weight-min", gen.weight_min, "Minimum weight");
    cmd_gen->add_option("--weight-max", gen.weight_max, "Maximum weight");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");

    MapOptions map_opt;
    auto *cmd_map = app.add_subcommand("map",
            "Map a trace onto crossbars and report cut/utilization stats");
    cmd_map->add_option("--trace", map_opt.trace, "Input trace")->required();
    cmd_map->add_option("--config", map_opt.config, "Hardware config file");
    cmd_map->add_option("--set", map_opt.overrides,
            "Config override key=value (repeatable)");
    cmd_map->add_option("--strategy", map_opt.strategy,
            "roundrobin|balanced|mincomm");
    cmd_map->add_option("--seed", map_opt.seed, "RNG seed (mincomm)");
    cmd_map->add_option("--out", map_opt.out, "Output mapping file")->required();

    EvalOptions eval;
    auto *cmd_eval = app.add_subcommand("eval",
            "Evaluate one trace + mapping + policy cell");
    cmd_eval->add_option("--trace", eval.trace, "Input trace")->required();
    cmd_eval->add_option("--config", eval.config, "Hardware config file");
    cmd_eval->add_option("--set", eval.overrides,
            "Config override key=value (repeatable)");
    cmd_eval->add_option("--mapping", eval.mapping_path, "Mapping file");
    cmd_eval->add_option("--strategy", eval.strategy,
            "Compute the mapping instead: roundrobin|balanced|mincomm");
    cmd_eval->add_option("--policy", eval.policy,
            "never|perspike|interval:<ms>");
    cmd_eval->add_option("--format", eval.format, "csv|json");
    cmd_eval->add_option("--out", eval.out, "Output path, '-' for stdout");
    cmd_eval->add_option("--dump-schedule", eval.dump_schedule,
            "Write per-pump voltage segments to this file");
    cmd_eval->add_option("--dump-delayed-trace", eval.dump_delayed_trace,
            "Write the delayed trains as a trace file");
    cmd_eval->add_option("--seed", eval.seed, "RNG seed");

    SweepOptions sweep;
    auto *cmd_sweep = app.add_subcommand("sweep",
            "Run a (strategy x placement x policy) grid from a JSON plan");
    cmd_sweep->add_option("--plan", sweep.plan, "Plan file")->required();
    cmd_sweep->add_option("--out", sweep.out, "Override plan output path");
    cmd_sweep->add_option("--format", sweep.format, "Override plan format");
    cmd_sweep->add_option("--set", sweep.overrides,
            "Config override key=value (repeatable)");
    cmd_sweep->add_option("--jobs", sweep.jobs, "Parallel cells");
    cmd_sweep->add_option("--seed", sweep.seed, "Override plan seed")
            ->each([&sweep](const std::string &) { sweep.seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_gen->parsed()) {
            return run_gen(gen);
        }
        if (cmd_map->parsed()) {
            return run_map(map_opt);
        }
        if (cmd_eval->parsed()) {
            return run_eval(eval);
        }
        if (cmd_sweep->parsed()) {
            return run_sweep_cmd(sweep);
        }
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    } catch (const pumpsim::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
