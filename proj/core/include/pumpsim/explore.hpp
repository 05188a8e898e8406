#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pumpsim/engine.hpp"
#include "pumpsim/hardware.hpp"
#include "pumpsim/network.hpp"
#include "pumpsim/spikes.hpp"

namespace pumpsim {

enum class MappingStrategy { round_robin, balanced, min_comm };

std::string strategy_to_string(MappingStrategy s);
MappingStrategy strategy_parse(const std::string &text);

struct SyntheticWorkload {
    int neurons = 50;
    int synapses = 500;
    int in_degree = 0; // 0 = uniform random edges, otherwise regular in-degree
    double rate_hz = 10.0;
    double rate_skew = 0.0; // lognormal sigma; 0 = uniform rates
    double horizon_ms = 1000.0;
    double weight_min = 0.5;
    double weight_max = 1.5;
};

struct WorkloadSource {
    std::string trace_path; // used when non-empty
    SyntheticWorkload synth;
};

struct SweepPlan {
    WorkloadSource workload;
    HardwareSpec hw;
    NbtiParams nbti;
    std::vector<MappingStrategy> strategies;
    std::vector<DischargePolicy> policies;
    std::vector<std::vector<int>> placements; // one pump index per crossbar
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv"; // csv | json
    int jobs = 1;
};

/// One evaluated (strategy, policy, placement) cell. Aggregate columns carry
/// their aggregation in the name; *_sum columns are the per-synapse
/// attribution totals, *_schedule columns the merged-schedule aggregates.
/// runtime_ms is wall clock and excluded from determinism guarantees.
struct ReportRow {
    std::string strategy;
    std::string policy;
    int placement_id = 0;
    std::string placement; // semicolon-joined pump indices
    std::uint64_t seed = 0;
    std::string status = "ok"; // or "error: <stage>: <what>"

    int neurons = 0;
    int synapses = 0;
    int crossbars = 0;
    int pumps = 0;

    std::int64_t spikes_total = 0;
    std::int64_t cut_spikes = 0;
    std::int64_t spikes_delayed = 0;
    double total_added_delay_ms = 0.0;
    double exec_horizon_ms = 0.0;

    double mean_isi_ms = 0.0;
    double mean_isi_change = 0.0; // vs. the undelayed input trains
    int isi_defined = 0;
    int isi_excluded = 0;

    double aging_sum_total = 0.0;
    double aging_sum_mean = 0.0;
    double aging_sum_max = 0.0;
    double aging_schedule_total = 0.0;
    double aging_schedule_mean = 0.0;
    double aging_schedule_max = 0.0;

    std::int64_t util_total = 0;
    std::int64_t util_max = 0;

    // Each metric divided by the never-policy row of the same strategy and
    // placement; 0 when that baseline row is absent.
    double norm_aging_sum_total = 0.0;
    double norm_aging_sum_max = 0.0;
    double norm_aging_schedule_total = 0.0;
    double norm_aging_schedule_max = 0.0;
    double norm_mean_isi = 0.0;
    double norm_mean_isi_change = 0.0;

    std::vector<double> pump_aging_sum;
    std::vector<double> pump_aging_schedule;
    std::vector<double> pump_reliability;
    std::vector<double> pump_mttf_ms; // -1 for pumps that accumulate no aging
    std::vector<std::int64_t> crossbar_util;

    double runtime_ms = 0.0;
};

/// Full pipeline for one cell: map -> replay -> ISI -> aging. The hardware
/// spec already carries the placement under evaluation. Normalized columns
/// are left at zero; normalize_rows fills them.
ReportRow run_single(const Network &net, const SpikeDb &db,
        MappingStrategy strategy, const DischargePolicy &policy,
        const HardwareSpec &spec, const NbtiParams &nbti, std::uint64_t seed);

/// Cartesian product of the plan axes in (strategy, placement, policy) order.
/// Cell failures are recorded in the row's status and the sweep continues.
std::vector<ReportRow> run_sweep(const SweepPlan &plan);

/// Fills the normalized columns against each group's never-policy row.
void normalize_rows(std::vector<ReportRow> &rows);

/// Loads or generates the plan's workload (deterministic for a fixed seed).
void materialize_workload(const WorkloadSource &source, std::uint64_t seed,
        Network &net, SpikeDb &db);

std::string report_to_csv(const std::vector<ReportRow> &rows);
std::vector<ReportRow> report_from_csv(const std::string &text);
std::string report_to_json(const std::vector<ReportRow> &rows);
std::vector<ReportRow> report_from_json(const std::string &text);

void emit_report(const std::vector<ReportRow> &rows, const std::string &format,
        std::ostream &out);
void emit_report(const std::vector<ReportRow> &rows, const std::string &format,
        const std::string &path);

/// JSON sweep plan; see the README for the schema.
SweepPlan load_plan(const std::string &path);

} // namespace pumpsim
