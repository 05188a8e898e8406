#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pumpsim/config_io.hpp"
#include "pumpsim/explore.hpp"
#include "pumpsim/synth.hpp"
#include "pumpsim/trace_io.hpp"

using namespace pumpsim;

namespace {

// Drop the trailing runtime_ms column from every CSV line.
std::string strip_runtime(const std::string &csv)
{
    std::istringstream in(csv);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        out += line.substr(0, pos);
        out.push_back('\n');
    }
    return out;
}

SweepPlan poisson_plan(std::uint64_t seed)
{
    SweepPlan plan;
    plan.workload.synth.neurons = 30;
    plan.workload.synth.synapses = 240;
    plan.workload.synth.in_degree = 8;
    plan.workload.synth.rate_hz = 12.0;
    plan.workload.synth.horizon_ms = 600.0;
    plan.strategies = {MappingStrategy::round_robin};
    plan.policies = {DischargePolicy::fixed_interval(10.0),
            DischargePolicy::fixed_interval(50.0),
            DischargePolicy::fixed_interval(100.0), DischargePolicy::never()};
    plan.seed = seed;
    return plan;
}

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("run_single on a trivial workload yields a quiet baseline row")
{
    Network net;
    net.neuron_count = 1;
    SpikeDb db;
    db.horizon_ms = 50.0;
    db.trains.resize(1);
    const HardwareSpec spec;
    const NbtiParams nbti;
    const ReportRow row = run_single(net, db, MappingStrategy::round_robin,
            DischargePolicy::never(), spec, nbti, 1);
    CHECK(row.status == "ok");
    CHECK(row.cut_spikes == 0);
    CHECK(row.spikes_total == 0);
    CHECK(row.total_added_delay_ms == 0.0);
    CHECK(row.aging_sum_total == 0.0); // no synapses to attribute aging to
    // merged pump schedules still age at the idle level
    for (double a : row.pump_aging_schedule) {
        CHECK(a == doctest::Approx(std::pow(1.8 - 0.45, 2.0) * 50.0));
    }
    for (double mttf : row.pump_mttf_ms) {
        CHECK(mttf == -1.0); // unloaded pump sentinel
    }
}

TEST_CASE("run_single shows the aging/performance trade-off on the "
          "motivating single-synapse workload")
{
    Network net;
    net.neuron_count = 2;
    net.synapses.push_back({0, 0, 1, 1.0});
    SpikeDb db;
    db.horizon_ms = 60.0;
    db.trains.resize(2);
    for (int i = 0; i < 11; ++i) {
        db.trains[0].push_back(0.5 + 5.9 * i);
    }
    HardwareSpec spec;
    spec.crossbar_count = 1;
    spec.pump_count = 1;
    spec.placement = {0};
    const NbtiParams nbti;

    const ReportRow never = run_single(net, db, MappingStrategy::round_robin,
            DischargePolicy::never(), spec, nbti, 1);
    const ReportRow per_spike = run_single(net, db,
            MappingStrategy::round_robin, DischargePolicy::per_spike(), spec,
            nbti, 1);
    CHECK(per_spike.aging_sum_total < never.aging_sum_total);
    CHECK(per_spike.aging_schedule_total < never.aging_schedule_total);
    CHECK(per_spike.mean_isi_ms > never.mean_isi_ms);
    CHECK(never.mean_isi_ms == doctest::Approx(5.9).epsilon(1e-9));
    CHECK(per_spike.mean_isi_ms == doctest::Approx(7.4).epsilon(1e-9));
    CHECK(per_spike.mean_isi_change == doctest::Approx(1.5 / 5.9).epsilon(1e-9));
}

TEST_CASE("run_single is byte-deterministic for a fixed seed")
{
    Network net;
    SpikeDb db;
    SweepPlan plan = poisson_plan(7);
    materialize_workload(plan.workload, plan.seed, net, db);
    const HardwareSpec spec;
    const NbtiParams nbti;
    const ReportRow a = run_single(net, db, MappingStrategy::min_comm,
            DischargePolicy::fixed_interval(20.0), spec, nbti, 7);
    const ReportRow b = run_single(net, db, MappingStrategy::min_comm,
            DischargePolicy::fixed_interval(20.0), spec, nbti, 7);
    CHECK(strip_runtime(report_to_csv({a})) == strip_runtime(report_to_csv({b})));
}

TEST_CASE("materialize_workload is deterministic and honors trace sources")
{
    const SweepPlan plan = poisson_plan(3);
    Network net_a;
    SpikeDb db_a;
    materialize_workload(plan.workload, 3, net_a, db_a);
    Network net_b;
    SpikeDb db_b;
    materialize_workload(plan.workload, 3, net_b, db_b);
    CHECK(db_a.trains == db_b.trains);
    CHECK(net_a.synapse_count() == net_b.synapse_count());

    const auto path = temp_file("pumpsim_explore_trace.txt");
    write_trace(net_a, db_a, path.string());
    WorkloadSource source;
    source.trace_path = path.string();
    Network net_c;
    SpikeDb db_c;
    materialize_workload(source, 99, net_c, db_c);
    CHECK(db_c.trains == db_a.trains);
    std::filesystem::remove(path);
}

TEST_CASE("a never-only sweep normalizes to exactly 1.0")
{
    SweepPlan plan = poisson_plan(5);
    plan.policies = {DischargePolicy::never()};
    const auto rows = run_sweep(plan);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "ok");
    CHECK(rows[0].norm_aging_sum_total == 1.0);
    CHECK(rows[0].norm_aging_sum_max == 1.0);
    CHECK(rows[0].norm_aging_schedule_total == 1.0);
    CHECK(rows[0].norm_aging_schedule_max == 1.0);
    CHECK(rows[0].norm_mean_isi == 1.0);
    CHECK(rows[0].norm_mean_isi_change == 1.0);
}

TEST_CASE("discharge-interval sweep: aging rises and ISI deviation falls "
          "with the interval")
{
    const auto rows = run_sweep(poisson_plan(11));
    REQUIRE(rows.size() == 4);
    for (const auto &row : rows) {
        CHECK(row.status == "ok");
    }
    // plan order: 10, 50, 100, never
    CHECK(rows[0].norm_aging_sum_total <= rows[1].norm_aging_sum_total);
    CHECK(rows[1].norm_aging_sum_total <= rows[2].norm_aging_sum_total);
    CHECK(rows[2].norm_aging_sum_total <= 1.0);
    CHECK(rows[3].norm_aging_sum_total == 1.0);
    CHECK(rows[0].norm_mean_isi_change >=
            rows[1].norm_mean_isi_change);
    CHECK(rows[1].norm_mean_isi_change >= rows[2].norm_mean_isi_change);
    CHECK(rows[2].norm_mean_isi_change >= 1.0);
}

TEST_CASE("sweep rows cover the full strategy x placement x policy grid")
{
    SweepPlan plan = poisson_plan(13);
    plan.strategies = {MappingStrategy::round_robin, MappingStrategy::balanced};
    plan.placements = {{0, 0, 0, 1, 1, 1}, {0, 1, 0, 1, 0, 1}};
    const auto rows = run_sweep(plan);
    CHECK(rows.size() == 2 * 2 * 4);
    int ok = 0;
    for (const auto &row : rows) {
        if (row.status == "ok") {
            ++ok;
        }
    }
    CHECK(ok == static_cast<int>(rows.size()));
}

TEST_CASE("cell failures are isolated; the sweep continues")
{
    SweepPlan plan = poisson_plan(17);
    // interval shorter than the recovery time is rejected per cell
    plan.policies = {DischargePolicy::never(),
            DischargePolicy::fixed_interval(1.0)};
    const auto rows = run_sweep(plan);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status.rfind("error:", 0) == 0);
    CHECK(rows[1].norm_aging_sum_total == 0.0);
}

TEST_CASE("parallel sweeps produce the same bytes as sequential ones")
{
    SweepPlan plan = poisson_plan(19);
    plan.strategies = {MappingStrategy::round_robin, MappingStrategy::balanced,
            MappingStrategy::min_comm};
    const auto sequential = run_sweep(plan);
    plan.jobs = 4;
    const auto parallel = run_sweep(plan);
    CHECK(strip_runtime(report_to_csv(sequential)) ==
            strip_runtime(report_to_csv(parallel)));
}

TEST_CASE("identical plans and seeds give byte-identical reports")
{
    const auto a = run_sweep(poisson_plan(23));
    const auto b = run_sweep(poisson_plan(23));
    CHECK(strip_runtime(report_to_csv(a)) == strip_runtime(report_to_csv(b)));
    CHECK(strip_runtime(report_to_json(a)) != ""); // sanity: emitter works
}

TEST_CASE("emit_report writes a header plus one line per row")
{
    Network net;
    net.neuron_count = 1;
    SpikeDb db;
    db.horizon_ms = 10.0;
    db.trains.resize(1);
    const ReportRow row = run_single(net, db, MappingStrategy::round_robin,
            DischargePolicy::never(), HardwareSpec{}, NbtiParams{}, 1);
    std::ostringstream out;
    emit_report({row}, "csv", out);
    int lines = 0;
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line)) {
        ++lines;
    }
    CHECK(lines == 2);
    CHECK_THROWS_AS(emit_report({}, "csv", out), std::invalid_argument);
    CHECK_THROWS_AS(emit_report({row}, "xml", out), std::invalid_argument);
}

TEST_CASE("CSV reports round-trip losslessly")
{
    const auto rows = run_sweep(poisson_plan(29));
    const std::string csv = report_to_csv(rows);
    const auto parsed = report_from_csv(csv);
    CHECK(report_to_csv(parsed) == csv);
}

TEST_CASE("JSON and CSV emissions carry identical values")
{
    const auto rows = run_sweep(poisson_plan(31));
    const auto from_json = report_from_json(report_to_json(rows));
    CHECK(report_to_csv(from_json) == report_to_csv(rows));
}

TEST_CASE("sweep plans load from JSON with config layering")
{
    const auto config_path = temp_file("pumpsim_explore_config.txt");
    {
        std::ofstream cfg(config_path);
        cfg << "crossbar_count=4\n"
            << "pump_count=2\n"
            << "placement=0,0,1,1\n"
            << "t_recover_ms=2\n";
    }
    const auto plan_path = temp_file("pumpsim_explore_plan.json");
    {
        std::ofstream plan(plan_path);
        plan << R"({
            "workload": {"generate": {"neurons": 10, "synapses": 40,
                          "rate_hz": 15, "horizon_ms": 200}},
            "config": ")" << config_path.string() << R"(",
            "hardware": {"t_hop_ms": 0.02},
            "nbti": {"v_th": 0.3},
            "strategies": ["roundrobin", "mincomm"],
            "policies": ["never", "perspike", "interval:25"],
            "seed": 5,
            "format": "json",
            "jobs": 2
        })";
    }
    const SweepPlan plan = load_plan(plan_path.string());
    CHECK(plan.hw.crossbar_count == 4);
    CHECK(plan.hw.placement == std::vector<int>{0, 0, 1, 1});
    CHECK(plan.hw.t_recover_ms == 2.0);
    CHECK(plan.hw.t_hop_ms == 0.02); // inline override beats the file
    CHECK(plan.nbti.v_th == 0.3);
    CHECK(plan.strategies.size() == 2);
    CHECK(plan.policies.size() == 3);
    CHECK(plan.seed == 5);
    CHECK(plan.format == "json");
    CHECK(plan.jobs == 2);

    const auto rows = run_sweep(plan);
    CHECK(rows.size() == 6);
    for (const auto &row : rows) {
        CHECK(row.status == "ok");
    }
    std::filesystem::remove(config_path);
    std::filesystem::remove(plan_path);

    CHECK_THROWS_AS(load_plan("/nonexistent/plan.json"), ConfigError);
}
