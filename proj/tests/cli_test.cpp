// End-to-end exercise of the command-line surface: gen -> map -> eval ->
// sweep, exit codes, and dump files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pumpsim/explore.hpp"
#include "pumpsim/mapping.hpp"
#include "pumpsim/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = PUMPSIM_CLI_PATH;

int run(const std::string &args)
{
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path &path)
{
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
                ("pumpsim_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char *name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gen, map, eval and sweep chain end to end")
{
    TempDir dir;
    const std::string trace = dir.file("wl.trace");
    const std::string mapping = dir.file("wl.map");
    const std::string report = dir.file("row.csv");
    const std::string sched = dir.file("sched.txt");
    const std::string delayed = dir.file("delayed.trace");

    CHECK(run("gen --out " + trace +
              " --neurons 30 --synapses 200 --rate-hz 12 --horizon-ms 400"
              " --seed 3") == 0);
    const pumpsim::TraceData data = pumpsim::load_trace(trace);
    CHECK(data.network.neuron_count == 30);
    CHECK(data.network.synapse_count() == 200);

    CHECK(run("map --trace " + trace + " --strategy mincomm --seed 3 --out " +
              mapping) == 0);
    const auto partition = pumpsim::load_partition(mapping, 30);
    CHECK(partition.crossbar_of.size() == 30);

    CHECK(run("eval --trace " + trace + " --mapping " + mapping +
              " --policy interval:20 --format csv --out " + report +
              " --dump-schedule " + sched + " --dump-delayed-trace " +
              delayed) == 0);
    const auto rows = pumpsim::report_from_csv(slurp(report));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].policy == "interval:20");
    CHECK(rows[0].status == "ok");
    CHECK(rows[0].norm_aging_sum_total < 1.0); // normalized against never
    CHECK(rows[0].spikes_total > 0);

    // dumps parse back
    CHECK(slurp(sched).rfind("PUMP,0,0,", 0) == 0);
    const pumpsim::TraceData delayed_data = pumpsim::load_trace(delayed);
    CHECK(delayed_data.spikes.total_spikes() == data.spikes.total_spikes());

    // eval computing its own mapping, json to stdout
    CHECK(run("eval --trace " + trace +
              " --strategy balanced --policy perspike --format json") == 0);

    const std::string plan = dir.file("plan.json");
    {
        std::ofstream p(plan);
        p << R"({"workload": {"trace": ")" << trace << R"("},
             "strategies": ["roundrobin", "balanced"],
             "policies": ["never", "interval:25"],
             "seed": 9, "format": "csv"})";
    }
    const std::string sweep_out = dir.file("sweep.csv");
    CHECK(run("sweep --plan " + plan + " --out " + sweep_out + " --jobs 2") ==
            0);
    const auto sweep_rows = pumpsim::report_from_csv(slurp(sweep_out));
    CHECK(sweep_rows.size() == 4);
}

TEST_CASE("config files and overrides reach the pipeline")
{
    TempDir dir;
    const std::string trace = dir.file("wl.trace");
    REQUIRE(run("gen --out " + trace +
                " --neurons 12 --synapses 60 --rate-hz 10 --horizon-ms 200") ==
            0);

    const std::string config = dir.file("hw.cfg");
    {
        std::ofstream cfg(config);
        cfg << "crossbar_count=4\npump_count=2\nplacement=0,0,1,1\n";
    }
    const std::string mapping = dir.file("wl.map");
    CHECK(run("map --trace " + trace + " --config " + config +
              " --strategy roundrobin --out " + mapping) == 0);
    // partitions may only use the four configured crossbars
    for (int j : pumpsim::load_partition(mapping, 12).crossbar_of) {
        CHECK(j >= 0);
        CHECK(j < 4);
    }

    // --set overrides beat the file: an invalid placement must be rejected
    CHECK(run("map --trace " + trace + " --config " + config +
              " --set placement=0,0,0 --strategy roundrobin --out " +
              mapping) == 1);
}

TEST_CASE("exit codes distinguish usage, config, and runtime failures")
{
    TempDir dir;
    const std::string trace = dir.file("wl.trace");
    REQUIRE(run("gen --out " + trace +
                " --neurons 8 --synapses 20 --rate-hz 10 --horizon-ms 100") ==
            0);

    CHECK(run("") == 1);                       // missing subcommand
    CHECK(run("gen") == 1);                    // missing required --out
    CHECK(run("frobnicate") == 1);             // unknown subcommand
    CHECK(run("--help") == 0);

    // unknown policy string is a config error
    CHECK(run("eval --trace " + trace +
              " --strategy balanced --policy sometimes") == 1);
    // both or neither of --mapping/--strategy
    CHECK(run("eval --trace " + trace + " --policy never") == 1);
    // missing input file is a runtime failure
    CHECK(run("eval --trace " + dir.file("absent.trace") +
              " --strategy balanced --policy never") == 2);
    CHECK(run("sweep --plan " + dir.file("absent.json")) == 1);

    // malformed trace content is a runtime failure
    const std::string bad = dir.file("bad.trace");
    {
        std::ofstream out(bad);
        out << "T_MS=10\nNEURONS=2\nSPK,0,99\n";
    }
    CHECK(run("eval --trace " + bad + " --strategy balanced --policy never") ==
            2);
}
