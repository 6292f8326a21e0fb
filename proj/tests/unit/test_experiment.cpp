#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wealthnet/bundle.hpp"
#include "wealthnet/config.hpp"
#include "wealthnet/experiment.hpp"
#include "wealthnet/presets.hpp"

using namespace wealthnet;
namespace fs = std::filesystem;

namespace {

SimConfig small(bool network)
{
    SimConfig c;
    c.n = 60;
    c.mcs_budget = 20000;
    c.realizations = 6;
    c.stride = 1000;
    c.snapshot_times = {10000, 20000};
    if (network) {
        c.network.fully_connected = false;
        c.network.k_max = 3;
    }
    return c;
}

void check_identical(const std::vector<RealizationResult>& a, const std::vector<RealizationResult>& b)
{
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].seed == b[r].seed);
        CHECK(a[r].realized_mean_degree == b[r].realized_mean_degree);
        const auto& ta = a[r].trajectory;
        const auto& tb = b[r].trajectory;
        REQUIRE(ta.series.size() == tb.series.size());
        for (std::size_t k = 0; k < ta.series.size(); ++k) {
            CHECK(ta.series[k].entropy == tb.series[k].entropy);
            CHECK(ta.series[k].poverty == tb.series[k].poverty);
        }
        REQUIRE(ta.snapshots.size() == tb.snapshots.size());
        for (std::size_t k = 0; k < ta.snapshots.size(); ++k)
            CHECK(ta.snapshots[k].counts == tb.snapshots[k].counts);
        CHECK(ta.t_c == tb.t_c);
        CHECK(ta.trades == tb.trades);
    }
}

fs::path scratch_dir(const char* name)
{
    const auto dir = fs::temp_directory_path() / ("wealthnet_test_" + std::string(name));
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parallel runner matches the serial reference bit for bit")
{
    for (bool network : {false, true}) {
        for (const auto& rule : {ExchangeRule::additive(20), ExchangeRule::multiplicative(0.2, true)}) {
            auto c = small(network);
            c.rule = rule;
            c.workers = 4;
            check_identical(run_realizations_serial(c), run_realizations_parallel(c));
        }
    }
}

TEST_CASE("shared network mode reuses one topology")
{
    auto c = small(true);
    c.single_network = true;
    const auto runs = run_realizations_serial(c);
    for (const auto& r : runs)
        CHECK(r.realized_mean_degree == runs.front().realized_mean_degree);
    check_identical(runs, run_realizations_parallel(c));
}

TEST_CASE("realization seeds are distinct and their streams differ")
{
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < 10000; ++r)
        seeds.insert(realization_seed(20130101, r));
    CHECK(seeds.size() == 10000);

    // first 10^4 draws of neighbouring streams never coincide position by position
    for (std::uint64_t r = 0; r < 8; ++r) {
        Engine a(realization_seed(1, r)), b(realization_seed(1, r + 1));
        std::size_t equal = 0;
        for (int k = 0; k < 10000; ++k)
            equal += a() == b();
        CHECK(equal == 0);
    }
    CHECK(realization_seed(5, 0) != 5);
    CHECK(sweep_seed(5, 100.0) != sweep_seed(5, 200.0));
}

TEST_CASE("aggregate averages series and pools snapshots")
{
    const auto c = small(false);
    const auto res = run_experiment(c, Execution::serial);
    REQUIRE(res.realizations.size() == 6);
    REQUIRE(res.pooled_snapshots.size() == 2);
    CHECK(res.pooled_snapshots[1].n == 360);
    CHECK(res.pooled_snapshots[1].total_wealth() == 36000);
    double mean_entropy = 0.0;
    for (const auto& r : res.realizations)
        mean_entropy += r.trajectory.series.back().entropy;
    CHECK(res.series.back().entropy == doctest::Approx(mean_entropy / 6.0));
    CHECK(res.conserved);
    CHECK(res.mean_realized_degree == 59.0);
}

TEST_CASE("config file parsing")
{
    const auto dir = scratch_dir("config");
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "run.cfg");
        out << "# test\n n = 250\nrule = multiplicative  # yard sale\nnu=0.4\nbankruptcy = true\n"
               "kmax = 4\nmcs = 1000\nsnapshots = 100, 500,1000\nseed = 9\n";
    }
    const auto c = load_config(dir / "run.cfg");
    CHECK(c.n == 250);
    CHECK(c.rule.kind == RuleKind::multiplicative);
    CHECK(c.rule.nu == 0.4);
    CHECK(c.rule.bankruptcy);
    CHECK_FALSE(c.network.fully_connected);
    CHECK(c.network.k_max == 4);
    CHECK(c.mcs_budget == 1000);
    CHECK(c.snapshot_times == std::vector<std::uint64_t>{100, 500, 1000});
    CHECK(c.seed == 9);

    // round trip through the key = value dump
    {
        std::ofstream out(dir / "dump.cfg");
        out << to_key_values(c);
    }
    const auto d = load_config(dir / "dump.cfg");
    CHECK(to_key_values(d) == to_key_values(c));

    SimConfig e;
    CHECK_THROWS_AS(apply_setting(e, "colour", "red"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(e, "n", "12x"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(e, "rule", "random"), std::invalid_argument);
    e.mcs_budget = 10;
    e.snapshot_times = {20};
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("sweep configs force bankruptcy and derive seeds from values")
{
    SimConfig base;
    const auto a = sweep_config(base, SweepParam::n, 200);
    CHECK(a.n == 200);
    CHECK(a.rule.bankruptcy);
    CHECK(a.seed == sweep_seed(base.seed, 200.0));
    const auto b = sweep_config(base, SweepParam::dw, 34);
    CHECK(b.rule.c == 34);
    CHECK_THROWS_AS(sweep_config(base, SweepParam::nu, 0.2), std::invalid_argument);
    base.rule = ExchangeRule::multiplicative(0.2);
    CHECK(sweep_config(base, SweepParam::nu, 0.4).rule.nu == 0.4);
    CHECK_THROWS_AS(sweep_config(base, SweepParam::dw, 20), std::invalid_argument);
    CHECK_THROWS_AS(sweep_config(base, SweepParam::n, 10.5), std::invalid_argument);
    CHECK(parse_sweep_param("kmax") == SweepParam::k_max);
    CHECK_THROWS_AS(parse_sweep_param("k"), std::invalid_argument);
}

TEST_CASE("sweep rows do not depend on the order of values")
{
    SimConfig base;
    base.rule = ExchangeRule::multiplicative(0.2);
    base.realizations = 4;
    base.mcs_budget = 2000000;
    base.stride = 0;
    const std::vector<double> forward{20, 40, 80};
    const std::vector<double> backward{80, 20, 40};
    const auto f = sweep(base, SweepParam::n, forward);
    const auto b = sweep(base, SweepParam::n, backward);
    auto row = [](const SweepResult& r, double v) {
        for (const auto& x : r.rows)
            if (x.value == v)
                return x;
        FAIL("missing row");
        return SweepRow{};
    };
    for (double v : forward) {
        CHECK(row(f, v).t_c == row(b, v).t_c);
        CHECK(row(f, v).complete());
    }
    REQUIRE(f.scaling);
    REQUIRE(b.scaling);
    CHECK(f.scaling->p2 == doctest::Approx(b.scaling->p2).epsilon(1e-12));
}

TEST_CASE("output bundle layout")
{
    auto c = small(false);
    const auto dir = scratch_dir("bundle");
    write_bundle(dir, run_experiment(c));
    CHECK(fs::exists(dir / "series.csv"));
    CHECK(fs::exists(dir / "snapshot_10000.csv"));
    CHECK(fs::exists(dir / "snapshot_20000.csv"));
    CHECK(fs::exists(dir / "tc.csv"));
    CHECK(fs::exists(dir / "fits.csv"));
    CHECK(fs::exists(dir / "meta"));
    CHECK(slurp(dir / "series.csv").rfind("t,entropy,poverty\n", 0) == 0);
    CHECK(slurp(dir / "snapshot_20000.csv").rfind("wealth,count,wealth_over_mean\n", 0) == 0);
    CHECK(slurp(dir / "fits.csv").rfind("form,range_lo,range_hi,p1,p2,residual\n", 0) == 0);
    CHECK(slurp(dir / "meta").find("seed = 20130101") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("every preset resolves to valid configurations")
{
    for (const auto& name : preset_names()) {
        const auto p = figure_preset(name);
        CHECK_FALSE(p.runs.empty());
        for (const auto& run : p.runs) {
            CHECK_NOTHROW(run.config.validate());
            if (run.kind == PresetKind::sweep)
                for (double v : run.sweep_values)
                    CHECK_NOTHROW(sweep_config(run.config, run.sweep_param, v));
        }
    }
    CHECK_THROWS_AS(figure_preset("fig99"), std::invalid_argument);
}
