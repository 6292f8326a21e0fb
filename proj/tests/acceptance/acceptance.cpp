// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wealthnet/config.hpp"
#include "wealthnet/experiment.hpp"
#include "wealthnet/fitting.hpp"
#include "wealthnet/gf.hpp"
#include "wealthnet/metrics.hpp"
#include "wealthnet/netgen.hpp"

using namespace wealthnet;

namespace {

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Conservation ledger shared by every simulation below.
struct ConservationLog
{
    std::size_t experiments = 0;
    std::size_t histograms = 0;
    std::vector<std::string> failures;

    void check(const ExperimentResult& res)
    {
        ++experiments;
        const Wealth expected = static_cast<Wealth>(res.config.n) * res.config.mean_w;
        for (std::size_t r = 0; r < res.realizations.size(); ++r) {
            const auto& tr = res.realizations[r].trajectory;
            if (!tr.conserved || tr.final_state.recount() != expected || tr.final_state.total() != expected)
                failures.push_back("realization " + std::to_string(r) + " of experiment " +
                                   std::to_string(experiments));
            for (const auto& h : tr.snapshots) {
                ++histograms;
                if (h.total_wealth() != expected || h.n != res.config.n)
                    failures.push_back("snapshot t=" + std::to_string(h.t));
            }
        }
        for (const auto& h : res.pooled_snapshots)
            if (h.total_wealth() != expected * static_cast<Wealth>(res.realizations.size()))
                failures.push_back("pooled snapshot t=" + std::to_string(h.t));
    }
};

ConservationLog conservation;

ExperimentResult simulate(const SimConfig& c)
{
    auto res = run_experiment(c);
    conservation.check(res);
    return res;
}

SimConfig paper_defaults()
{
    return SimConfig{};
}

double mean_of(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> condensation_times(const ExperimentResult& res, std::size_t& missing)
{
    std::vector<double> out;
    missing = 0;
    for (const auto& t : res.condensation_times()) {
        if (t)
            out.push_back(static_cast<double>(*t));
        else
            ++missing;
    }
    return out;
}

SimConfig condensation_config(RuleKind kind, std::size_t n, std::size_t realizations)
{
    SimConfig c;
    c.n = n;
    c.rule = kind == RuleKind::additive ? ExchangeRule::additive(20, true) : ExchangeRule::multiplicative(0.2, true);
    c.mcs_budget = 200000000;
    c.stride = 0;
    c.realizations = realizations;
    return c;
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o)
{
    const auto start = Clock::now();
    const struct
    {
        std::uint32_t k;
        Rational z1, z2;
    } table[] = {{2, Rational(3, 2), Rational(1)},
                 {3, Rational(2), Rational(8, 3)},
                 {4, Rational(5, 2), Rational(5)},
                 {20, Rational(21, 2), Rational(133)}};
    for (const auto& row : table) {
        const auto m = z1z2(row.k);
        o.require(m.z1 == row.z1 && m.z2 == row.z2, "z1, z2 at k_max=" + std::to_string(row.k));
        o.detail << " k" << row.k << "=(" << m.z1.str() << "," << m.z2.str() << ")";
    }
    for (std::uint32_t k = 1; k <= 100; ++k)
        o.require(has_giant(k) == (k >= 3), "has_giant at k_max=" + std::to_string(k));
    const double t = seconds_since(start);
    o.detail << " time=" << t << "s";
    o.require(t < 1.0, "runtime < 1 s");
}

void criterion_2(Outcome& o)
{
    const auto start = Clock::now();
    const auto table = component_sizes(2);
    const Rational p[] = {Rational(1, 6), Rational(1, 6), Rational(4, 27), Rational(10, 81), Rational(8, 81),
                          Rational(56, 729)};
    const Rational w[] = {Rational(1, 12), Rational(1, 18), Rational(1, 27), Rational(2, 81), Rational(4, 243),
                          Rational(8, 729)};
    for (std::size_t s = 2; s <= 7; ++s) {
        o.require(table.p[s] == p[s - 2], "P_" + std::to_string(s));
        o.require(table.weight[s] == w[s - 2], "chi_T chi(" + std::to_string(s) + ")");
    }
    o.detail << " P_2..7=";
    for (std::size_t s = 2; s <= 7; ++s)
        o.detail << table.p[s].str() << (s < 7 ? "," : "");
    const double t = seconds_since(start);
    o.detail << " time=" << t << "s";
    o.require(t < 1.0, "runtime < 1 s");
}

void criterion_3(Outcome& o)
{
    const auto start = Clock::now();
    const double u2 = solve_u(2), u3 = solve_u(3), u4 = solve_u(4);
    const double s2 = mean_component_size(2), s3 = mean_component_size(3), s4 = mean_component_size(4);
    o.detail << " u=(" << u2 << "," << u3 << "," << u4 << ") <s>=(" << s2 << "," << s3 << "," << s4 << ")";
    o.require(u2 == 1.0, "u(2) = 1");
    o.require(std::abs(u3 - 1.0 / 3.0) <= 1e-6, "u(3) = 1/3");
    o.require(std::abs(u4 - 0.1328) <= 1e-3, "u(4) = 0.1328");
    o.require(std::abs(s2 - 5.5) <= 1e-9, "<s>(2) = 5.5");
    o.require(std::abs(s3 - 5.1538) <= 1e-3, "<s>(3) = 5.1538");
    o.require(std::abs(s4 - 2.63) <= 0.05, "<s>(4) = 2.63");
    const double t = seconds_since(start);
    o.detail << " time=" << t << "s";
    o.require(t < 1.0, "runtime < 1 s");
}

void criterion_4(Outcome& o)
{
    const double sc = condensation_entropy(500);
    WealthHistogram h;
    h.counts = {{0, 499}, {50000, 1}};
    h.n = 500;
    const double sh = shannon_entropy(h);
    o.detail << " S_c=" << sc << " histogram=" << sh;
    o.require(std::abs(sc - 0.01442) <= 1e-4, "S_c = 0.01442");
    o.require(sh == sc, "histogram entropy equals S_c");
}

void criterion_5(Outcome& o)
{
    const SimConfig c = paper_defaults();
    const auto res = simulate(c);
    const auto& h = res.pooled_snapshots.back();
    const auto fit = fit_exponential(h, {0.0, 2.0 * static_cast<double>(c.mean_w)}, static_cast<double>(c.mean_w));
    o.detail << " t=" << h.t << " b=" << fit.p2 << " (range [0,2<w>], " << fit.points << " bins)";
    o.require(fit.p2 >= 0.9 && fit.p2 <= 1.1, "b in [0.9, 1.1]");

    // per-realization slope over the last 10% of the series
    std::vector<double> slopes;
    const std::uint64_t from = c.mcs_budget - c.mcs_budget / 10;
    for (const auto& r : res.realizations) {
        std::vector<double> x, y;
        for (const auto& p : r.trajectory.series)
            if (p.t >= from) {
                x.push_back(static_cast<double>(p.t));
                y.push_back(p.entropy);
            }
        slopes.push_back(least_squares(x, y).slope);
    }
    const double m = mean_of(slopes);
    double ss = 0.0;
    for (double s : slopes)
        ss += (s - m) * (s - m);
    const double se = std::sqrt(ss / static_cast<double>(slopes.size() - 1) / static_cast<double>(slopes.size()));
    o.detail << " plateau slope=" << m << "+-" << se << " per MCS";
    o.require(std::abs(m) <= 3.0 * se, "final-window entropy slope consistent with 0 at 3 sigma");
}

void criterion_6(Outcome& o)
{
    SimConfig c = paper_defaults();
    c.rule = ExchangeRule::multiplicative(0.2);
    const auto res = simulate(c);
    std::size_t shaped = 0;
    for (const auto& r : res.realizations) {
        double early_max = 0.0, final_value = 0.0;
        for (const auto& p : r.trajectory.series) {
            if (p.t < 100000)
                early_max = std::max(early_max, p.entropy);
            if (p.t == 400000)
                final_value = p.entropy;
        }
        shaped += early_max > final_value;
    }
    const double frac = static_cast<double>(shaped) / static_cast<double>(res.realizations.size());
    double avg_max = 0.0;
    for (const auto& p : res.series)
        if (p.t < 100000)
            avg_max = std::max(avg_max, p.entropy);
    o.detail << " realizations with early max > final: " << shaped << "/" << res.realizations.size()
             << " averaged max=" << avg_max << " averaged final=" << res.series.back().entropy;
    o.require(frac >= 0.95, ">= 95% of realizations");
    o.require(avg_max > res.series.back().entropy, "averaged entropy peaks then falls");
}

void criterion_7(Outcome& o)
{
    const double sc = condensation_entropy(500);
    double means[2] = {0.0, 0.0};
    for (RuleKind kind : {RuleKind::additive, RuleKind::multiplicative}) {
        const auto res = simulate(condensation_config(kind, 500, 20));
        std::size_t missing = 0;
        const auto tc = condensation_times(res, missing);
        const char* name = kind == RuleKind::additive ? "additive" : "multiplicative";
        o.require(missing == 0, std::string(name) + ": every realization condenses");
        for (const auto& r : res.realizations) {
            const auto& last = r.trajectory.series.back();
            o.require(last.poverty == 499, std::string(name) + ": final poverty 499");
            o.require(last.entropy == sc, std::string(name) + ": final entropy equals S_c");
        }
        if (!tc.empty())
            means[kind == RuleKind::additive ? 0 : 1] = mean_of(tc);
        o.detail << " " << name << " mean t_c=" << means[kind == RuleKind::additive ? 0 : 1] << " ("
                 << tc.size() << "/" << res.realizations.size() << ")";
    }
    o.require(means[1] < means[0], "multiplicative condenses faster");
}

void criterion_8(Outcome& o)
{
    const std::vector<double> sizes{100, 200, 400, 800};
    for (RuleKind kind : {RuleKind::additive, RuleKind::multiplicative}) {
        const SimConfig base = condensation_config(kind, 500, 50);
        std::vector<ScalingPoint> pts;
        for (double n : sizes) {
            const auto res = simulate(sweep_config(base, SweepParam::n, n));
            std::size_t missing = 0;
            const auto tc = condensation_times(res, missing);
            ScalingPoint p{n, std::nullopt};
            if (missing == 0)
                p.t_c = mean_of(tc);
            pts.push_back(p);
        }
        const char* name = kind == RuleKind::additive ? "additive" : "multiplicative";
        const double target = kind == RuleKind::additive ? 1.9 : 1.0;
        try {
            const auto fit = fit_scaling(pts);
            o.detail << " " << name << " exponent=" << fit.p2 << "+-" << fit.p2_stderr;
            o.require(std::abs(fit.p2 - target) <= 0.15, std::string(name) + " exponent within 0.15");
        } catch (const std::invalid_argument& e) {
            o.require(false, std::string(name) + ": " + e.what());
        }
    }
}

void criterion_9(Outcome& o)
{
    SimConfig base = condensation_config(RuleKind::additive, 500, 50);
    std::vector<std::vector<double>> plateau;
    for (double dw : {34.0, 40.0, 50.0}) {
        const auto res = simulate(sweep_config(base, SweepParam::dw, dw));
        std::size_t missing = 0;
        plateau.push_back(condensation_times(res, missing));
        o.require(missing == 0, "dw=" + std::to_string(static_cast<int>(dw)) + " condenses");
        o.detail << " dw" << dw << "=" << mean_of(plateau.back());
    }
    double min_p = 1.0;
    for (std::size_t a = 0; a < plateau.size(); ++a)
        for (std::size_t b = a + 1; b < plateau.size(); ++b)
            min_p = std::min(min_p, welch_t_test(plateau[a], plateau[b]).p_value);
    o.detail << " min pairwise p=" << min_p;
    o.require(min_p > 0.01, "min_ex = 2 plateau indistinguishable (p > 0.01)");

    double plateau_max = 0.0;
    for (const auto& v : plateau)
        plateau_max = std::max(plateau_max, mean_of(v));
    base.realizations = 20;
    double lower_min = std::numeric_limits<double>::infinity();
    for (int dw = 26; dw <= 33; ++dw) {
        const auto res = simulate(sweep_config(base, SweepParam::dw, dw));
        std::size_t missing = 0;
        const auto tc = condensation_times(res, missing);
        o.require(missing == 0, "dw=" + std::to_string(dw) + " condenses");
        if (!tc.empty())
            lower_min = std::min(lower_min, mean_of(tc));
    }
    o.detail << " min over dw 26..33=" << lower_min;
    o.require(plateau_max < lower_min, "min_ex = 2 plateau below every min_ex = 3 mean");

    SimConfig mul = condensation_config(RuleKind::multiplicative, 500, 50);
    double previous = std::numeric_limits<double>::infinity();
    o.detail << " nu:";
    for (double nu : {0.1, 0.2, 0.4}) {
        const auto res = simulate(sweep_config(mul, SweepParam::nu, nu));
        std::size_t missing = 0;
        const auto tc = condensation_times(res, missing);
        o.require(missing == 0, "nu condenses");
        const double m = tc.empty() ? 0.0 : mean_of(tc);
        o.detail << " " << nu << "->" << m;
        o.require(m < previous, "t_c strictly decreasing in nu");
        previous = m;
    }
}

SimConfig network_config(RuleKind kind, std::uint32_t k_max)
{
    SimConfig c = paper_defaults();
    if (kind == RuleKind::multiplicative)
        c.rule = ExchangeRule::multiplicative(0.2);
    c.network.fully_connected = false;
    c.network.k_max = k_max;
    c.snapshot_times = {399000};
    return c;
}

void criterion_10(Outcome& o)
{
    const SimConfig c = network_config(RuleKind::additive, 2);
    const auto res = simulate(c);
    const auto& h = res.pooled_snapshots.front();
    const double mw = static_cast<double>(c.mean_w);
    const auto expo = fit_exponential(h, {0.0, 2.0 * mw}, mw);
    const auto power = fit_power_law(h, {2.0 * mw + 1.0});
    o.detail << " <k>=" << res.mean_realized_degree << " b=" << expo.p2 << " alpha=" << power.p2 << " (range ["
             << power.range_lo << "," << power.range_hi << "])";
    o.require(std::abs(expo.p2 - 2.0) <= 0.3, "b = 2 +- 0.3");
    o.require(std::abs(power.p2 - 2.5) <= 0.5, "alpha = 2.5 +- 0.5");
}

void criterion_11(Outcome& o)
{
    const struct
    {
        std::uint32_t k;
        double b;
    } rows[] = {{3, 1.15}, {4, 1.1}, {20, 1.05}};
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        const SimConfig c = network_config(RuleKind::additive, row.k);
        const auto res = simulate(c);
        const auto fit = fit_exponential(res.pooled_snapshots.front(), {}, static_cast<double>(c.mean_w));
        o.detail << " <k>=" << res.mean_realized_degree << ":b=" << fit.p2;
        o.require(std::abs(fit.p2 - row.b) <= 0.1, "b at k_max=" + std::to_string(row.k));
        o.require(fit.p2 < previous, "b decreases with <k>");
        previous = fit.p2;
    }
}

void criterion_12(Outcome& o)
{
    const Wealth poor = 3;  // round(0.2 w) = 0 below 3
    {
        const SimConfig c = network_config(RuleKind::multiplicative, 2);
        const auto res = simulate(c);
        const double mw = static_cast<double>(c.mean_w);
        const auto classes = detect_classes(res.pooled_snapshots.front(), mw, 0.01, poor);
        o.detail << " k_max=2 zero=" << classes.zero_class_mass << " peaks/<w>:";
        for (const auto& p : classes.peaks)
            o.detail << " " << p.location / mw << "(" << p.mass << ")";
        o.require(classes.zero_class_mass > 0.0, "zero class present");
        for (double target : {1.8, 2.8, 3.8}) {
            const bool found = std::any_of(classes.peaks.begin(), classes.peaks.end(), [&](const ClassPeak& p) {
                return std::abs(p.location / mw - target) <= 0.2;
            });
            std::ostringstream what;
            what << "peak near " << target << "<w>";
            o.require(found, what.str());
        }
    }
    {
        const SimConfig c = network_config(RuleKind::multiplicative, 20);
        const auto res = simulate(c);
        const double mw = static_cast<double>(c.mean_w);
        const auto classes = detect_classes(res.pooled_snapshots.front(), mw, 0.01, poor);
        o.detail << " | k_max=20 zero=" << classes.zero_class_mass << " peaks/<w>:";
        for (const auto& p : classes.peaks)
            o.detail << " " << p.location / mw << "(" << p.mass << ")";
        o.require(classes.zero_class_mass > 0.0 && classes.peaks.size() == 1,
                  "k_max=20: zero class plus exactly one mode");
    }
}

void criterion_13(Outcome& o)
{
    {
        const auto table = component_sizes(2);
        std::vector<ComponentStats> stats;
        for (std::size_t r = 0; r < 100; ++r) {
            Engine rng(realization_seed(20130101, r));
            stats.push_back(components(wire_network(sample_degree_sequence(5000, 2, rng), rng)));
        }
        const auto emp = pooled_chi(stats);
        double l1 = 0.0;
        for (std::size_t s = 2; s <= 7; ++s) {
            const auto it = emp.find(s);
            l1 += std::abs((it == emp.end() ? 0.0 : it->second) - table.chi(s));
        }
        o.detail << " chi L1(s<=7)=" << l1;
        o.require(l1 < 0.05, "chi L1 < 0.05");
    }
    const struct
    {
        std::uint32_t k;
        double target, tol;
    } rows[] = {{2, 1.468, 0.1}, {3, 1.952, 0.1}, {4, 2.428, 0.1}, {20, 10.06, 0.2}};
    o.detail << " <k>:";
    for (const auto& row : rows) {
        double sum = 0.0;
        for (std::size_t r = 0; r < 100; ++r) {
            Engine rng(realization_seed(20130101, r));
            sum += wire_network(sample_degree_sequence(500, row.k, rng), rng).mean_degree();
        }
        const double mean = sum / 100.0;
        o.detail << " " << mean;
        o.require(std::abs(mean - row.target) <= row.tol, "realized <k> at k_max=" + std::to_string(row.k));
    }
}

void criterion_14(Outcome& o)
{
    o.detail << " experiments=" << conservation.experiments << " snapshots=" << conservation.histograms;
    o.require(conservation.experiments > 0 && conservation.histograms > 0, "runs were checked");
    for (const auto& f : conservation.failures)
        o.require(false, f);
}

}  // namespace

int main(int argc, char** argv)
{
    // optional list of criterion numbers to run; default is all
    std::vector<std::size_t> only;
    for (int a = 1; a < argc; ++a)
        only.push_back(static_cast<std::size_t>(std::stoul(argv[a])));

    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"analytic moments and giant-component condition", criterion_1},
        {"component-size probabilities, exact", criterion_2},
        {"fixed points and mean component size", criterion_3},
        {"condensation entropy", criterion_4},
        {"fully connected additive exchange: exponential law and entropy plateau", criterion_5},
        {"fully connected multiplicative exchange: entropy maximum then decline", criterion_6},
        {"condensation under bankruptcy", criterion_7},
        {"condensation time scaling with N", criterion_8},
        {"condensation time against stake", criterion_9},
        {"two coexisting classes at k_max=2", criterion_10},
        {"exponential parameter against mean degree", criterion_11},
        {"multiplicative wealth classes", criterion_12},
        {"wired networks against the analytic oracle", criterion_13},
        {"wealth conservation in every run", criterion_14},
    };

    int failed = 0;
    std::size_t ran = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!only.empty() && std::find(only.begin(), only.end(), k + 1) == only.end())
            continue;
        ++ran;
        Outcome o;
        const auto start = Clock::now();
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        std::printf("%s %2zu %s:%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    o.detail.str().c_str(), seconds_since(start));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, ran);
    return failed == 0 ? 0 : 1;
}
