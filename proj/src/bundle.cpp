#include "wealthnet/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef WEALTHNET_VERSION
#define WEALTHNET_VERSION "dev"
#endif

namespace wealthnet {

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(10);
    return out;
}

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create output directory " + dir.string());
}

}  // namespace

std::string version()
{
    return WEALTHNET_VERSION;
}

std::string to_fraction(const Rational& q)
{
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

void write_series_csv(std::ostream& out, std::span<const MeanSeriesPoint> series)
{
    out << "t,entropy,poverty\n";
    for (const auto& p : series)
        out << p.t << ',' << std::setprecision(10) << p.entropy << ',' << p.poverty << '\n';
}

void write_snapshot_csv(std::ostream& out, const WealthHistogram& h, double mean_w)
{
    out << "wealth,count,wealth_over_mean\n";
    for (const auto& [w, k] : h.counts)
        out << w << ',' << k << ',' << std::setprecision(10) << static_cast<double>(w) / mean_w << '\n';
}

void write_tc_csv(std::ostream& out, const ExperimentResult& result)
{
    out << "realization,seed,t_c\n";
    for (std::size_t r = 0; r < result.realizations.size(); ++r) {
        const auto& rr = result.realizations[r];
        out << r << ',' << rr.seed << ',';
        if (rr.trajectory.t_c)
            out << *rr.trajectory.t_c;
        out << '\n';
    }
}

void write_fits_csv(std::ostream& out, std::span<const FitResult> fits)
{
    out << "form,range_lo,range_hi,p1,p2,residual\n";
    for (const auto& f : fits)
        out << to_string(f.form) << ',' << std::setprecision(10) << f.range_lo << ',' << f.range_hi << ','
            << f.p1 << ',' << f.p2 << ',' << f.residual << '\n';
}

std::vector<FitResult> standard_fits(const ExperimentResult& result)
{
    std::vector<FitResult> fits;
    if (result.pooled_snapshots.empty())
        return fits;
    const auto& h = result.pooled_snapshots.back();
    const auto mean_w = static_cast<double>(result.config.mean_w);
    auto attempt = [&](auto&& fn) {
        try {
            fits.push_back(fn());
        } catch (const std::invalid_argument&) {
        }
    };
    attempt([&] { return fit_exponential(h, {0.0, 2.0 * mean_w}, mean_w); });
    attempt([&] { return fit_exponential(h, {}, mean_w); });
    attempt([&] { return fit_power_law(h, {2.0 * mean_w + 1.0}); });
    return fits;
}

void write_bundle(const std::filesystem::path& dir, const ExperimentResult& result)
{
    ensure_dir(dir);
    const auto mean_w = static_cast<double>(result.config.mean_w);
    {
        auto out = open_out(dir / "series.csv");
        write_series_csv(out, result.series);
    }
    for (const auto& h : result.pooled_snapshots) {
        auto out = open_out(dir / ("snapshot_" + std::to_string(h.t) + ".csv"));
        write_snapshot_csv(out, h, mean_w);
    }
    {
        auto out = open_out(dir / "tc.csv");
        write_tc_csv(out, result);
    }
    {
        auto out = open_out(dir / "fits.csv");
        write_fits_csv(out, standard_fits(result));
    }
    {
        auto out = open_out(dir / "meta");
        out << to_key_values(result.config);
        out << "version = " << version() << '\n'
            << "realized_mean_degree = " << result.mean_realized_degree << '\n'
            << "conserved = " << (result.conserved ? "true" : "false") << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result)
{
    out << "value,realizations,reached,mean_tc,std_tc,realized_mean_degree,b\n";
    for (const auto& row : result.rows) {
        out << std::setprecision(10) << row.value << ',' << row.realizations << ',' << row.t_c.size() << ',';
        if (!row.t_c.empty())
            out << row.mean_tc << ',' << row.std_tc;
        else
            out << ',';
        out << ',' << row.realized_mean_degree << ',';
        if (row.exponential)
            out << row.exponential->p2;
        out << '\n';
    }
}

void write_sweep(const std::filesystem::path& dir, const SweepResult& result, const SimConfig& base)
{
    ensure_dir(dir);
    {
        auto out = open_out(dir / "sweep.csv");
        write_sweep_csv(out, result);
    }
    {
        auto out = open_out(dir / "fits.csv");
        std::vector<FitResult> fits;
        if (result.scaling)
            fits.push_back(*result.scaling);
        write_fits_csv(out, fits);
    }
    {
        auto out = open_out(dir / "meta");
        out << to_key_values(base) << "sweep = " << to_string(result.param) << '\n'
            << "version = " << version() << '\n';
        for (const auto& w : result.warnings)
            out << "# warning: " << w << '\n';
    }
}

void write_moments_csv(std::ostream& out, std::span<const std::uint32_t> k_max)
{
    out << "k_max,z1,z2,z1_value,z2_value,has_giant\n";
    for (auto k : k_max) {
        const auto m = z1z2(k);
        out << k << ',' << to_fraction(m.z1) << ',' << to_fraction(m.z2) << ',' << std::setprecision(10)
            << static_cast<double>(m.z1) << ',' << static_cast<double>(m.z2) << ','
            << (m.z2 > m.z1 ? "true" : "false") << '\n';
    }
}

void write_fixed_point_csv(std::ostream& out, std::span<const std::uint32_t> k_max)
{
    out << "k_max,u,giant_fraction,mean_component_size\n";
    for (auto k : k_max) {
        const GfModel m = analyze(k);
        out << k << ',' << std::setprecision(10) << m.u << ',' << m.s_frac << ',' << m.mean_s << '\n';
    }
}

void write_component_size_csv(std::ostream& out, const ComponentSizeTable& table, std::size_t rows)
{
    out << "s,P_s,chiT_chi,P_s_value,chi\n";
    for (std::size_t s = 1; s <= std::min(rows, table.s_max); ++s) {
        const Rational w = s >= 2 ? table.weight[s] : Rational(0);
        out << s << ',' << to_fraction(table.p[s]) << ',' << to_fraction(w) << ',' << std::setprecision(10)
            << static_cast<double>(table.p[s]) << ',' << (s >= 2 ? table.chi(s) : 0.0) << '\n';
    }
}

void write_component_stats_csv(std::ostream& out, std::span<const ComponentStats> stats)
{
    std::map<std::size_t, std::uint64_t> counts;
    for (const auto& st : stats)
        for (std::size_t s : st.sizes)
            ++counts[s];
    const auto chi = pooled_chi(stats);
    out << "s,count,chi_emp\n";
    for (const auto& [s, k] : counts) {
        out << s << ',' << k << ',';
        if (const auto it = chi.find(s); it != chi.end())
            out << std::setprecision(10) << it->second;
        out << '\n';
    }
}

}  // namespace wealthnet
