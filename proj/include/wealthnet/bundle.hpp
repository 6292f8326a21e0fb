#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wealthnet/experiment.hpp"
#include "wealthnet/fitting.hpp"
#include "wealthnet/gf.hpp"
#include "wealthnet/netgen.hpp"

namespace wealthnet {

/// Version string written into every `meta` file.
std::string version();

/// `t,entropy,poverty`
void write_series_csv(std::ostream& out, std::span<const MeanSeriesPoint> series);

/// `wealth,count,wealth_over_mean`
void write_snapshot_csv(std::ostream& out, const WealthHistogram& h, double mean_w);

/// `realization,seed,t_c` with an empty t_c when condensation was not reached.
void write_tc_csv(std::ostream& out, const ExperimentResult& result);

/// `form,range_lo,range_hi,p1,p2,residual`
void write_fits_csv(std::ostream& out, std::span<const FitResult> fits);

/// Fits reported for a finished experiment: exponential over [0, 2<w>] and
/// over all occupied bins, power law above 2<w>. Fits that lack data are skipped.
std::vector<FitResult> standard_fits(const ExperimentResult& result);

/// Writes series.csv, snapshot_<t>.csv, tc.csv, fits.csv and meta into `dir`.
/// Throws std::runtime_error if the directory or a file cannot be written.
void write_bundle(const std::filesystem::path& dir, const ExperimentResult& result);

/// `value,realizations,reached,mean_tc,std_tc,realized_mean_degree,b` plus
/// fits.csv with the scaling fit, if any.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep(const std::filesystem::path& dir, const SweepResult& result, const SimConfig& base);

/// `k_max,z1,z2,z1_value,z2_value,has_giant`
void write_moments_csv(std::ostream& out, std::span<const std::uint32_t> k_max);

/// `k_max,u,giant_fraction,mean_component_size`
void write_fixed_point_csv(std::ostream& out, std::span<const std::uint32_t> k_max);

/// `s,P_s,chiT_chi,chi,P_s_value,chi_value`; exact columns as a/b.
void write_component_size_csv(std::ostream& out, const ComponentSizeTable& table,
                              std::size_t rows);

/// `s,count,chi_emp` pooled over several wirings.
void write_component_stats_csv(std::ostream& out, std::span<const ComponentStats> stats);

std::string to_fraction(const Rational& q);

}  // namespace wealthnet
