#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wealthnet/metrics.hpp"

namespace wealthnet {

enum class FitForm
{
    exponential,
    power_law,
    scaling,
};

std::string_view to_string(FitForm form) noexcept;

/// Inclusive wealth interval.
struct WealthRange
{
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double w) const noexcept { return w >= lo && w <= hi; }
};

/// Straight-line fit in log space.
///
/// exponential: n(w) = C exp(-w / (b <w>)), p1 = C, p2 = b
/// power_law:   n(w) = C / w^(1 + alpha),   p1 = C, p2 = alpha
/// scaling:     t_c  = A N^gamma,           p1 = A, p2 = gamma
struct FitResult
{
    FitForm form = FitForm::exponential;
    double p1 = 0.0;
    double p2 = 0.0;
    double range_lo = 0.0;
    double range_hi = 0.0;
    /// Sum of squared residuals of the log-space regression.
    double residual = 0.0;
    std::size_t points = 0;
    /// Standard error of p2 from the regression.
    double p2_stderr = 0.0;
};

struct LinearFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double residual = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Unweighted fit of ln n_w against w over occupied bins in `range`.
/// Throws std::invalid_argument with fewer than 3 occupied bins.
FitResult fit_exponential(const WealthHistogram& h, WealthRange range, double mean_w);

/// Unweighted fit of ln n_w against ln w over occupied bins in `range`.
/// Throws std::invalid_argument if the range reaches w <= 0 or has fewer than
/// 3 occupied bins.
FitResult fit_power_law(const WealthHistogram& h, WealthRange range);

struct ScalingPoint
{
    double n = 0.0;
    std::optional<double> t_c;
};

/// Log-log fit of t_c against N. Throws std::invalid_argument if any t_c is
/// missing or non-positive, or fewer than 3 distinct N are given.
FitResult fit_scaling(std::span<const ScalingPoint> points);

/// floor(mean_w / dw): bets a fresh agent survives before poverty.
std::int64_t min_exchanges(Wealth mean_w, Wealth dw);

struct ClassPeak
{
    double location = 0.0;  ///< count-weighted mean wealth around the peak
    double mass = 0.0;      ///< fraction of agents within the smoothing window
};

struct ClassPeaks
{
    std::vector<ClassPeak> peaks;  ///< sorted by location
    double zero_class_mass = 0.0;
};

/// Wealth classes as local maxima of the histogram smoothed over
/// +-0.1 mean_w. States below `poverty_below` form the zero class and are
/// excluded from peak search. A maximum counts as a class when its window
/// holds at least `min_mass` of the agents and it rises above the higher of
/// its two flanking valleys by `significance` standard deviations of Poisson
/// counting noise. Peaks within two window widths of a heavier one are merged
/// into it.
ClassPeaks detect_classes(const WealthHistogram& h, double mean_w, double min_mass,
                          Wealth poverty_below, double significance = 5.0);

struct TwoSampleTest
{
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Two-sided Welch t-test for equal means.
TwoSampleTest welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace wealthnet
