#include "wealthnet/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace wealthnet {

std::string_view to_string(FitForm form) noexcept
{
    switch (form) {
    case FitForm::exponential:
        return "exponential";
    case FitForm::power_law:
        return "power-law";
    case FitForm::scaling:
        return "scaling";
    }
    return "unknown";
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("least squares: size mismatch");
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2)
        throw std::invalid_argument("least squares: need at least 2 points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("least squares: x values are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - fit.intercept - fit.slope * x[k];
        fit.residual += r * r;
    }
    if (x.size() > 2)
        fit.slope_stderr = std::sqrt(fit.residual / (n - 2.0) / sxx);
    return fit;
}

namespace {

struct LogPoints
{
    std::vector<double> x;
    std::vector<double> y;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
};

template <class Transform>
LogPoints collect(const WealthHistogram& h, WealthRange range, Transform tx)
{
    LogPoints pts;
    for (const auto& [w, k] : h.counts) {
        const auto wd = static_cast<double>(w);
        if (k == 0 || !range.contains(wd))
            continue;
        pts.x.push_back(tx(wd));
        pts.y.push_back(std::log(static_cast<double>(k)));
        pts.lo = std::min(pts.lo, wd);
        pts.hi = std::max(pts.hi, wd);
    }
    if (pts.x.size() < 3)
        throw std::invalid_argument("fit needs at least 3 occupied bins in range");
    return pts;
}

}  // namespace

FitResult fit_exponential(const WealthHistogram& h, WealthRange range, double mean_w)
{
    if (!(mean_w > 0.0))
        throw std::invalid_argument("mean wealth must be positive");
    const LogPoints pts = collect(h, range, [](double w) { return w; });
    const LinearFit lf = least_squares(pts.x, pts.y);
    if (lf.slope == 0.0)
        throw std::invalid_argument("flat histogram has no exponential scale");
    FitResult r;
    r.form = FitForm::exponential;
    r.p1 = std::exp(lf.intercept);
    r.p2 = -1.0 / (lf.slope * mean_w);
    r.p2_stderr = lf.slope_stderr / (lf.slope * lf.slope * mean_w);
    r.range_lo = pts.lo;
    r.range_hi = pts.hi;
    r.residual = lf.residual;
    r.points = pts.x.size();
    return r;
}

FitResult fit_power_law(const WealthHistogram& h, WealthRange range)
{
    if (range.lo <= 0.0)
        throw std::invalid_argument("power-law fit range must exclude w <= 0");
    const LogPoints pts = collect(h, range, [](double w) { return std::log(w); });
    const LinearFit lf = least_squares(pts.x, pts.y);
    FitResult r;
    r.form = FitForm::power_law;
    r.p1 = std::exp(lf.intercept);
    r.p2 = -lf.slope - 1.0;
    r.p2_stderr = lf.slope_stderr;
    r.range_lo = pts.lo;
    r.range_hi = pts.hi;
    r.residual = lf.residual;
    r.points = pts.x.size();
    return r;
}

FitResult fit_scaling(std::span<const ScalingPoint> points)
{
    std::vector<double> x, y;
    std::set<double> distinct;
    for (const auto& p : points) {
        if (!p.t_c)
            throw std::invalid_argument("scaling fit: condensation not reached at N = " +
                                        std::to_string(p.n));
        if (!(*p.t_c > 0.0) || !(p.n > 0.0))
            throw std::invalid_argument("scaling fit needs positive N and t_c");
        x.push_back(std::log(p.n));
        y.push_back(std::log(*p.t_c));
        distinct.insert(p.n);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 distinct N");
    const LinearFit lf = least_squares(x, y);
    FitResult r;
    r.form = FitForm::scaling;
    r.p1 = std::exp(lf.intercept);
    r.p2 = lf.slope;
    r.p2_stderr = lf.slope_stderr;
    r.range_lo = *distinct.begin();
    r.range_hi = *distinct.rbegin();
    r.residual = lf.residual;
    r.points = x.size();
    return r;
}

std::int64_t min_exchanges(Wealth mean_w, Wealth dw)
{
    if (dw < 1)
        throw std::invalid_argument("stake must be at least 1");
    return mean_w / dw;
}

ClassPeaks detect_classes(const WealthHistogram& h, double mean_w, double min_mass,
                          Wealth poverty_below, double significance)
{
    ClassPeaks out;
    if (h.empty())
        return out;
    const auto n = static_cast<double>(h.n);

    Wealth lo = poverty_below;
    Wealth top = lo - 1;
    double zero = 0.0;
    for (const auto& [w, k] : h.counts) {
        if (w < poverty_below)
            zero += static_cast<double>(k);
        else if (k > 0)
            top = std::max(top, w);
    }
    out.zero_class_mass = zero / n;
    if (top < lo)
        return out;

    const auto half = static_cast<Wealth>(std::llround(0.1 * mean_w));
    // Empty bins past the richest agent are real zeros, so pad by a full window.
    const Wealth hi = top + 2 * half;
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    // prefix[k] = agents with lo <= w < lo + k
    std::vector<double> prefix(span + 1, 0.0);
    {
        std::vector<double> dense(span, 0.0);
        for (auto it = h.counts.lower_bound(lo); it != h.counts.end(); ++it)
            dense[static_cast<std::size_t>(it->first - lo)] = static_cast<double>(it->second);
        std::partial_sum(dense.begin(), dense.end(), prefix.begin() + 1);
    }
    auto window_sum = [&](Wealth c) {
        const Wealth a = std::max(lo, c - half);
        const Wealth b = std::min(hi, c + half);
        return prefix[static_cast<std::size_t>(b - lo + 1)] - prefix[static_cast<std::size_t>(a - lo)];
    };

    // mean count per bin; windows clipped at the poverty line average over fewer bins
    std::vector<double> smooth(span);
    for (std::size_t k = 0; k < span; ++k) {
        const Wealth c = lo + static_cast<Wealth>(k);
        const Wealth bins = std::min(hi, c + half) - std::max(lo, c - half) + 1;
        smooth[k] = window_sum(c) / static_cast<double>(bins);
    }

    const double bins = static_cast<double>(2 * half + 1);
    std::vector<ClassPeak> candidates;
    std::size_t a = 0;
    while (a < span) {
        std::size_t b = a;
        while (b + 1 < span && smooth[b + 1] == smooth[a])
            ++b;
        const bool interior = a > 0 && b + 1 < span;
        if (interior && smooth[a - 1] < smooth[a] && smooth[b + 1] < smooth[b]) {
            const double v = smooth[a];
            // prominence: drop to the higher of the two valleys before a taller point
            double left = v, right = v;
            for (std::size_t k = a; k-- > 0 && smooth[k] <= v;)
                left = std::min(left, smooth[k]);
            for (std::size_t k = b + 1; k < span && smooth[k] <= v; ++k)
                right = std::min(right, smooth[k]);
            const double base = std::max(left, right);
            // Poisson counting noise on the difference of two window sums
            const double z = (v - base) * bins / std::sqrt((v + base) * bins);

            const Wealth c = lo + static_cast<Wealth>((a + b) / 2);
            double mass = 0.0, moment = 0.0;
            for (auto it = h.counts.lower_bound(std::max(lo, c - half));
                 it != h.counts.end() && it->first <= c + half; ++it) {
                mass += static_cast<double>(it->second);
                moment += static_cast<double>(it->second) * static_cast<double>(it->first);
            }
            if (mass / n >= min_mass && z >= significance)
                candidates.push_back({moment / mass, mass / n});
        }
        a = b + 1;
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const ClassPeak& x, const ClassPeak& y) { return x.mass > y.mass; });
    const double exclusion = 2.0 * static_cast<double>(std::max<Wealth>(half, 1));
    for (const auto& c : candidates) {
        const bool shadowed = std::any_of(out.peaks.begin(), out.peaks.end(), [&](const ClassPeak& p) {
            return std::abs(p.location - c.location) <= exclusion;
        });
        if (!shadowed)
            out.peaks.push_back(c);
    }
    std::sort(out.peaks.begin(), out.peaks.end(),
              [](const ClassPeak& x, const ClassPeak& y) { return x.location < y.location; });
    return out;
}

TwoSampleTest welch_t_test(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("Welch test needs at least 2 samples per group");
    auto moments = [](std::span<const double> v) {
        const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v)
            ss += (x - m) * (x - m);
        return std::pair{m, ss / static_cast<double>(v.size() - 1)};
    };
    const auto [ma, va] = moments(a);
    const auto [mb, vb] = moments(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double sa = va / na, sb = vb / nb;

    TwoSampleTest out;
    if (sa + sb == 0.0) {
        out.p_value = ma == mb ? 1.0 : 0.0;
        out.statistic = ma == mb ? 0.0 : std::numeric_limits<double>::infinity();
        return out;
    }
    out.statistic = (ma - mb) / std::sqrt(sa + sb);
    out.dof = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    const boost::math::students_t dist(out.dof);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.statistic)));
    return out;
}

}  // namespace wealthnet
