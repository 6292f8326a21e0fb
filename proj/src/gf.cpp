#include "wealthnet/gf.hpp"

#include <cmath>
#include <limits>

namespace wealthnet {

namespace {

void require_kmax(std::uint32_t k_max)
{
    if (k_max < 1)
        throw std::invalid_argument("k_max must be at least 1");
}

/// Coefficients of the geometric series 1 / (1 - x) to `order`, optionally
/// squared: 1 / (1 - x)^2 = sum (n + 1) x^n.
RationalSeries inverse_one_minus_x(std::size_t order, int power)
{
    RationalSeries s(order, false);
    for (std::size_t n = 0; n <= order; ++n)
        s.at(n) = power == 1 ? Rational(1) : Rational(n + 1);
    return s;
}

}  // namespace

RationalSeries g0(std::uint32_t k_max)
{
    require_kmax(k_max);
    RationalSeries s(k_max, true);
    for (std::uint32_t k = 1; k <= k_max; ++k)
        s.at(k) = Rational(1L, static_cast<long>(k_max));
    return s;
}

RationalSeries g1(std::uint32_t k_max)
{
    const RationalSeries d = g0(k_max).derivative();
    const Rational z = d.evaluate(Rational(1));
    return d * Rational(1 / z);
}

RationalSeries g0_closed_form(std::uint32_t k_max, std::size_t order)
{
    require_kmax(k_max);
    // x (1 - x^k) / k
    RationalSeries num(k_max + 1, true);
    num.at(1) = Rational(1L, static_cast<long>(k_max));
    num.at(k_max + 1) = Rational(-1L, static_cast<long>(k_max));
    return (num * inverse_one_minus_x(order, 1)).truncated(order);
}

RationalSeries g1_closed_form(std::uint32_t k_max, std::size_t order)
{
    require_kmax(k_max);
    const Rational z(static_cast<long>(k_max) + 1, 2L);
    const Rational scale = 1 / (z * k_max);
    RationalSeries num(k_max + 1, true);
    num.at(0) = scale;
    num.at(k_max) = -2 * z * scale;
    num.at(k_max + 1) = Rational(k_max) * scale;
    return (num * inverse_one_minus_x(order, 2)).truncated(order);
}

DegreeMoments z1z2(std::uint32_t k_max)
{
    const RationalSeries d1 = g0(k_max).derivative();
    const RationalSeries d2 = d1.derivative();
    return {d1.evaluate(Rational(1)), d2.evaluate(Rational(1))};
}

bool has_giant(std::uint32_t k_max)
{
    const auto m = z1z2(k_max);
    return m.z2 > m.z1;
}

double solve_u(std::uint32_t k_max, double tol)
{
    const RationalSeries g = g1(k_max);
    auto f = [&](double u) { return g.evaluate(u) - u; };

    constexpr int grid = 10000;
    double lo = 0.0;
    double f_lo = f(lo);
    if (f_lo == 0.0)
        return lo;
    for (int i = 1; i <= grid; ++i) {
        const double hi = static_cast<double>(i) / grid;
        const double f_hi = f(hi);
        if (f_hi == 0.0)
            return hi;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo, b = hi, fa = f_lo;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0)
                    return mid;
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return 1.0;
}

double giant_fraction(std::uint32_t k_max)
{
    const double u = solve_u(k_max);
    return 1.0 - g0(k_max).evaluate(u);
}

double mean_component_size(std::uint32_t k_max)
{
    const double u = solve_u(k_max);
    const double z = static_cast<double>(z1z2(k_max).z1);
    const double s = 1.0 - g0(k_max).evaluate(u);
    const double slope = g1(k_max).derivative().evaluate(u);
    const double denom = (1.0 - s) * (1.0 - slope);
    if (std::abs(denom) < 1e-12)
        return std::numeric_limits<double>::infinity();
    return 1.0 + z * u * u / denom;
}

RationalSeries h1(std::uint32_t k_max, std::size_t s_max)
{
    if (s_max < 1)
        throw std::invalid_argument("s_max must be at least 1");
    const RationalSeries g = g1(k_max);
    const std::size_t deg = g.order();

    // powers[j][m] = [x^m] H1^j, filled one column m at a time. Column m only
    // needs H1 coefficients up to m, and H1_{m+1} = sum_j g_j [x^m] H1^j.
    std::vector<std::vector<Rational>> powers(deg + 1, std::vector<Rational>(s_max + 1));
    RationalSeries h(s_max, false);
    const std::vector<Rational>& hc = h.coefficients();
    for (std::size_t m = 0; m < s_max; ++m) {
        powers[0][m] = m == 0 ? 1 : 0;
        for (std::size_t j = 1; j <= deg; ++j) {
            Rational acc = 0;
            for (std::size_t i = 1; i <= m; ++i)
                if (hc[i] != 0 && powers[j - 1][m - i] != 0)
                    acc += hc[i] * powers[j - 1][m - i];
            powers[j][m] = acc;
        }
        Rational next = 0;
        for (std::size_t j = 0; j <= deg; ++j)
            next += g.coefficients()[j] * powers[j][m];
        h.at(m + 1) = next;
    }
    return h;
}

RationalSeries h0(std::uint32_t k_max, std::size_t s_max)
{
    return g0(k_max).compose(h1(k_max, s_max)).shifted(1).truncated(s_max);
}

Rational p_s(std::uint32_t k_max, std::size_t s)
{
    if (s < 1)
        throw std::invalid_argument("component size must be at least 1");
    return h0(k_max, s)[s];
}

double ComponentSizeTable::chi(std::size_t s) const
{
    return static_cast<double>(chi_exact(s));
}

Rational ComponentSizeTable::chi_exact(std::size_t s) const
{
    if (s < 2)
        throw std::invalid_argument("chi(s) is defined for s >= 2");
    if (s > s_max)
        throw std::out_of_range("chi(s) beyond truncation order");
    return weight[s] / chi_total;
}

ComponentSizeTable component_sizes(std::uint32_t k_max, std::size_t s_max)
{
    if (s_max < 2)
        throw std::invalid_argument("s_max must be at least 2");
    const RationalSeries h = h0(k_max, s_max);
    ComponentSizeTable t;
    t.k_max = k_max;
    t.s_max = s_max;
    t.p.assign(s_max + 1, Rational(0));
    t.weight.assign(s_max + 1, Rational(0));
    for (std::size_t s = 1; s <= s_max; ++s) {
        t.p[s] = h[s];
        t.finite_mass += h[s];
        if (s >= 2) {
            t.weight[s] = h[s] / Rational(s);
            t.chi_total += t.weight[s];
        }
    }
    t.tail_mass = 1.0 - giant_fraction(k_max) - static_cast<double>(t.finite_mass);
    return t;
}

double chi(std::uint32_t k_max, std::size_t s, std::size_t s_max)
{
    return component_sizes(k_max, s_max).chi(s);
}

GfModel analyze(std::uint32_t k_max)
{
    GfModel m;
    m.k_max = k_max;
    const auto moments = z1z2(k_max);
    m.z1 = moments.z1;
    m.z2 = moments.z2;
    m.giant = moments.z2 > moments.z1;
    m.u = solve_u(k_max);
    m.s_frac = giant_fraction(k_max);
    m.mean_s = mean_component_size(k_max);
    return m;
}

}  // namespace wealthnet
