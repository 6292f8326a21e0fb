#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace wealthnet {

using Rational = boost::multiprecision::mpq_rational;

/// Formal power series sum_k c_k x^k truncated after x^order.
///
/// A series flagged `polynomial` has all coefficients above `order` equal to
/// zero, so products of polynomials keep every term. Otherwise results are
/// truncated to the lowest order that is still exact.
template <class T>
class PowerSeries
{
public:
    explicit PowerSeries(std::size_t order = 0, bool polynomial = false)
        : coeffs_(order + 1, T(0)), polynomial_(polynomial)
    {}

    PowerSeries(std::vector<T> coeffs, bool polynomial)
        : coeffs_(std::move(coeffs)), polynomial_(polynomial)
    {
        if (coeffs_.empty())
            coeffs_.push_back(T(0));
    }

    static PowerSeries monomial(std::size_t power, std::size_t order)
    {
        PowerSeries s(order, false);
        if (power <= order)
            s.coeffs_[power] = T(1);
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    bool polynomial() const noexcept { return polynomial_; }
    const std::vector<T>& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of x^k; zero above the order of a polynomial.
    T operator[](std::size_t k) const
    {
        if (k < coeffs_.size())
            return coeffs_[k];
        if (polynomial_)
            return T(0);
        throw std::out_of_range("coefficient beyond truncation order");
    }

    T& at(std::size_t k) { return coeffs_.at(k); }

    PowerSeries truncated(std::size_t order) const
    {
        PowerSeries out(order, false);
        for (std::size_t k = 0; k <= std::min(order, this->order()); ++k)
            out.coeffs_[k] = coeffs_[k];
        if (polynomial_ && order >= this->order())
            out.polynomial_ = true;
        return out;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b)
    {
        const std::size_t ord = sum_order(a, b);
        PowerSeries out(ord, a.polynomial_ && b.polynomial_);
        for (std::size_t k = 0; k <= ord; ++k)
            out.coeffs_[k] = a.get(k) + b.get(k);
        return out;
    }

    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b)
    {
        const std::size_t ord = sum_order(a, b);
        PowerSeries out(ord, a.polynomial_ && b.polynomial_);
        for (std::size_t k = 0; k <= ord; ++k)
            out.coeffs_[k] = a.get(k) - b.get(k);
        return out;
    }

    friend PowerSeries operator*(const PowerSeries& a, const T& scalar)
    {
        PowerSeries out = a;
        for (auto& c : out.coeffs_)
            c *= scalar;
        return out;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b)
    {
        std::size_t ord;
        if (a.polynomial_ && b.polynomial_)
            ord = a.order() + b.order();
        else if (a.polynomial_)
            ord = b.order();
        else if (b.polynomial_)
            ord = a.order();
        else
            ord = std::min(a.order(), b.order());
        PowerSeries out(ord, a.polynomial_ && b.polynomial_);
        for (std::size_t i = 0; i <= std::min(ord, a.order()); ++i) {
            if (a.coeffs_[i] == 0)
                continue;
            const std::size_t jmax = std::min(ord - i, b.order());
            for (std::size_t j = 0; j <= jmax; ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return out;
    }

    /// Multiplication by x^shift.
    PowerSeries shifted(std::size_t shift) const
    {
        const std::size_t ord = polynomial_ ? order() + shift : order();
        PowerSeries out(ord, polynomial_);
        for (std::size_t k = 0; k + shift <= ord && k <= order(); ++k)
            out.coeffs_[k + shift] = coeffs_[k];
        return out;
    }

    PowerSeries derivative() const
    {
        if (order() == 0)
            return PowerSeries(0, polynomial_);
        PowerSeries out(order() - 1, polynomial_);
        for (std::size_t k = 1; k <= order(); ++k)
            out.coeffs_[k - 1] = coeffs_[k] * T(k);
        return out;
    }

    /// Sum of the stored coefficients times x^k (exact for polynomials).
    template <class U>
    U evaluate(const U& x) const
    {
        U acc(0);
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            acc = acc * x + U(coeffs_[k]);
        return acc;
    }

    /// this(inner(x)). `this` must be a polynomial unless inner(0) == 0.
    PowerSeries compose(const PowerSeries& inner) const
    {
        if (!polynomial_ && inner[0] != 0)
            throw std::invalid_argument("composing a truncated series needs inner(0) == 0");
        PowerSeries acc(inner.order(), false);
        if (polynomial_ && inner.polynomial_)
            acc = PowerSeries(0, true);
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            acc = acc * inner;
            acc.add_constant(coeffs_[k]);
        }
        return acc;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b)
    {
        const std::size_t ord = std::max(a.order(), b.order());
        for (std::size_t k = 0; k <= ord; ++k) {
            if (!a.known(k) || !b.known(k))
                break;
            if (a.get(k) != b.get(k))
                return false;
        }
        return true;
    }

private:
    static std::size_t sum_order(const PowerSeries& a, const PowerSeries& b)
    {
        if (a.polynomial_ && b.polynomial_)
            return std::max(a.order(), b.order());
        if (a.polynomial_)
            return b.order();
        if (b.polynomial_)
            return a.order();
        return std::min(a.order(), b.order());
    }

    bool known(std::size_t k) const noexcept { return polynomial_ || k <= order(); }
    T get(std::size_t k) const { return k <= order() ? coeffs_[k] : T(0); }
    void add_constant(const T& c) { coeffs_[0] += c; }

    std::vector<T> coeffs_;
    bool polynomial_ = false;
};

using RationalSeries = PowerSeries<Rational>;

/// G0(x) = sum_{k=1}^{k_max} x^k / k_max, as an exact polynomial.
RationalSeries g0(std::uint32_t k_max);

/// G1(x) = G0'(x) / G0'(1).
RationalSeries g1(std::uint32_t k_max);

/// Series expansion of x (1 - x^k_max) / (k_max (1 - x)) up to `order`.
RationalSeries g0_closed_form(std::uint32_t k_max, std::size_t order);

/// Series expansion of (1 - 2 z x^k_max + k_max x^(k_max+1)) / (z k_max (1-x)^2).
RationalSeries g1_closed_form(std::uint32_t k_max, std::size_t order);

struct DegreeMoments
{
    Rational z1;  ///< mean degree G0'(1)
    Rational z2;  ///< mean number of second neighbours G0''(1)
};

DegreeMoments z1z2(std::uint32_t k_max);

/// z2 > z1.
bool has_giant(std::uint32_t k_max);

/// Smallest root of u = G1(u) in [0, 1]: scan a 10^4-point grid for the first
/// sign change of G1(u) - u and bisect it to `tol`. u = 1 is always a root.
double solve_u(std::uint32_t k_max, double tol = 1e-12);

/// Giant component fraction 1 - G0(u).
double giant_fraction(std::uint32_t k_max);

/// Mean finite component size 1 + z u^2 / ((1 - S)(1 - G1'(u))).
/// Returns +infinity when the denominator vanishes.
double mean_component_size(std::uint32_t k_max);

/// H1 = x G1(H1), solved coefficient by coefficient up to x^s_max.
RationalSeries h1(std::uint32_t k_max, std::size_t s_max);

/// H0 = x G0(H1) up to x^s_max.
RationalSeries h0(std::uint32_t k_max, std::size_t s_max);

/// Probability that a random agent sits in a finite component of size s.
Rational p_s(std::uint32_t k_max, std::size_t s);

/// P_s and component-size weights P_s / s up to s_max.
struct ComponentSizeTable
{
    std::uint32_t k_max = 0;
    std::size_t s_max = 0;
    std::vector<Rational> p;           ///< p[s] = P_s, index 0 unused
    std::vector<Rational> weight;      ///< weight[s] = P_s / s for s >= 2
    Rational chi_total;                ///< sum of weight[s], 2 <= s <= s_max
    Rational finite_mass;              ///< sum of P_s, 1 <= s <= s_max
    double tail_mass = 0.0;            ///< 1 - S - finite_mass

    /// Normalized chi(s) = weight[s] / chi_total. Throws for s < 2 or s > s_max.
    double chi(std::size_t s) const;
    Rational chi_exact(std::size_t s) const;
};

ComponentSizeTable component_sizes(std::uint32_t k_max, std::size_t s_max = 200);

/// chi(s) from a table truncated at s_max.
double chi(std::uint32_t k_max, std::size_t s, std::size_t s_max = 200);

struct GfModel
{
    std::uint32_t k_max = 0;
    Rational z1;
    Rational z2;
    bool giant = false;
    double u = 1.0;
    double s_frac = 0.0;
    double mean_s = 0.0;
};

GfModel analyze(std::uint32_t k_max);

}  // namespace wealthnet
