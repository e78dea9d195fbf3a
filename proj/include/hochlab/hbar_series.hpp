#pragma once

// Formal power series in the deformation parameter truncated at a fixed
// order N: coefficients c_0..c_N of some coefficient type V. The truncation
// order travels with the value and mixing orders is an error, never a
// silent coercion.
//
// V must provide: is_zero(), zero_like(), operator+, unary operator-,
// scaled(Rational). Multiplicative structure is supplied per call site as a
// bilinear functor, since the same series type is used over polynomials,
// cochains and polyvectors.

#include "hochlab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace hochlab {

template <class V>
class Series {
  public:
    explicit Series(std::vector<V> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty())
            throw std::invalid_argument("Series: needs at least the order-0 coefficient");
    }

    // Zero series of the given order, with coefficients shaped like `model`.
    static Series zero(int order, const V &model)
    {
        if (order < 0)
            throw std::invalid_argument("Series: negative order");
        return Series(std::vector<V>(static_cast<std::size_t>(order) + 1, model.zero_like()));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const V &coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    V &coeff(int k) { return c_.at(static_cast<std::size_t>(k)); }

    bool is_zero() const
    {
        for (const V &v : c_)
            if (!v.is_zero())
                return false;
        return true;
    }

    Series zero_like() const { return zero(order(), c_[0]); }

    // Lowest k with a nonzero coefficient; order()+1 when zero.
    int valuation() const
    {
        for (int k = 0; k <= order(); ++k)
            if (!c_[static_cast<std::size_t>(k)].is_zero())
                return k;
        return order() + 1;
    }

    Series &operator+=(const Series &o)
    {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] = c_[i] + o.c_[i];
        return *this;
    }

    friend Series operator+(Series a, const Series &b) { return a += b; }

    Series operator-() const
    {
        Series r = *this;
        for (V &v : r.c_)
            v = -v;
        return r;
    }

    friend Series operator-(Series a, const Series &b) { return a + (-b); }

    Series scaled(const Rational &r) const
    {
        Series out = *this;
        for (V &v : out.c_)
            v = v.scaled(r);
        return out;
    }

    // Multiplication by hbar^k (shifting up, dropping overflow).
    Series shifted(int k) const
    {
        Series r = zero_like();
        for (int i = 0; i + k <= order(); ++i)
            r.c_[static_cast<std::size_t>(i + k)] = c_[static_cast<std::size_t>(i)];
        return r;
    }

    Series truncated(int new_order) const
    {
        if (new_order < 0 || new_order > order())
            throw std::invalid_argument("Series: bad truncation order");
        return Series(std::vector<V>(c_.begin(), c_.begin() + new_order + 1));
    }

    friend bool operator==(const Series &a, const Series &b)
    {
        if (a.order() != b.order())
            return false;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Series &a, const Series &b) { return !(a == b); }

    void check_order(const Series &o) const
    {
        if (order() != o.order())
            throw std::invalid_argument("Series: truncation order mismatch");
    }

  private:
    std::vector<V> c_;
};

// (a, b) -> sum_{k+l=m} f(a_k, b_l), truncated at the common order.
template <class V, class W, class R, class F>
Series<R> series_bilinear(const Series<V> &a, const Series<W> &b, const R &model, F f)
{
    if (a.order() != b.order())
        throw std::invalid_argument("Series: truncation order mismatch");
    Series<R> out = Series<R>::zero(a.order(), model);
    for (int k = 0; k <= a.order(); ++k) {
        if (a.coeff(k).is_zero())
            continue;
        for (int l = 0; k + l <= a.order(); ++l) {
            if (b.coeff(l).is_zero())
                continue;
            out.coeff(k + l) = out.coeff(k + l) + f(a.coeff(k), b.coeff(l));
        }
    }
    return out;
}

template <class V, class F>
Series<V> series_mul(const Series<V> &a, const Series<V> &b, F mul)
{
    return series_bilinear(a, b, a.coeff(0).zero_like(), mul);
}

// exp(a) = unit + a + a^2/2 + ...; requires a to start at order >= 1 so the
// sum is finite after truncation.
template <class V, class F>
Series<V> series_exp(const Series<V> &a, const V &unit, F mul)
{
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("series_exp: nonzero constant term");
    Series<V> result = Series<V>::zero(a.order(), a.coeff(0));
    result.coeff(0) = unit;
    Series<V> power = result; // a^0 = unit
    Rational inv_fact(1);
    for (int j = 1; j <= a.order(); ++j) {
        power = series_mul(power, a, mul);
        if (power.is_zero())
            break;
        inv_fact /= Rational(j);
        result += power.scaled(inv_fact);
    }
    return result;
}

// f(a) where f(x) = (e^x - 1)/x = sum_j x^j / (j+1)!; same requirement on a.
template <class V, class F>
Series<V> series_expm1_over_x(const Series<V> &a, const V &unit, F mul)
{
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("series_expm1_over_x: nonzero constant term");
    Series<V> result = Series<V>::zero(a.order(), a.coeff(0));
    result.coeff(0) = unit;
    Series<V> power = result;
    for (int j = 1; j <= a.order(); ++j) {
        power = series_mul(power, a, mul);
        if (power.is_zero())
            break;
        result += power.scaled(Rational(1) / Rational::factorial(static_cast<unsigned>(j + 1)));
    }
    return result;
}

// A Rational made series-friendly (zero_like/scaled) so Series<Scalar> works.
struct Scalar {
    Rational v;
    Scalar() = default;
    Scalar(Rational r) : v(std::move(r)) {}
    Scalar(long n) : v(n) {}
    bool is_zero() const { return v.is_zero(); }
    Scalar zero_like() const { return Scalar(); }
    Scalar scaled(const Rational &r) const { return Scalar(v * r); }
    Scalar operator+(const Scalar &o) const { return Scalar(v + o.v); }
    Scalar operator-() const { return Scalar(-v); }
    friend Scalar operator*(const Scalar &a, const Scalar &b) { return Scalar(a.v * b.v); }
    friend bool operator==(const Scalar &a, const Scalar &b) { return a.v == b.v; }
};

// The coefficients 1/(k+1)! of (e^x - 1)/x, as a truncated scalar series.
inline Series<Scalar> expm1_over_x_series(int order)
{
    Series<Scalar> s = Series<Scalar>::zero(order, Scalar());
    for (int k = 0; k <= order; ++k)
        s.coeff(k) = Scalar(Rational(1) / Rational::factorial(static_cast<unsigned>(k + 1)));
    return s;
}

} // namespace hochlab
