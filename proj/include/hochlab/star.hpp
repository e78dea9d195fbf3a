#pragma once

// Star products as truncated hbar-series of bidifferential cochains:
// a * b = ab + sum_k hbar^k Pi_k(a, b). Provides the Moyal-Weyl product of
// a constant antisymmetric bivector, the symbolic associativity defect,
// the correspondence with Maurer-Cartan elements of the cochain DG Lie
// algebra, gauge equivalence by intertwiner series T = Id + hbar T_1 + ...,
// the star commutator, and the Jacobi check for formal Poisson structures.

#include "hochlab/cochain.hpp"
#include "hochlab/dgla.hpp"
#include "hochlab/hbar_series.hpp"
#include "hochlab/multipoly.hpp"
#include "hochlab/polyvec.hpp"

#include <stdexcept>
#include <vector>

namespace hochlab {

using ThetaMatrix = std::vector<std::vector<Rational>>;

inline void check_antisymmetric(const ThetaMatrix &theta)
{
    std::size_t d = theta.size();
    for (const auto &row : theta)
        if (row.size() != d)
            throw std::invalid_argument("theta: not square");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (theta[i][j] != -theta[j][i])
                throw std::invalid_argument("theta: not antisymmetric");
}

// The canonical symplectic matrix in d = 2: theta^{12} = 1.
inline ThetaMatrix canonical_theta_2d()
{
    return {{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
}

inline PolyVector theta_bivector(const ThetaMatrix &theta)
{
    check_antisymmetric(theta);
    int d = static_cast<int>(theta.size());
    PolyVector out(d, 2);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            out += PolyVector::term(Poly::constant(d, theta[static_cast<std::size_t>(i)]
                                                            [static_cast<std::size_t>(j)]),
                                    {i, j});
    return out;
}

struct StarProduct {
    int dim;
    Series<Cochain> pi; // arity-2 coefficients, zero constant term

    StarProduct(int dim_, Series<Cochain> pi_) : dim(dim_), pi(std::move(pi_))
    {
        if (!pi.coeff(0).is_zero())
            throw std::invalid_argument("StarProduct: nonzero order-0 term");
        for (int k = 1; k <= pi.order(); ++k)
            if (!pi.coeff(k).is_zero() && pi.coeff(k).arity() != 2)
                throw std::invalid_argument("StarProduct: coefficients must have arity 2");
    }

    int order() const { return pi.order(); }

    static StarProduct commutative(int dim, int order)
    {
        return StarProduct(dim, Series<Cochain>::zero(order, Cochain(dim, 2)));
    }
};

// Moyal-Weyl: Pi_k = (1/k!)(1/2^k) theta^{i1 j1}...theta^{ik jk}
// d_{i1..ik} tensor d_{j1..jk}, assembled from the k-th power of the
// biderivation sum theta^{ij} u_i v_j in auxiliary variables.
inline StarProduct moyal_weyl(const ThetaMatrix &theta, int order)
{
    check_antisymmetric(theta);
    int d = static_cast<int>(theta.size());
    Series<Cochain> pi = Series<Cochain>::zero(order, Cochain(d, 2));

    Poly bider(2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Rational &t = theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (t.is_zero())
                continue;
            MultiIndex m(2 * d);
            m[i] += 1;
            m[d + j] += 1;
            bider += Poly::monomial(m, t);
        }

    Poly power = Poly::constant(2 * d, Rational(1));
    Rational scale(1);
    for (int k = 1; k <= order; ++k) {
        power = power * bider;
        scale *= Rational(1, 2) / Rational(k);
        Cochain::Builder coeff(d, 2);
        for (const auto &[mono, c] : power.terms()) {
            MultiIndex left(d), right(d);
            for (int i = 0; i < d; ++i) {
                left[i] = mono[i];
                right[i] = mono[d + i];
            }
            coeff.add(Word{left, right}, Poly::constant(d, c * scale));
        }
        pi.coeff(k) = coeff.build();
    }
    return StarProduct(d, pi);
}

// a * b for truncated polynomial series.
inline Series<Poly> star_multiply(const StarProduct &s, const Series<Poly> &a,
                                  const Series<Poly> &b)
{
    a.check_order(b);
    if (a.order() != s.order())
        throw std::invalid_argument("star_multiply: order mismatch");
    Series<Poly> out = series_bilinear(a, b, Poly::zero(s.dim),
                                       [](const Poly &x, const Poly &y) { return x * y; });
    for (int j = 1; j <= s.order(); ++j) {
        const Cochain &pj = s.pi.coeff(j);
        if (pj.is_zero())
            continue;
        for (int k = 0; k + j <= s.order(); ++k)
            for (int l = 0; k + l + j <= s.order(); ++l) {
                if (a.coeff(k).is_zero() || b.coeff(l).is_zero())
                    continue;
                out.coeff(k + l + j) += pj.apply({a.coeff(k), b.coeff(l)});
            }
    }
    return out;
}

inline Series<Poly> constant_poly_series(const Poly &p, int order)
{
    Series<Poly> s = Series<Poly>::zero(order, p.zero_like());
    s.coeff(0) = p;
    return s;
}

// The trilinear defect (a*b)*c - a*(b*c) as a symbolic arity-3 cochain
// series; zero iff the product is associative to the truncation order.
inline Series<Cochain> associativity_defect(const StarProduct &s)
{
    int d = s.dim;
    Cochain mu = Cochain::mu(d);
    auto pi_at = [&](int k) { return k == 0 ? mu : s.pi.coeff(k); };
    Series<Cochain> out = Series<Cochain>::zero(s.order(), Cochain(d, 3));
    for (int m = 1; m <= s.order(); ++m) {
        Cochain::Builder acc(d, 3);
        for (int k = 0; k <= m; ++k) {
            const Cochain lhs = pi_at(k);
            const Cochain rhs = pi_at(m - k);
            if (lhs.is_zero() || rhs.is_zero())
                continue;
            insert_into(acc, lhs, 0, rhs, Rational(1));
            insert_into(acc, lhs, 1, rhs, Rational(-1));
        }
        out.coeff(m) = acc.build();
    }
    return out;
}

// Star products are exactly the MC elements of the cochain DG Lie algebra:
// the repackaging is the identity on the Pi series, and the MC defect
// equals the associativity defect order by order.
inline Series<Cochain> mc_element_of(const StarProduct &s) { return s.pi; }

inline StarProduct star_of(int dim, const Series<Cochain> &mc)
{
    return StarProduct(dim, mc);
}

inline Cochain identity_operator(int dim)
{
    return Cochain::term(Poly::constant(dim, Rational(1)), Word{MultiIndex(dim)});
}

struct EquivalenceSeries {
    int dim;
    Series<Cochain> t; // arity-1, order-0 coefficient = identity

    EquivalenceSeries(int dim_, Series<Cochain> t_) : dim(dim_), t(std::move(t_))
    {
        if (!(t.coeff(0) == identity_operator(dim)))
            throw std::invalid_argument("EquivalenceSeries: must start from the identity");
        for (int k = 1; k <= t.order(); ++k)
            if (!t.coeff(k).is_zero() && t.coeff(k).arity() != 1)
                throw std::invalid_argument("EquivalenceSeries: coefficients must have arity 1");
    }

    int order() const { return t.order(); }

    static EquivalenceSeries identity(int dim, int order)
    {
        Series<Cochain> t = Series<Cochain>::zero(order, Cochain(dim, 1));
        t.coeff(0) = identity_operator(dim);
        return EquivalenceSeries(dim, t);
    }

    // exp of an hbar-proper arity-1 series under operator composition.
    static EquivalenceSeries exp(int dim, const Series<Cochain> &xi)
    {
        Series<Cochain> t = series_exp(
            xi, identity_operator(dim),
            [](const Cochain &a, const Cochain &b) { return insert(a, 0, b); });
        return EquivalenceSeries(dim, t);
    }

    EquivalenceSeries inverse() const
    {
        // Neumann series for (Id + R)^{-1}
        Series<Cochain> r = t;
        r.coeff(0) = Cochain::zero(dim, 1);
        Series<Cochain> inv = Series<Cochain>::zero(t.order(), Cochain(dim, 1));
        inv.coeff(0) = identity_operator(dim);
        Series<Cochain> power = inv;
        auto compose = [](const Cochain &a, const Cochain &b) { return insert(a, 0, b); };
        for (int j = 1; j <= t.order(); ++j) {
            power = series_mul(power, r, compose);
            if (power.is_zero())
                break;
            inv += power.scaled(Rational(detail::pow_sign(j)));
        }
        return EquivalenceSeries(dim, inv);
    }

    EquivalenceSeries compose(const EquivalenceSeries &other) const
    {
        auto c = [](const Cochain &a, const Cochain &b) { return insert(a, 0, b); };
        return EquivalenceSeries(dim, series_mul(t, other.t, c));
    }
};

// Push-forward of a star product along T: the unique product with
// T(a * b) = T(a) *' T(b), i.e. a *' b = T((T^{-1} a) * (T^{-1} b)).
inline StarProduct apply_equivalence(const EquivalenceSeries &T, const StarProduct &s)
{
    if (T.order() != s.order())
        throw std::invalid_argument("apply_equivalence: order mismatch");
    int d = s.dim;
    Cochain mu = Cochain::mu(d);
    auto pi_at = [&](int k) { return k == 0 ? mu : s.pi.coeff(k); };
    EquivalenceSeries tinv = T.inverse();

    Series<Cochain> full = Series<Cochain>::zero(s.order(), Cochain(d, 2));
    for (int m = 0; m <= s.order(); ++m) {
        Cochain acc(d, 2);
        for (int j = 0; j <= m; ++j) {
            if (T.t.coeff(j).is_zero())
                continue;
            for (int k = 0; j + k <= m; ++k) {
                Cochain pk = pi_at(k);
                if (pk.is_zero())
                    continue;
                Cochain outer = insert(T.t.coeff(j), 0, pk);
                for (int p = 0; j + k + p <= m; ++p) {
                    int q = m - j - k - p;
                    if (tinv.t.coeff(p).is_zero() || tinv.t.coeff(q).is_zero())
                        continue;
                    acc += insert(insert(outer, 0, tinv.t.coeff(p)), 1, tinv.t.coeff(q));
                }
            }
        }
        full.coeff(m) = acc;
    }
    full.coeff(0) = Cochain::zero(d, 2); // subtract mu; T_0 = Id guarantees full_0 = mu
    return StarProduct(d, full);
}

// a*b - b*a as an exact truncated series, for plain polynomial arguments.
inline Series<Poly> commutator_expansion(const StarProduct &s, const Poly &a, const Poly &b)
{
    Series<Poly> sa = constant_poly_series(a, s.order());
    Series<Poly> sb = constant_poly_series(b, s.order());
    return star_multiply(s, sa, sb) - star_multiply(s, sb, sa);
}

// Formal Poisson structures: bivector series with [pi, pi]_SN = 0.
struct FormalPoisson {
    int dim;
    Series<PolyVector> pi;

    FormalPoisson(int dim_, Series<PolyVector> pi_) : dim(dim_), pi(std::move(pi_))
    {
        if (!pi.coeff(0).is_zero())
            throw std::invalid_argument("FormalPoisson: nonzero order-0 term");
        for (int k = 1; k <= pi.order(); ++k)
            if (!pi.coeff(k).is_zero() && pi.coeff(k).degree() != 2)
                throw std::invalid_argument("FormalPoisson: coefficients must be bivectors");
    }
};

// [pi, pi]_SN truncated; zero iff pi is a formal Poisson structure.
inline Series<PolyVector> jacobi_check(const FormalPoisson &p)
{
    DglaOps<PolyVector> ops = polyvector_dgla(p.dim);
    return series_bracket(ops, p.pi, p.pi);
}

} // namespace hochlab
