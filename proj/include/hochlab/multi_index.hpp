#pragma once

// Exponent vectors for d commuting variables, with the graded lexicographic
// order used everywhere for canonical forms. Also the combinatorics needed
// to expand derivative words by the Leibniz rule: componentwise binomials,
// falling factorials, and enumeration of splittings.

#include "hochlab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hochlab {

struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int dim) : e(static_cast<std::size_t>(dim), 0)
    {
        if (dim <= 0)
            throw std::invalid_argument("MultiIndex: dimension must be positive");
    }
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    int dim() const { return static_cast<int>(e.size()); }
    int total() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_zero() const { return total() == 0; }

    int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
    int &operator[](int i) { return e[static_cast<std::size_t>(i)]; }

    static MultiIndex unit(int dim, int axis)
    {
        MultiIndex m(dim);
        m[axis] = 1;
        return m;
    }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) { return a.e == b.e; }
    friend bool operator!=(const MultiIndex &a, const MultiIndex &b) { return a.e != b.e; }
};

// Graded lexicographic: compare total degree first, then lexicographically
// with x1 > x2 > ... (a larger exponent on an earlier axis sorts higher).
// Returns -1, 0, +1.
inline int grlex_cmp(const MultiIndex &a, const MultiIndex &b)
{
    int ta = a.total(), tb = b.total();
    if (ta != tb)
        return ta < tb ? -1 : 1;
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

inline bool operator<(const MultiIndex &a, const MultiIndex &b) { return grlex_cmp(a, b) < 0; }

struct GrlexLess {
    bool operator()(const MultiIndex &a, const MultiIndex &b) const
    {
        return grlex_cmp(a, b) < 0;
    }
};

inline MultiIndex operator+(const MultiIndex &a, const MultiIndex &b)
{
    MultiIndex r = a;
    for (int i = 0; i < a.dim(); ++i)
        r[i] += b[i];
    return r;
}

// Componentwise a - b; requires b <= a componentwise.
inline MultiIndex mi_sub(const MultiIndex &a, const MultiIndex &b)
{
    MultiIndex r = a;
    for (int i = 0; i < a.dim(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0)
            throw std::invalid_argument("mi_sub: not componentwise <=");
    }
    return r;
}

inline bool mi_leq(const MultiIndex &a, const MultiIndex &b)
{
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

// prod_i C(a_i, b_i); zero when b !<= a.
inline Rational mi_binomial(const MultiIndex &a, const MultiIndex &b)
{
    Rational r(1);
    for (int i = 0; i < a.dim(); ++i) {
        if (b[i] > a[i])
            return Rational();
        r *= Rational::binomial(static_cast<unsigned long>(a[i]),
                                static_cast<unsigned long>(b[i]));
    }
    return r;
}

// prod_i g_i (g_i - 1) ... (g_i - a_i + 1): the coefficient of d^a x^g.
inline Rational mi_falling(const MultiIndex &g, const MultiIndex &a)
{
    Rational r(1);
    for (int i = 0; i < g.dim(); ++i) {
        if (a[i] > g[i])
            return Rational();
        for (int j = 0; j < a[i]; ++j)
            r *= Rational(g[i] - j);
    }
    return r;
}

// All multi-indices of dimension d with total degree in [min_total, max_total],
// in ascending graded lexicographic order.
inline std::vector<MultiIndex> mi_enumerate(int d, int min_total, int max_total)
{
    std::vector<MultiIndex> out;
    std::vector<MultiIndex> cur;
    for (int t = min_total; t <= max_total; ++t) {
        cur.clear();
        MultiIndex m(d);
        std::function<void(int, int)> rec = [&](int axis, int rem) {
            if (axis == d - 1) {
                m[axis] = rem;
                cur.push_back(m);
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                m[axis] = v;
                rec(axis + 1, rem - v);
            }
        };
        rec(0, t);
        std::sort(cur.begin(), cur.end(),
                  [](const MultiIndex &a, const MultiIndex &b) { return grlex_cmp(a, b) < 0; });
        out.insert(out.end(), cur.begin(), cur.end());
    }
    return out;
}

// All b with b <= a componentwise (2^|a|-ish, used for Leibniz splits).
inline std::vector<MultiIndex> mi_sub_indices(const MultiIndex &a)
{
    std::vector<MultiIndex> out;
    MultiIndex m(a.dim());
    std::function<void(int)> rec = [&](int axis) {
        if (axis == a.dim()) {
            out.push_back(m);
            return;
        }
        for (int v = 0; v <= a[axis]; ++v) {
            m[axis] = v;
            rec(axis + 1);
        }
    };
    rec(0);
    return out;
}

// Enumerates ordered splittings a = p_1 + ... + p_k together with the
// multinomial coefficient prod_i a_i! / (p_1i! ... p_ki!), calling
// fn(parts, coeff) for each.
inline void mi_splits(const MultiIndex &a, int k,
                      const std::function<void(const std::vector<MultiIndex> &, const Rational &)> &fn)
{
    if (k == 0) {
        if (a.is_zero())
            fn({}, Rational(1));
        return;
    }
    std::vector<MultiIndex> parts(static_cast<std::size_t>(k), MultiIndex(a.dim()));
    std::function<void(int, MultiIndex, Rational)> rec = [&](int part, MultiIndex rem, Rational coeff) {
        if (part == k - 1) {
            parts[static_cast<std::size_t>(part)] = rem;
            fn(parts, coeff);
            return;
        }
        for (const MultiIndex &p : mi_sub_indices(rem)) {
            parts[static_cast<std::size_t>(part)] = p;
            rec(part + 1, mi_sub(rem, p), coeff * mi_binomial(rem, p));
        }
    };
    rec(0, a, Rational(1));
}

} // namespace hochlab
