#pragma once

// Seeded, platform-independent random generation for the property suites.
// splitmix64 core; all draws are bounded so failures replay exactly from
// the seed echoed in reports.

#include "hochlab/chain.hpp"
#include "hochlab/cochain.hpp"
#include "hochlab/multipoly.hpp"
#include "hochlab/polyvec.hpp"
#include "hochlab/rational.hpp"

#include <cstdint>
#include <vector>

namespace hochlab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    int range(int lo, int hi) // inclusive
    {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Small nonzero rational with numerator in [-max_num, max_num] and
    // denominator in [1, max_den].
    Rational rational(int max_num = 5, int max_den = 3)
    {
        long num = 0;
        while (num == 0)
            num = range(-max_num, max_num);
        return Rational(num, range(1, max_den));
    }

    MultiIndex multi_index(int dim, int max_total)
    {
        MultiIndex m(dim);
        int total = range(0, max_total);
        for (int i = 0; i < total; ++i)
            m[range(0, dim - 1)] += 1;
        return m;
    }

    Poly poly(int dim, int max_degree, int terms, bool allow_zero = true)
    {
        Poly p(dim);
        for (int i = 0; i < terms; ++i)
            p += Poly::monomial(multi_index(dim, max_degree), rational());
        if (!allow_zero && p.is_zero())
            p += Poly::monomial(multi_index(dim, max_degree), Rational(1));
        return p;
    }

    Cochain cochain(int dim, int arity, int coeff_degree, int slot_order, int terms)
    {
        Cochain c(dim, arity);
        for (int i = 0; i < terms; ++i) {
            Word w;
            w.reserve(static_cast<std::size_t>(arity));
            for (int j = 0; j < arity; ++j)
                w.push_back(multi_index(dim, slot_order));
            c += Cochain::term(poly(dim, coeff_degree, 2), w);
        }
        return c;
    }

    // Cochain with every slot word of positive order, so it kills unit
    // arguments. The cyclic-side identities involving B hold exactly on
    // these.
    Cochain normalized_cochain(int dim, int arity, int coeff_degree, int slot_order, int terms)
    {
        Cochain c(dim, arity);
        for (int i = 0; i < terms; ++i) {
            Word w;
            w.reserve(static_cast<std::size_t>(arity));
            for (int j = 0; j < arity; ++j) {
                MultiIndex m = multi_index(dim, slot_order - 1);
                m[range(0, dim - 1)] += 1;
                w.push_back(m);
            }
            c += Cochain::term(poly(dim, coeff_degree, 2), w);
        }
        return c;
    }

    Chain chain(int dim, int arity, int entry_degree, int terms)
    {
        Chain c(dim);
        for (int i = 0; i < terms; ++i) {
            ChainTuple t;
            t.reserve(static_cast<std::size_t>(arity) + 1);
            for (int j = 0; j <= arity; ++j)
                t.push_back(multi_index(dim, entry_degree));
            c += Chain::of_monomials(t, rational());
        }
        return c;
    }

    AxisSet axis_set(int dim, int size)
    {
        if (size > dim)
            throw std::invalid_argument("Rng::axis_set: size exceeds dimension");
        AxisSet axes;
        while (static_cast<int>(axes.size()) < size) {
            int ax = range(0, dim - 1);
            bool seen = false;
            for (int a : axes)
                seen = seen || a == ax;
            if (!seen)
                axes.push_back(ax);
        }
        std::sort(axes.begin(), axes.end());
        return axes;
    }

    PolyVector polyvector(int dim, int degree, int coeff_degree, int terms)
    {
        PolyVector v(dim, degree);
        if (degree > dim)
            return v; // the space is zero
        for (int i = 0; i < terms; ++i)
            v += PolyVector::term(poly(dim, coeff_degree, 2), axis_set(dim, degree));
        return v;
    }

    ExtForm form(int dim, int degree, int coeff_degree, int terms)
    {
        ExtForm w(dim, degree);
        if (degree > dim)
            return w;
        for (int i = 0; i < terms; ++i)
            w += ExtForm::term(poly(dim, coeff_degree, 2), axis_set(dim, degree));
        return w;
    }

  private:
    std::uint64_t state_;
};

} // namespace hochlab
