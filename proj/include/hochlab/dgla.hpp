#pragma once

// The generic DG Lie algebra layer, instantiated by Hochschild cochains
// (differential = bracket with the multiplication, bracket = Gerstenhaber)
// and by polyvector fields (zero differential, Schouten bracket). Series
// live over K[hbar]/hbar^{N+1}.
//
// Provides Maurer-Cartan defect, twisting of the differential by an MC
// element, the gauge action
//
//     exp(xi) . alpha = exp([., xi]) alpha + f([., xi]) dxi,
//     f(x) = (e^x - 1)/x,
//
// with the operator series applied on the left, truncated BCH composition
// for the group property, and the Chevalley-Eilenberg coderivation on
// symmetric words determined by Q(v) = -dv and
// Q(v1, v2) = (-1)^{|v1|+1} [v1, v2].

#include "hochlab/cochain.hpp"
#include "hochlab/hbar_series.hpp"
#include "hochlab/polyvec.hpp"
#include "hochlab/rational.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hochlab {

template <class E>
struct DglaOps {
    std::function<E(const E &)> dif;              // degree +1
    std::function<E(const E &, const E &)> brk;   // Lie bracket, degree 0 in Lie grading
    std::function<int(const E &)> lie_degree;
    // decomposition into scalar multiples of canonical basis elements;
    // Chevalley-Eilenberg words are multilinear in their slots, so the
    // canonical form of a word sum expands over these atoms
    std::function<std::vector<std::pair<Rational, E>>(const E &)> atoms;
};

inline DglaOps<Cochain> hochschild_dgla(int dim)
{
    DglaOps<Cochain> ops;
    ops.dif = [](const Cochain &c) { return dgla_differential(c); };
    ops.brk = [](const Cochain &a, const Cochain &b) { return gerstenhaber_bracket(a, b); };
    ops.lie_degree = [](const Cochain &c) { return c.lie_degree(); };
    ops.atoms = [](const Cochain &c) {
        std::vector<std::pair<Rational, Cochain>> out;
        for (const auto &[w, poly] : c.terms())
            for (const auto &[mono, coeff] : poly.terms())
                out.emplace_back(coeff,
                                 Cochain::term(Poly::monomial(mono, Rational(1)), w));
        return out;
    };
    (void)dim;
    return ops;
}

inline DglaOps<PolyVector> polyvector_dgla(int dim)
{
    DglaOps<PolyVector> ops;
    ops.dif = [](const PolyVector &v) { return PolyVector::zero(v.dim(), v.degree() + 1); };
    ops.brk = [](const PolyVector &a, const PolyVector &b) { return schouten_bracket(a, b); };
    ops.lie_degree = [](const PolyVector &v) { return v.degree() - 1; };
    ops.atoms = [](const PolyVector &v) {
        std::vector<std::pair<Rational, PolyVector>> out;
        for (const auto &[axes, poly] : v.terms())
            for (const auto &[mono, coeff] : poly.terms())
                out.emplace_back(coeff,
                                 PolyVector::term(Poly::monomial(mono, Rational(1)), axes));
        return out;
    };
    (void)dim;
    return ops;
}

template <class E>
void require_degree(const DglaOps<E> &ops, const Series<E> &s, int lie_degree, const char *what)
{
    if (!s.coeff(0).is_zero())
        throw std::invalid_argument(std::string(what) + ": nonzero constant term");
    for (int k = 1; k <= s.order(); ++k)
        if (!s.coeff(k).is_zero() && ops.lie_degree(s.coeff(k)) != lie_degree)
            throw std::invalid_argument(std::string(what) + ": wrong Lie degree");
}

template <class E>
Series<E> series_differential(const DglaOps<E> &ops, const Series<E> &s)
{
    Series<E> out = s;
    for (int k = 0; k <= s.order(); ++k)
        out.coeff(k) = ops.dif(s.coeff(k));
    return out;
}

template <class E>
Series<E> series_bracket(const DglaOps<E> &ops, const Series<E> &a, const Series<E> &b)
{
    return series_bilinear(a, b, a.coeff(0).zero_like(), ops.brk);
}

// d(alpha) + 1/2 [alpha, alpha]; alpha is MC iff this vanishes.
template <class E>
Series<E> mc_defect(const DglaOps<E> &ops, const Series<E> &alpha)
{
    require_degree(ops, alpha, 1, "mc_defect");
    return series_differential(ops, alpha) +
           series_bracket(ops, alpha, alpha).scaled(Rational(1, 2));
}

// The twisted differential d + [alpha, .] acting on series.
template <class E>
std::function<Series<E>(const Series<E> &)> twisted_differential(const DglaOps<E> &ops,
                                                                 const Series<E> &alpha)
{
    if (!mc_defect(ops, alpha).is_zero())
        throw std::invalid_argument("twisted_differential: element is not Maurer-Cartan");
    return [ops, alpha](const Series<E> &x) {
        return series_differential(ops, x) + series_bracket(ops, alpha, x);
    };
}

// exp([., xi]) alpha + f([., xi]) d xi with ad(x) = [x, xi]. Since xi has a
// zero constant term every ad application raises the hbar valuation, so
// both operator series are finite sums.
template <class E>
Series<E> gauge_action(const DglaOps<E> &ops, const Series<E> &xi, const Series<E> &alpha)
{
    require_degree(ops, xi, 0, "gauge_action: gauge element");
    require_degree(ops, alpha, 1, "gauge_action: MC element");
    xi.check_order(alpha);
    int n = alpha.order();

    Series<E> result = alpha;
    Series<E> power = alpha; // ad^j(alpha)
    Rational inv_fact(1);
    for (int j = 1; j <= n; ++j) {
        power = series_bracket(ops, power, xi);
        if (power.is_zero())
            break;
        inv_fact /= Rational(j);
        result += power.scaled(inv_fact);
    }

    Series<E> dxi = series_differential(ops, xi);
    result += dxi;
    power = dxi; // ad^j(d xi), weighted by 1/(j+1)!
    for (int j = 1; j <= n; ++j) {
        power = series_bracket(ops, power, xi);
        if (power.is_zero())
            break;
        result += power.scaled(Rational(1) / Rational::factorial(static_cast<unsigned>(j + 1)));
    }
    return result;
}

// Baker-Campbell-Hausdorff through triple brackets; exact for gauge
// elements when the truncation order is at most 3.
template <class E>
Series<E> bch3(const DglaOps<E> &ops, const Series<E> &a, const Series<E> &b)
{
    Series<E> ab = series_bracket(ops, a, b);
    Series<E> out = a + b + ab.scaled(Rational(1, 2));
    out += series_bracket(ops, a, ab).scaled(Rational(1, 12));
    out += series_bracket(ops, b, series_bracket(ops, b, a)).scaled(Rational(1, 12));
    return out;
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg coalgebra: symmetric words of desuspended elements.

template <class E>
struct CeTerm {
    Rational coeff;
    std::vector<E> word;
};

template <class E>
using CeSum = std::vector<CeTerm<E>>;

inline constexpr int ce_max_word_length = 4;

// Canonical form: every slot is expanded into atoms (words are multilinear
// in their slots), atom words are sorted with Koszul signs over the
// desuspended degrees |v|+1, a repeated atom of odd desuspended degree
// kills the word, and identical words merge.
template <class E>
CeSum<E> ce_normalize(const DglaOps<E> &ops, const CeSum<E> &sum)
{
    CeSum<E> tmp;
    std::function<void(const CeTerm<E> &, std::size_t, CeTerm<E> &)> expand =
        [&](const CeTerm<E> &src, std::size_t pos, CeTerm<E> &cur) {
            if (pos == src.word.size()) {
                tmp.push_back(cur);
                return;
            }
            for (const auto &[scale, atom] : ops.atoms(src.word[pos])) {
                CeTerm<E> next = cur;
                next.coeff *= scale;
                next.word.push_back(atom);
                expand(src, pos + 1, next);
            }
        };
    CeSum<E> atomized;
    for (const CeTerm<E> &t : sum) {
        if (t.coeff.is_zero())
            continue;
        bool dead = false;
        for (const E &v : t.word)
            dead = dead || v.is_zero();
        if (dead)
            continue;
        CeTerm<E> seed;
        seed.coeff = t.coeff;
        expand(t, 0, seed);
    }
    atomized.swap(tmp);
    for (const CeTerm<E> &t : atomized) {
        CeTerm<E> c = t;
        // insertion sort tracking the Koszul sign
        int sign = 1;
        bool dead = false;
        for (std::size_t i = 1; i < c.word.size(); ++i)
            for (std::size_t j = i; j > 0 && cmp(c.word[j], c.word[j - 1]) < 0; --j) {
                int da = ops.lie_degree(c.word[j - 1]) + 1;
                int db = ops.lie_degree(c.word[j]) + 1;
                sign *= detail::pow_sign(static_cast<long>(da) * db);
                std::swap(c.word[j], c.word[j - 1]);
            }
        for (std::size_t i = 0; i + 1 < c.word.size(); ++i)
            if (cmp(c.word[i], c.word[i + 1]) == 0 &&
                (ops.lie_degree(c.word[i]) + 1) % 2 != 0)
                dead = true;
        if (dead)
            continue;
        c.coeff *= Rational(sign);
        tmp.push_back(std::move(c));
    }
    // merge identical words
    std::sort(tmp.begin(), tmp.end(), [](const CeTerm<E> &a, const CeTerm<E> &b) {
        if (a.word.size() != b.word.size())
            return a.word.size() < b.word.size();
        for (std::size_t i = 0; i < a.word.size(); ++i) {
            int c = cmp(a.word[i], b.word[i]);
            if (c != 0)
                return c < 0;
        }
        return false;
    });
    CeSum<E> out;
    for (CeTerm<E> &t : tmp) {
        if (!out.empty() && out.back().word.size() == t.word.size()) {
            bool same = true;
            for (std::size_t i = 0; i < t.word.size() && same; ++i)
                same = cmp(out.back().word[i], t.word[i]) == 0;
            if (same) {
                out.back().coeff += t.coeff;
                continue;
            }
        }
        out.push_back(std::move(t));
    }
    CeSum<E> pruned;
    for (CeTerm<E> &t : out)
        if (!t.coeff.is_zero())
            pruned.push_back(std::move(t));
    return pruned;
}

template <class E>
bool ce_is_zero(const DglaOps<E> &ops, const CeSum<E> &sum)
{
    return ce_normalize(ops, sum).empty();
}

// The coderivation determined by Q(v) = -dv and
// Q(v1,v2) = (-1)^{|v1|+1}[v1,v2], extended to longer words with Koszul
// signs over desuspended degrees.
template <class E>
CeSum<E> ce_coderivation(const DglaOps<E> &ops, const std::vector<E> &word)
{
    int n = static_cast<int>(word.size());
    if (n < 1)
        throw std::invalid_argument("ce_coderivation: empty word");
    if (n > ce_max_word_length)
        throw std::invalid_argument("ce_coderivation: word too long");
    CeSum<E> out;

    auto desusp = [&](const E &v) { return ops.lie_degree(v) + 1; };

    // unary part: replace v_i by -dv_i in place; sign from moving Q (degree
    // 1) past v_1..v_{i-1}
    for (int i = 0; i < n; ++i) {
        int sign = 1;
        for (int r = 0; r < i; ++r)
            sign *= detail::pow_sign(desusp(word[static_cast<std::size_t>(r)]));
        E dv = ops.dif(word[static_cast<std::size_t>(i)]);
        if (dv.is_zero())
            continue;
        CeTerm<E> t;
        t.coeff = Rational(-sign);
        t.word = word;
        t.word[static_cast<std::size_t>(i)] = dv;
        out.push_back(std::move(t));
    }

    // binary part: move v_i, v_j to the front, replace the pair by
    // (-1)^{|v_i|+1}[v_i, v_j]
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int sign = 1;
            for (int r = 0; r < i; ++r)
                sign *= detail::pow_sign(
                    static_cast<long>(desusp(word[static_cast<std::size_t>(i)])) *
                    desusp(word[static_cast<std::size_t>(r)]));
            for (int r = 0; r < j; ++r)
                if (r != i)
                    sign *= detail::pow_sign(
                        static_cast<long>(desusp(word[static_cast<std::size_t>(j)])) *
                        desusp(word[static_cast<std::size_t>(r)]));
            E br = ops.brk(word[static_cast<std::size_t>(i)], word[static_cast<std::size_t>(j)]);
            if (br.is_zero())
                continue;
            int inner = detail::pow_sign(ops.lie_degree(word[static_cast<std::size_t>(i)]) + 1);
            CeTerm<E> t;
            t.coeff = Rational(sign * inner);
            t.word.push_back(std::move(br));
            for (int r = 0; r < n; ++r)
                if (r != i && r != j)
                    t.word.push_back(word[static_cast<std::size_t>(r)]);
            out.push_back(std::move(t));
        }

    return ce_normalize(ops, out);
}

// Q applied to a normalized sum of words.
template <class E>
CeSum<E> ce_coderivation(const DglaOps<E> &ops, const CeSum<E> &sum)
{
    CeSum<E> out;
    for (const CeTerm<E> &t : sum) {
        CeSum<E> q = ce_coderivation(ops, t.word);
        for (CeTerm<E> &u : q) {
            u.coeff *= t.coeff;
            out.push_back(std::move(u));
        }
    }
    return ce_normalize(ops, out);
}

} // namespace hochlab
