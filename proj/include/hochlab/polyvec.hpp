#pragma once

// Polyvector fields and exterior forms with polynomial coefficients on the
// affine d-space, stored antisymmetry-normalized: terms are keyed by
// strictly increasing axis subsets with polynomial coefficients.
//
// Operations: the exterior (wedge) product with Koszul signs, the
// Schouten-Nijenhuis bracket, contraction of forms by polyvectors, the de
// Rham differential, the Lie derivative via the Cartan formula, and the
// inclusion of polyvectors into Hochschild cochains by the antisymmetrized
// first-order derivative word, normalized by 1/k!.
//
// Fixed conventions (exercised by the identity suites):
//   - contraction: i_{d_j}(dx^{i_1}...dx^{i_p}) = sum_r (-1)^{r-1}
//     delta^{i_r}_j (slot r removed), and i_{a wedge b} = i_a o i_b;
//     in particular i_{dx wedge dy}(dx^dy) = -1.
//   - Schouten on decomposables, with Lie degrees |.|-1 in all Koszul
//     signs:
//       [f xi_I, g xi_J] = sum_r (-1)^{p-r} f (d_{i_r} g) xi_{I\r} ^ xi_J
//         - (-1)^{(p-1)(q-1)} sum_s (-1)^{q-s} g (d_{j_s} f) xi_{J\s} ^ xi_I.

#include "hochlab/cochain.hpp"
#include "hochlab/multipoly.hpp"
#include "hochlab/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hochlab {

using AxisSet = std::vector<int>; // strictly increasing axes

inline int axis_cmp(const AxisSet &a, const AxisSet &b)
{
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

// Merges two increasing axis sets; returns the Koszul sign, or 0 when they
// overlap.
inline int axis_merge(const AxisSet &a, const AxisSet &b, AxisSet &out)
{
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j])
            return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size())
        out.push_back(a[i++]);
    while (j < b.size())
        out.push_back(b[j++]);
    return inversions % 2 == 0 ? 1 : -1;
}

namespace detail {

// Shared representation for polyvectors and forms.
template <class Tag>
class Graded {
  public:
    using Term = std::pair<AxisSet, Poly>;

    // Degrees above the dimension are allowed; such spaces only contain
    // zero, which keeps operations like d on top forms total.
    Graded(int dim, int degree) : dim_(dim), degree_(degree)
    {
        if (dim <= 0)
            throw std::invalid_argument("polyvec: dimension must be positive");
        if (degree < 0)
            throw std::invalid_argument("polyvec: negative degree");
    }

    static Graded zero(int dim, int degree) { return Graded(dim, degree); }

    // Single term; axes must be strictly increasing.
    static Graded term(const Poly &coeff, const AxisSet &axes)
    {
        for (std::size_t i = 0; i + 1 < axes.size(); ++i)
            if (axes[i] >= axes[i + 1])
                throw std::invalid_argument("polyvec: axes must be strictly increasing");
        for (int ax : axes)
            if (ax < 0 || ax >= coeff.dim())
                throw std::invalid_argument("polyvec: axis out of range");
        Graded g(coeff.dim(), static_cast<int>(axes.size()));
        if (!coeff.is_zero())
            g.terms_.emplace_back(axes, coeff);
        return g;
    }

    static Graded scalar(const Poly &p) { return term(p, {}); }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    Graded zero_like() const { return Graded(dim_, degree_); }
    const std::vector<Term> &terms() const { return terms_; }

    int max_coeff_degree() const
    {
        int d = 0;
        for (const Term &t : terms_)
            d = std::max(d, t.second.degree());
        return d;
    }

    Graded &operator+=(const Graded &o)
    {
        if (dim_ != o.dim_)
            throw std::invalid_argument("polyvec: dimension mismatch");
        // a zero value is degree-agnostic
        if (o.is_zero())
            return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        check(o);
        std::map<AxisSet, Poly, Less> acc;
        for (const Term &t : terms_)
            acc.emplace(t.first, t.second);
        for (const Term &t : o.terms_) {
            auto it = acc.find(t.first);
            if (it == acc.end())
                acc.emplace(t.first, t.second);
            else
                it->second += t.second;
        }
        terms_.clear();
        for (const auto &kv : acc)
            if (!kv.second.is_zero())
                terms_.emplace_back(kv.first, kv.second);
        return *this;
    }

    friend Graded operator+(Graded a, const Graded &b) { return a += b; }
    Graded operator-() const { return scaled(Rational(-1)); }
    friend Graded operator-(Graded a, const Graded &b) { return a += -b; }

    Graded scaled(const Rational &c) const
    {
        Graded r(dim_, degree_);
        if (c.is_zero())
            return r;
        for (const Term &t : terms_)
            r.terms_.emplace_back(t.first, t.second.scaled(c));
        return r;
    }

    friend bool operator==(const Graded &a, const Graded &b)
    {
        if (a.dim_ != b.dim_)
            return false;
        if (a.is_zero() && b.is_zero())
            return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Graded &a, const Graded &b) { return !(a == b); }

    friend int cmp(const Graded &a, const Graded &b)
    {
        if (a.dim_ != b.dim_)
            return a.dim_ < b.dim_ ? -1 : 1;
        if (a.degree_ != b.degree_)
            return a.degree_ < b.degree_ ? -1 : 1;
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = axis_cmp(a.terms_[i].first, b.terms_[i].first);
            if (c != 0)
                return c;
            c = cmp(a.terms_[i].second, b.terms_[i].second);
            if (c != 0)
                return c;
        }
        if (a.terms_.size() != b.terms_.size())
            return a.terms_.size() < b.terms_.size() ? -1 : 1;
        return 0;
    }

    std::string str(const char *axis_prefix) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const Term &t : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << t.second.str() << ")";
            for (int ax : t.first)
                os << "*" << axis_prefix << (ax + 1);
        }
        return os.str();
    }

    struct Less {
        bool operator()(const AxisSet &a, const AxisSet &b) const
        {
            return axis_cmp(a, b) < 0;
        }
    };

    class Builder {
      public:
        Builder(int dim, int degree) : dim_(dim), degree_(degree) {}

        void add(const AxisSet &axes, const Poly &coeff)
        {
            if (coeff.is_zero())
                return;
            auto it = acc_.find(axes);
            if (it == acc_.end())
                acc_.emplace(axes, coeff);
            else
                it->second += coeff;
        }

        Graded build() const
        {
            Graded g(dim_, degree_);
            for (const auto &kv : acc_)
                if (!kv.second.is_zero())
                    g.terms_.emplace_back(kv.first, kv.second);
            return g;
        }

      private:
        int dim_;
        int degree_;
        std::map<AxisSet, Poly, Less> acc_;
    };

  private:
    void check(const Graded &o) const
    {
        if (dim_ != o.dim_ || degree_ != o.degree_)
            throw std::invalid_argument("polyvec: dimension or degree mismatch");
    }

    int dim_;
    int degree_;
    std::vector<Term> terms_;
};

struct PolyVectorTag {};
struct ExtFormTag {};

template <class Tag>
Graded<Tag> wedge_impl(const Graded<Tag> &a, const Graded<Tag> &b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("wedge: dimension mismatch");
    typename Graded<Tag>::Builder out(a.dim(), a.degree() + b.degree());
    AxisSet merged;
    for (const auto &[ka, ca] : a.terms())
        for (const auto &[kb, cb] : b.terms()) {
            int sign = axis_merge(ka, kb, merged);
            if (sign == 0)
                continue;
            out.add(merged, (ca * cb).scaled(Rational(sign)));
        }
    return out.build();
}

} // namespace detail

using PolyVector = detail::Graded<detail::PolyVectorTag>;
using ExtForm = detail::Graded<detail::ExtFormTag>;

inline PolyVector wedge(const PolyVector &a, const PolyVector &b)
{
    return detail::wedge_impl(a, b);
}
inline ExtForm wedge(const ExtForm &a, const ExtForm &b) { return detail::wedge_impl(a, b); }

inline PolyVector coordinate_vector(int dim, int axis)
{
    return PolyVector::term(Poly::constant(dim, Rational(1)), {axis});
}

// Schouten-Nijenhuis bracket, degree k_a + k_b - 1.
inline PolyVector schouten_bracket(const PolyVector &a, const PolyVector &b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("schouten_bracket: dimension mismatch");
    int p = a.degree(), q = b.degree();
    if (p + q == 0)
        return PolyVector::zero(a.dim(), 0); // [functions, functions] = 0
    PolyVector::Builder out(a.dim(), p + q - 1);
    AxisSet merged;
    int cross = detail::pow_sign(static_cast<long>(p - 1) * (q - 1));
    for (const auto &[ka, ca] : a.terms())
        for (const auto &[kb, cb] : b.terms()) {
            for (std::size_t r = 0; r < ka.size(); ++r) {
                Poly dg = cb.partial(ka[r]);
                if (dg.is_zero())
                    continue;
                AxisSet rest = ka;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
                int sign = axis_merge(rest, kb, merged);
                if (sign == 0)
                    continue;
                int rsign = detail::pow_sign(static_cast<long>(p) - 1 - static_cast<long>(r));
                out.add(merged, (ca * dg).scaled(Rational(sign * rsign)));
            }
            for (std::size_t s = 0; s < kb.size(); ++s) {
                Poly df = ca.partial(kb[s]);
                if (df.is_zero())
                    continue;
                AxisSet rest = kb;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
                int sign = axis_merge(rest, ka, merged);
                if (sign == 0)
                    continue;
                int ssign = detail::pow_sign(static_cast<long>(q) - 1 - static_cast<long>(s));
                out.add(merged, (cb * df).scaled(Rational(-cross * sign * ssign)));
            }
        }
    return out.build();
}

// Contraction by a single coordinate direction.
inline ExtForm contract_axis(int axis, const ExtForm &w)
{
    if (w.degree() == 0)
        return ExtForm::zero(w.dim(), 0);
    ExtForm::Builder out(w.dim(), w.degree() - 1);
    for (const auto &[k, c] : w.terms())
        for (std::size_t r = 0; r < k.size(); ++r)
            if (k[r] == axis) {
                AxisSet rest = k;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
                out.add(rest, c.scaled(Rational(detail::pow_sign(static_cast<long>(r)))));
                break;
            }
    return out.build();
}

// i_{gamma} with i_{a wedge b} = i_a o i_b; zero when degree(gamma) >
// degree(omega).
inline ExtForm contraction(const PolyVector &g, const ExtForm &w)
{
    if (g.dim() != w.dim())
        throw std::invalid_argument("contraction: dimension mismatch");
    if (g.degree() > w.degree())
        return ExtForm::zero(w.dim(), std::max(0, w.degree() - g.degree()));
    ExtForm::Builder out(w.dim(), w.degree() - g.degree());
    for (const auto &[k, c] : g.terms()) {
        ExtForm cur = w;
        for (std::size_t r = k.size(); r-- > 0;)
            cur = contract_axis(k[static_cast<std::size_t>(r)], cur);
        for (const auto &[kk, cc] : cur.terms())
            out.add(kk, c * cc);
    }
    return out.build();
}

// De Rham differential.
inline ExtForm de_rham(const ExtForm &w)
{
    ExtForm::Builder out(w.dim(), w.degree() + 1);
    AxisSet merged;
    for (const auto &[k, c] : w.terms())
        for (int ax = 0; ax < w.dim(); ++ax) {
            Poly dc = c.partial(ax);
            if (dc.is_zero())
                continue;
            AxisSet da{ax};
            int sign = axis_merge(da, k, merged);
            if (sign == 0)
                continue;
            out.add(merged, dc.scaled(Rational(sign)));
        }
    return out.build();
}

// Lie derivative by the Cartan formula l_g = d i_g - (-1)^{|g|} i_g d.
inline ExtForm lie_derivative(const PolyVector &g, const ExtForm &w)
{
    ExtForm a = de_rham(contraction(g, w));
    ExtForm b = contraction(g, de_rham(w));
    return a - b.scaled(Rational(detail::pow_sign(g.degree())));
}

// Hochschild-Kostant-Rosenberg inclusion: the degree-k polyvector
// f d_{i_1} ^ ... ^ d_{i_k} goes to the arity-k cochain
// (1/k!) sum_{s in S_k} sgn(s) f . d_{i_s(1)} x ... x d_{i_s(k)}.
inline Cochain hkr(const PolyVector &g)
{
    int k = g.degree();
    Cochain::Builder out(g.dim(), k);
    Rational norm = Rational(1) / Rational::factorial(static_cast<unsigned>(k));
    for (const auto &[axes, coeff] : g.terms()) {
        std::vector<int> perm(axes.begin(), axes.end());
        std::sort(perm.begin(), perm.end());
        // iterate permutations with their signs
        std::vector<int> idx(perm.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = static_cast<int>(i);
        do {
            int inv = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j])
                        ++inv;
            Word w;
            w.reserve(perm.size());
            for (int ax : perm)
                w.push_back(MultiIndex::unit(g.dim(), ax));
            out.add(w, coeff.scaled(norm * Rational(detail::pow_sign(inv))));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out.build();
}

// Parsers for the "x1^2*d1^d2" (polyvectors) and "x1^2*dx1^dx2" (forms)
// text syntax: '+'/'-' separated terms, '*' separated factors, a factor
// starting with the axis prefix is a wedge word joined by '^'.
namespace detail {

template <class T>
T parse_graded(std::string_view text, int dim, int expected_degree, const char *prefix)
{
    T acc = T::zero(dim, expected_degree);
    std::size_t pos = 0;
    bool first = true;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip();
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            throw std::invalid_argument("polyvec parse: expected '+' or '-'");
        }
        first = false;
        // split the term into factors on '*'
        std::string coeff_text;
        AxisSet axes;
        while (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] != '*' && text[pos] != '+' &&
                   text[pos] != '-')
                ++pos;
            std::string factor(text.substr(start, pos - start));
            while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.back())))
                factor.pop_back();
            std::size_t fs = 0;
            while (fs < factor.size() && std::isspace(static_cast<unsigned char>(factor[fs])))
                ++fs;
            factor = factor.substr(fs);
            if (factor.rfind(prefix, 0) == 0 &&
                factor.size() > std::string(prefix).size() &&
                std::isdigit(static_cast<unsigned char>(factor[std::string(prefix).size()]))) {
                // wedge word: prefixN joined by '^'
                std::size_t p = 0;
                while (p < factor.size()) {
                    std::size_t e = factor.find('^', p);
                    std::string piece = factor.substr(p, e == std::string::npos ? e : e - p);
                    if (piece.rfind(prefix, 0) != 0)
                        throw std::invalid_argument("polyvec parse: bad wedge factor '" +
                                                    piece + "'");
                    int ax = std::stoi(piece.substr(std::string(prefix).size())) - 1;
                    if (ax < 0 || ax >= dim)
                        throw std::invalid_argument("polyvec parse: axis out of range");
                    axes.push_back(ax);
                    if (e == std::string::npos)
                        break;
                    p = e + 1;
                }
            } else if (!factor.empty()) {
                if (!coeff_text.empty())
                    coeff_text += "*";
                coeff_text += factor;
            }
            if (pos < text.size() && text[pos] == '*')
                ++pos;
        }
        Poly coeff = coeff_text.empty() ? Poly::constant(dim, Rational(1))
                                        : Poly::parse(coeff_text, dim);
        // normalize axis order with the permutation sign
        int inv = 0;
        for (std::size_t i = 0; i < axes.size(); ++i)
            for (std::size_t j = i + 1; j < axes.size(); ++j) {
                if (axes[i] == axes[j])
                    throw std::invalid_argument("polyvec parse: repeated axis");
                if (axes[i] > axes[j])
                    ++inv;
            }
        std::sort(axes.begin(), axes.end());
        if (static_cast<int>(axes.size()) != expected_degree)
            throw std::invalid_argument("polyvec parse: degree mismatch");
        acc += T::term(coeff.scaled(Rational(sign * detail::pow_sign(inv))), axes);
        skip();
    }
    return acc;
}

} // namespace detail

inline PolyVector parse_polyvector(std::string_view text, int dim, int degree)
{
    return detail::parse_graded<PolyVector>(text, dim, degree, "d");
}

inline ExtForm parse_form(std::string_view text, int dim, int degree)
{
    return detail::parse_graded<ExtForm>(text, dim, degree, "dx");
}

} // namespace hochlab
