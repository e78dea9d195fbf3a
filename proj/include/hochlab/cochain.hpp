#pragma once

// Hochschild cochains of the polynomial algebra in d variables, restricted
// to polydifferential operators. An arity-k cochain is a finite sum of
// terms
//
//     c(x) . d^{a_1} tensor ... tensor d^{a_k}
//
// acting on arguments (p_1, ..., p_k) as c(x) * prod_j d^{a_j} p_j. Terms
// are keyed by the word (a_1, ..., a_k) of multi-indices and carry a
// polynomial coefficient; the term list is sorted and zero-free, so the
// representation is canonical.
//
// The coboundary, the cup product and the Gerstenhaber bracket are computed
// symbolically: inserting one operator into an argument slot of another
// expands the slot's derivative word over the inserted term by the
// multinomial Leibniz rule, so results are again canonical cochains.

#include "hochlab/multi_index.hpp"
#include "hochlab/multipoly.hpp"
#include "hochlab/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hochlab {

using Word = std::vector<MultiIndex>;

inline int word_cmp(const Word &a, const Word &b)
{
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = grlex_cmp(a[i], b[i]);
        if (c != 0)
            return c;
    }
    return 0;
}

struct WordLess {
    bool operator()(const Word &a, const Word &b) const { return word_cmp(a, b) < 0; }
};

struct WordHash {
    std::size_t operator()(const Word &w) const
    {
        std::size_t h = 1469598103934665603ull;
        for (const MultiIndex &m : w)
            for (int e : m.e) {
                h ^= static_cast<std::size_t>(e) + 0x9e3779b9;
                h *= 1099511628211ull;
            }
        return h;
    }
};

class Cochain {
  public:
    using Term = std::pair<Word, Poly>;

    Cochain(int dim, int arity) : dim_(dim), arity_(arity)
    {
        if (dim <= 0)
            throw std::invalid_argument("Cochain: dimension must be positive");
        if (arity < 0)
            throw std::invalid_argument("Cochain: negative arity");
    }

    static Cochain zero(int dim, int arity) { return Cochain(dim, arity); }

    // The single term c(x) . d^{a_1} x ... x d^{a_k}.
    static Cochain term(const Poly &coeff, const Word &word)
    {
        Cochain c(coeff.dim(), static_cast<int>(word.size()));
        for (const MultiIndex &m : word)
            if (m.dim() != coeff.dim())
                throw std::invalid_argument("Cochain::term: word dimension mismatch");
        if (!coeff.is_zero())
            c.terms_.emplace_back(word, coeff);
        return c;
    }

    // An element of A as an arity-0 cochain.
    static Cochain scalar(const Poly &p) { return term(p, {}); }

    // The multiplication of A: the arity-2 cochain with unit coefficient
    // and empty derivative words.
    static Cochain mu(int dim)
    {
        return term(Poly::constant(dim, Rational(1)),
                    Word{MultiIndex(dim), MultiIndex(dim)});
    }

    // First-order derivation d_axis as an arity-1 cochain.
    static Cochain partial_op(int dim, int axis)
    {
        return term(Poly::constant(dim, Rational(1)), Word{MultiIndex::unit(dim, axis)});
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    int lie_degree() const { return arity_ - 1; }
    bool is_zero() const { return terms_.empty(); }
    Cochain zero_like() const { return Cochain(dim_, arity_); }
    const std::vector<Term> &terms() const { return terms_; }

    int max_coeff_degree() const
    {
        int d = 0;
        for (const Term &t : terms_)
            d = std::max(d, t.second.degree());
        return d;
    }

    int max_slot_order() const
    {
        int d = 0;
        for (const Term &t : terms_)
            for (const MultiIndex &m : t.first)
                d = std::max(d, m.total());
        return d;
    }

    Cochain &operator+=(const Cochain &o)
    {
        // zero is arity-agnostic, which keeps series arithmetic total
        if (o.is_zero())
            return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        check_compatible(o);
        std::map<Word, Poly, WordLess> acc;
        for (const Term &t : terms_)
            acc.emplace(t.first, t.second);
        for (const Term &t : o.terms_) {
            auto it = acc.find(t.first);
            if (it == acc.end())
                acc.emplace(t.first, t.second);
            else
                it->second += t.second;
        }
        from_map(acc);
        return *this;
    }

    friend Cochain operator+(Cochain a, const Cochain &b) { return a += b; }

    Cochain operator-() const { return scaled(Rational(-1)); }
    friend Cochain operator-(Cochain a, const Cochain &b) { return a += -b; }

    Cochain scaled(const Rational &c) const
    {
        Cochain r(dim_, arity_);
        if (c.is_zero())
            return r;
        r.terms_.reserve(terms_.size());
        for (const Term &t : terms_)
            r.terms_.emplace_back(t.first, t.second.scaled(c));
        return r;
    }

    // Multiplies the polynomial coefficient of every term.
    Cochain coeff_scaled(const Poly &p) const
    {
        std::map<Word, Poly, WordLess> acc;
        for (const Term &t : terms_) {
            Poly c = t.second * p;
            if (c.is_zero())
                continue;
            auto it = acc.find(t.first);
            if (it == acc.end())
                acc.emplace(t.first, c);
            else
                it->second += c;
        }
        Cochain r(dim_, arity_);
        r.from_map(acc);
        return r;
    }

    // Evaluation on a full argument tuple.
    Poly apply(const std::vector<Poly> &args) const
    {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("Cochain::apply: arity mismatch");
        for (const Poly &a : args)
            if (a.dim() != dim_)
                throw std::invalid_argument("Cochain::apply: dimension mismatch");
        Poly out(dim_);
        for (const Term &t : terms_) {
            Poly prod = t.second;
            for (std::size_t j = 0; j < t.first.size() && !prod.is_zero(); ++j)
                prod = prod * args[j].derivative(t.first[j]);
            out += prod;
        }
        return out;
    }

    friend bool operator==(const Cochain &a, const Cochain &b)
    {
        if (a.dim_ != b.dim_)
            return false;
        if (a.is_zero() && b.is_zero())
            return true;
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Cochain &a, const Cochain &b) { return !(a == b); }

    friend int cmp(const Cochain &a, const Cochain &b)
    {
        if (a.dim_ != b.dim_)
            return a.dim_ < b.dim_ ? -1 : 1;
        if (a.arity_ != b.arity_)
            return a.arity_ < b.arity_ ? -1 : 1;
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = word_cmp(a.terms_[i].first, b.terms_[i].first);
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

    std::string str() const
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
            for (const MultiIndex &m : t.first) {
                os << "*d[";
                for (int i = 0; i < m.dim(); ++i)
                    os << (i ? "," : "") << m[i];
                os << "]";
            }
        }
        return os.str();
    }

    class Builder;

  private:
    void check_compatible(const Cochain &o) const
    {
        if (dim_ != o.dim_ || arity_ != o.arity_)
            throw std::invalid_argument("Cochain: dimension or arity mismatch");
    }

    void from_map(const std::map<Word, Poly, WordLess> &acc)
    {
        terms_.clear();
        for (const auto &kv : acc)
            if (!kv.second.is_zero())
                terms_.emplace_back(kv.first, kv.second);
    }

    int dim_;
    int arity_;
    std::vector<Term> terms_;

    friend class Builder;
};

// Accumulates many term contributions and produces a canonical cochain.
// Hashed accumulation, sorted once at the end.
class Cochain::Builder {
  public:
    Builder(int dim, int arity) : dim_(dim), arity_(arity) {}

    void add(const Word &w, const Poly &coeff)
    {
        if (coeff.is_zero())
            return;
        auto it = acc_.find(w);
        if (it == acc_.end())
            acc_.emplace(w, coeff);
        else
            it->second += coeff;
    }

    Cochain build() const
    {
        Cochain c(dim_, arity_);
        c.terms_.reserve(acc_.size());
        for (const auto &kv : acc_)
            if (!kv.second.is_zero())
                c.terms_.emplace_back(kv.first, kv.second);
        std::sort(c.terms_.begin(), c.terms_.end(),
                  [](const Term &a, const Term &b) { return word_cmp(a.first, b.first) < 0; });
        return c;
    }

  private:
    int dim_;
    int arity_;
    std::unordered_map<Word, Poly, WordHash> acc_;
};

namespace detail {
inline int pow_sign(long exponent)
{
    return (exponent % 2 + 2) % 2 == 0 ? 1 : -1;
}
} // namespace detail

// Substitutes Q into argument slot `slot` (0-based) of P, expanding the
// slot's derivative word over Q's coefficient and arguments by the
// multinomial Leibniz rule, and accumulates `scale` times the result into
// `out`. Result terms have arity k_P + k_Q - 1. No signs here; callers
// supply the Gerstenhaber signs through `scale`.
inline void insert_into(Cochain::Builder &out, const Cochain &P, int slot, const Cochain &Q,
                        const Rational &scale)
{
    if (P.dim() != Q.dim())
        throw std::invalid_argument("insert: dimension mismatch");
    if (slot < 0 || slot >= P.arity())
        throw std::invalid_argument("insert: slot out of range");
    int l = Q.arity();
    Word w(static_cast<std::size_t>(P.arity() + l - 1), MultiIndex(P.dim()));
    for (const auto &[pw, pc] : P.terms()) {
        const MultiIndex &alpha = pw[static_cast<std::size_t>(slot)];
        for (int j = 0; j < slot; ++j)
            w[static_cast<std::size_t>(j)] = pw[static_cast<std::size_t>(j)];
        for (int j = slot + 1; j < P.arity(); ++j)
            w[static_cast<std::size_t>(j + l - 1)] = pw[static_cast<std::size_t>(j)];
        for (const auto &[qw, qc] : Q.terms()) {
            // alpha = g0 + rest, d^{g0} hits Q's coefficient; only g0 up to
            // the exponents actually present in qc can contribute
            MultiIndex cap(P.dim());
            for (const auto &[qm, qv] : qc.terms())
                for (int ax = 0; ax < P.dim(); ++ax)
                    cap[ax] = std::max(cap[ax], std::min(qm[ax], alpha[ax]));
            for (const MultiIndex &g0 : mi_sub_indices(cap)) {
                Poly dqc = qc.derivative(g0);
                if (dqc.is_zero())
                    continue;
                Rational c0 = mi_binomial(alpha, g0) * scale;
                Poly base = (pc * dqc).scaled(c0);
                mi_splits(mi_sub(alpha, g0), l,
                          [&](const std::vector<MultiIndex> &parts, const Rational &mc) {
                              for (int j = 0; j < l; ++j)
                                  w[static_cast<std::size_t>(slot + j)] =
                                      qw[static_cast<std::size_t>(j)] +
                                      parts[static_cast<std::size_t>(j)];
                              out.add(w, base.scaled(mc));
                          });
            }
        }
    }
}

inline Cochain insert(const Cochain &P, int slot, const Cochain &Q)
{
    Cochain::Builder out(P.dim(), P.arity() + Q.arity() - 1);
    insert_into(out, P, slot, Q, Rational(1));
    return out.build();
}

// Hochschild coboundary: an arity-k cochain P goes to the arity-(k+1)
// cochain
//
//   (dP)(a_0,...,a_k) = a_0 P(a_1,...,a_k)
//                       + sum_{i=0}^{k-1} (-1)^{i+1} P(a_0,..,a_i a_{i+1},..,a_k)
//                       + (-1)^{k+1} P(a_0,...,a_{k-1}) a_k,
//
// with the interior products expanded symbolically by the Leibniz rule.
inline Cochain hoch_differential(const Cochain &P)
{
    int k = P.arity();
    int d = P.dim();
    Cochain::Builder out(d, k + 1);
    MultiIndex zero(d);
    for (const auto &[w, c] : P.terms()) {
        // a_0 * P(a_1,...,a_k)
        {
            Word nw;
            nw.reserve(static_cast<std::size_t>(k) + 1);
            nw.push_back(zero);
            nw.insert(nw.end(), w.begin(), w.end());
            out.add(nw, c);
        }
        // P(..., a_i a_{i+1}, ...): original slot i (0-based) eats two
        // arguments; Leibniz split of its word.
        for (int i = 0; i < k; ++i) {
            const MultiIndex &alpha = w[static_cast<std::size_t>(i)];
            Rational sign(detail::pow_sign(i + 1));
            for (const MultiIndex &beta : mi_sub_indices(alpha)) {
                Rational bc = mi_binomial(alpha, beta);
                Word nw;
                nw.reserve(static_cast<std::size_t>(k) + 1);
                for (int j = 0; j < i; ++j)
                    nw.push_back(w[static_cast<std::size_t>(j)]);
                nw.push_back(beta);
                nw.push_back(mi_sub(alpha, beta));
                for (int j = i + 1; j < k; ++j)
                    nw.push_back(w[static_cast<std::size_t>(j)]);
                out.add(nw, c.scaled(sign * bc));
            }
        }
        // (-1)^{k+1} P(a_0,...,a_{k-1}) * a_k
        {
            Word nw;
            nw.reserve(static_cast<std::size_t>(k) + 1);
            nw.insert(nw.end(), w.begin(), w.end());
            nw.push_back(zero);
            out.add(nw, c.scaled(Rational(detail::pow_sign(k + 1))));
        }
    }
    return out.build();
}

// Cup product: concatenation of derivative words, product of coefficients.
inline Cochain cup(const Cochain &a, const Cochain &b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("cup: dimension mismatch");
    Cochain::Builder out(a.dim(), a.arity() + b.arity());
    for (const auto &[wa, ca] : a.terms())
        for (const auto &[wb, cb] : b.terms()) {
            Poly c = ca * cb;
            if (c.is_zero())
                continue;
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add(w, c);
        }
    return out.build();
}

// Gerstenhaber bracket on C^{.+1}: with Lie degrees k_i = arity_i - 1,
//
//   [Q1,Q2] = sum_{i=0}^{k1} (-1)^{i k2} Q1 o_i Q2
//             - (-1)^{k1 k2} sum_{i=0}^{k2} (-1)^{i k1} Q2 o_i Q1.
inline Cochain gerstenhaber_bracket(const Cochain &q1, const Cochain &q2)
{
    if (q1.dim() != q2.dim())
        throw std::invalid_argument("gerstenhaber_bracket: dimension mismatch");
    if (q1.arity() == 0 && q2.arity() == 0)
        return Cochain::zero(q1.dim(), 0); // lands in degree -1, which is 0
    int k1 = q1.lie_degree();
    int k2 = q2.lie_degree();
    Cochain::Builder out(q1.dim(), q1.arity() + q2.arity() - 1);
    for (int i = 0; i <= k1; ++i)
        insert_into(out, q1, i, q2, Rational(detail::pow_sign(static_cast<long>(i) * k2)));
    int flip = detail::pow_sign(static_cast<long>(k1) * k2);
    for (int i = 0; i <= k2; ++i)
        insert_into(out, q2, i, q1,
                    Rational(-flip * detail::pow_sign(static_cast<long>(i) * k1)));
    return out.build();
}

// Differential of the DG Lie algebra of cochains: the adjoint action of the
// multiplication. Relates to hoch_differential by the arity-dependent sign
// d_G(P) = (-1)^{arity(P)-1} hoch_differential(P); both square to zero.
inline Cochain dgla_differential(const Cochain &P)
{
    return gerstenhaber_bracket(Cochain::mu(P.dim()), P);
}

} // namespace hochlab
