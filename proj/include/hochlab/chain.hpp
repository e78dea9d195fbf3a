#pragma once

// Hochschild chains of the polynomial algebra: elements of A^{(m+1) tensor}
// stored in the monomial basis, i.e. finite sums of tuples of monomials
// (x^{a_0}, ..., x^{a_m}) with rational weights. Polynomial entries are
// expanded multilinearly on construction, so equality of chains is equality
// of canonical forms. A chain of arity m sits in complex degree -m
// (reversed grading). Tuples of different lengths may coexist in one value,
// which is what the cyclic complex needs.
//
// Operations: the boundary, the contraction I_P by a cochain, the Lie
// derivative L_Q along a cochain, Connes' operator B, and the negative
// cyclic differential d + uB on u-truncated chain families.

#include "hochlab/cochain.hpp"
#include "hochlab/multipoly.hpp"
#include "hochlab/rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hochlab {

using ChainTuple = std::vector<MultiIndex>; // monomial exponents, length m+1

inline int tuple_cmp(const ChainTuple &a, const ChainTuple &b)
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

struct ChainTupleLess {
    bool operator()(const ChainTuple &a, const ChainTuple &b) const
    {
        return tuple_cmp(a, b) < 0;
    }
};

class Chain {
  public:
    using Term = std::pair<ChainTuple, Rational>;

    explicit Chain(int dim) : dim_(dim)
    {
        if (dim <= 0)
            throw std::invalid_argument("Chain: dimension must be positive");
    }

    static Chain zero(int dim) { return Chain(dim); }

    // Multilinear expansion of a tuple of polynomials.
    static Chain of(const std::vector<Poly> &tuple, const Rational &weight = Rational(1));

    static Chain of_monomials(const ChainTuple &tuple, const Rational &weight = Rational(1));

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    Chain zero_like() const { return Chain(dim_); }
    const std::vector<Term> &terms() const { return terms_; }

    // Arity m of a homogeneous chain (tuples of length m+1); -1 when zero.
    int arity() const
    {
        if (terms_.empty())
            return -1;
        std::size_t len = terms_[0].first.size();
        for (const Term &t : terms_)
            if (t.first.size() != len)
                throw std::logic_error("Chain::arity: mixed arities");
        return static_cast<int>(len) - 1;
    }

    Chain &operator+=(const Chain &o)
    {
        check_dim(o);
        std::map<ChainTuple, Rational, ChainTupleLess> acc;
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

    friend Chain operator+(Chain a, const Chain &b) { return a += b; }
    Chain operator-() const { return scaled(Rational(-1)); }
    friend Chain operator-(Chain a, const Chain &b) { return a += -b; }

    Chain scaled(const Rational &c) const
    {
        Chain r(dim_);
        if (c.is_zero())
            return r;
        for (const Term &t : terms_)
            r.terms_.emplace_back(t.first, t.second * c);
        return r;
    }

    friend bool operator==(const Chain &a, const Chain &b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Chain &a, const Chain &b) { return !(a == b); }

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
            os << t.second.str() << "*(";
            for (std::size_t i = 0; i < t.first.size(); ++i)
                os << (i ? ", " : "")
                   << Poly::monomial(t.first[i], Rational(1)).str();
            os << ")";
        }
        return os.str();
    }

    class Builder;

  private:
    static void expand(const std::vector<Poly> &tuple, std::size_t pos, ChainTuple &mono,
                       const Rational &weight, Builder &b);

    void check_dim(const Chain &o) const
    {
        if (dim_ != o.dim_)
            throw std::invalid_argument("Chain: dimension mismatch");
    }

    int dim_;
    std::vector<Term> terms_;

    friend class Builder;
};

class Chain::Builder {
  public:
    explicit Builder(int dim) : dim_(dim) {}

    void add(const ChainTuple &tuple, const Rational &weight)
    {
        if (weight.is_zero())
            return;
        auto it = acc_.find(tuple);
        if (it == acc_.end())
            acc_.emplace(tuple, weight);
        else
            it->second += weight;
    }

    // Adds p split into monomials at position `pos` of `tuple`.
    void add_expanded(ChainTuple tuple, std::size_t pos, const Poly &p, const Rational &weight)
    {
        for (const auto &[mi, c] : p.terms()) {
            tuple[pos] = mi;
            add(tuple, weight * c);
        }
    }

    Chain build() const
    {
        Chain c(dim_);
        for (const auto &kv : acc_)
            if (!kv.second.is_zero())
                c.terms_.emplace_back(kv.first, kv.second);
        return c;
    }

  private:
    int dim_;
    std::map<ChainTuple, Rational, ChainTupleLess> acc_;
};

inline void Chain::expand(const std::vector<Poly> &tuple, std::size_t pos, ChainTuple &mono,
                          const Rational &weight, Builder &b)
{
    if (pos == tuple.size()) {
        b.add(mono, weight);
        return;
    }
    for (const auto &[mi, c] : tuple[pos].terms()) {
        mono[pos] = mi;
        expand(tuple, pos + 1, mono, weight * c, b);
    }
}

inline Chain Chain::of(const std::vector<Poly> &tuple, const Rational &weight)
{
    if (tuple.empty())
        throw std::invalid_argument("Chain: tuple must have length >= 1");
    int dim = tuple[0].dim();
    for (const Poly &p : tuple)
        if (p.dim() != dim)
            throw std::invalid_argument("Chain: mixed dimensions in tuple");
    Builder b(dim);
    ChainTuple mono(tuple.size(), MultiIndex(dim));
    expand(tuple, 0, mono, weight, b);
    return b.build();
}

inline Chain Chain::of_monomials(const ChainTuple &tuple, const Rational &weight)
{
    if (tuple.empty())
        throw std::invalid_argument("Chain: tuple must have length >= 1");
    Builder b(tuple[0].dim());
    b.add(tuple, weight);
    return b.build();
}

// Hochschild boundary,
//
//   d(a_0, a_1, ..., a_m) = (a_0 a_1, a_2, ..., a_m)
//                           + sum_{i=1}^{m-1} (-1)^i (a_0, .., a_i a_{i+1}, .., a_m)
//                           + (-1)^m (a_m a_0, a_1, ..., a_{m-1}).
//
// Arity-0 tuples are sent to zero (bottom of the complex).
inline Chain chain_boundary(const Chain &c)
{
    Chain::Builder out(c.dim());
    for (const auto &[tup, wt] : c.terms()) {
        int m = static_cast<int>(tup.size()) - 1;
        if (m == 0)
            continue;
        for (int i = 0; i < m; ++i) {
            ChainTuple nt;
            nt.reserve(tup.size() - 1);
            for (int j = 0; j < i; ++j)
                nt.push_back(tup[static_cast<std::size_t>(j)]);
            nt.push_back(tup[static_cast<std::size_t>(i)] + tup[static_cast<std::size_t>(i) + 1]);
            for (int j = i + 2; j <= m; ++j)
                nt.push_back(tup[static_cast<std::size_t>(j)]);
            out.add(nt, wt * Rational(detail::pow_sign(i)));
        }
        {
            ChainTuple nt;
            nt.reserve(tup.size() - 1);
            nt.push_back(tup[static_cast<std::size_t>(m)] + tup[0]);
            for (int j = 1; j < m; ++j)
                nt.push_back(tup[static_cast<std::size_t>(j)]);
            out.add(nt, wt * Rational(detail::pow_sign(m)));
        }
    }
    return out.build();
}

// Contraction of a cochain P with a chain:
//   I_P(a_0, ..., a_m) = (a_0 P(a_1,...,a_k), a_{k+1}, ..., a_m) for m >= k,
// and zero otherwise.
inline Chain contraction(const Cochain &P, const Chain &c)
{
    if (P.dim() != c.dim())
        throw std::invalid_argument("contraction: dimension mismatch");
    int k = P.arity();
    Chain::Builder out(c.dim());
    for (const auto &[tup, wt] : c.terms()) {
        int m = static_cast<int>(tup.size()) - 1;
        if (m < k)
            continue;
        std::vector<Poly> args;
        args.reserve(static_cast<std::size_t>(k));
        for (int j = 1; j <= k; ++j)
            args.push_back(Poly::monomial(tup[static_cast<std::size_t>(j)], Rational(1)));
        Poly head = Poly::monomial(tup[0], Rational(1)) * P.apply(args);
        ChainTuple nt;
        nt.reserve(static_cast<std::size_t>(m - k) + 1);
        nt.push_back(MultiIndex(c.dim()));
        for (int j = k + 1; j <= m; ++j)
            nt.push_back(tup[static_cast<std::size_t>(j)]);
        out.add_expanded(nt, 0, head, wt);
    }
    return out.build();
}

// Lie derivative of a chain along a cochain Q of arity k+1:
//
//   L_Q(a_0,...,a_m) = sum_{i=0}^{m-k} (-1)^{ki} (a_0,..,Q(a_i,..,a_{i+k}),..,a_m)
//     + sum_{j=m-k}^{m-1} (-1)^{m(j+1)} (Q(a_{j+1},..,a_m,a_0,..,a_{k+j-m}), a_{k+j+1-m},..,a_j),
//
// the second sum ranging over the j >= 0 for which the wrapped argument
// block is well formed (it is empty when m < k).
inline Chain lie_derivative(const Cochain &Q, const Chain &c)
{
    if (Q.dim() != c.dim())
        throw std::invalid_argument("lie_derivative: dimension mismatch");
    int k = Q.arity() - 1;
    if (k < 0)
        throw std::invalid_argument("lie_derivative: cochain must have arity >= 1");
    Chain::Builder out(c.dim());
    auto mono = [&](const MultiIndex &m) { return Poly::monomial(m, Rational(1)); };
    for (const auto &[tup, wt] : c.terms()) {
        int m = static_cast<int>(tup.size()) - 1;
        for (int i = 0; i + k <= m; ++i) {
            std::vector<Poly> args;
            args.reserve(static_cast<std::size_t>(k) + 1);
            for (int r = i; r <= i + k; ++r)
                args.push_back(mono(tup[static_cast<std::size_t>(r)]));
            ChainTuple nt;
            nt.reserve(static_cast<std::size_t>(m - k) + 1);
            for (int j = 0; j < i; ++j)
                nt.push_back(tup[static_cast<std::size_t>(j)]);
            nt.push_back(MultiIndex(c.dim()));
            std::size_t pos = nt.size() - 1;
            for (int j = i + k + 1; j <= m; ++j)
                nt.push_back(tup[static_cast<std::size_t>(j)]);
            out.add_expanded(nt, pos, Q.apply(args),
                             wt * Rational(detail::pow_sign(static_cast<long>(k) * i)));
        }
        if (m < k)
            continue; // no room for a wrapped argument block either
        for (int j = m - k; j <= m - 1; ++j) {
            if (j < 0)
                continue;
            int head_end = k + j - m; // last wrapped index, -1 means none
            std::vector<Poly> args;
            args.reserve(static_cast<std::size_t>(k) + 1);
            for (int r = j + 1; r <= m; ++r)
                args.push_back(mono(tup[static_cast<std::size_t>(r)]));
            for (int r = 0; r <= head_end; ++r)
                args.push_back(mono(tup[static_cast<std::size_t>(r)]));
            ChainTuple nt;
            nt.reserve(static_cast<std::size_t>(m - k) + 1);
            nt.push_back(MultiIndex(c.dim()));
            for (int r = head_end + 1; r <= j; ++r)
                nt.push_back(tup[static_cast<std::size_t>(r)]);
            out.add_expanded(nt, 0, Q.apply(args),
                             wt * Rational(detail::pow_sign(static_cast<long>(m) * (j + 1))));
        }
    }
    return out.build();
}

// Connes' operator:
//
//   B(a_0,...,a_m) = sum_{i=0}^m (-1)^{mi} [ (1, a_i, .., a_m, a_0, .., a_{i-1})
//                                           + (a_i, 1, a_{i+1}, .., a_m, a_0, .., a_{i-1}) ].
inline Chain connes_b(const Chain &c)
{
    Chain::Builder out(c.dim());
    MultiIndex unit(c.dim());
    for (const auto &[tup, wt] : c.terms()) {
        int m = static_cast<int>(tup.size()) - 1;
        for (int i = 0; i <= m; ++i) {
            Rational sign(detail::pow_sign(static_cast<long>(m) * i));
            ChainTuple rot;
            rot.reserve(tup.size());
            for (int r = i; r <= m; ++r)
                rot.push_back(tup[static_cast<std::size_t>(r)]);
            for (int r = 0; r < i; ++r)
                rot.push_back(tup[static_cast<std::size_t>(r)]);
            ChainTuple first;
            first.reserve(tup.size() + 1);
            first.push_back(unit);
            first.insert(first.end(), rot.begin(), rot.end());
            out.add(first, wt * sign);
            ChainTuple second;
            second.reserve(tup.size() + 1);
            second.push_back(rot[0]);
            second.push_back(unit);
            second.insert(second.end(), rot.begin() + 1, rot.end());
            out.add(second, wt * sign);
        }
    }
    return out.build();
}

// Chains over K[u]/u^{N+1} with u of degree 2: the truncation of the
// negative cyclic complex. Coefficients may mix arities.
class CyclicChain {
  public:
    CyclicChain(int dim, int u_order)
        : dim_(dim), coeffs_(static_cast<std::size_t>(u_order) + 1, Chain(dim))
    {
        if (u_order < 0)
            throw std::invalid_argument("CyclicChain: negative u-order");
    }

    static CyclicChain of(const Chain &c, int u_order)
    {
        CyclicChain r(c.dim(), u_order);
        r.coeffs_[0] = c;
        return r;
    }

    int dim() const { return dim_; }
    int u_order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Chain &coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    Chain &coeff(int j) { return coeffs_.at(static_cast<std::size_t>(j)); }

    bool is_zero() const
    {
        for (const Chain &c : coeffs_)
            if (!c.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const CyclicChain &a, const CyclicChain &b)
    {
        return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
    }

  private:
    int dim_;
    std::vector<Chain> coeffs_;
};

// The differential d + uB of the negative cyclic complex, truncated at the
// chain's u-order.
inline CyclicChain cyclic_differential(const CyclicChain &c)
{
    CyclicChain out(c.dim(), c.u_order());
    for (int j = 0; j <= c.u_order(); ++j) {
        Chain v = chain_boundary(c.coeff(j));
        if (j > 0)
            v += connes_b(c.coeff(j - 1));
        out.coeff(j) = v;
    }
    return out;
}

} // namespace hochlab
