#pragma once

// Solve-or-certify for coboundary equations on truncations.
//
// Given a cocycle Y of arity k+1, look for a cochain X of arity k with
// hoch_differential(X) = Y, where X ranges over the finite-dimensional
// space cut out by a truncation profile (max polynomial degree of the
// coefficients, max derivative order per slot). The answer is either such
// an X or an exact linear functional on the equations proving that no X
// exists within the bounds. The chain-side analogue solves
// chain_boundary(z) = value over tuples of bounded-degree monomials.

#include "hochlab/chain.hpp"
#include "hochlab/cochain.hpp"
#include "hochlab/linear.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hochlab {

struct SolveBounds {
    int coeff_degree = 4;
    int slot_order = 4;

    // Bounds large enough to contain Y's own profile.
    static SolveBounds from(const Cochain &y)
    {
        SolveBounds b;
        b.coeff_degree = std::max(1, y.max_coeff_degree());
        b.slot_order = std::max(1, y.max_slot_order());
        return b;
    }
};

// Basis of the cochain space: (coefficient monomial) x (word with per-slot
// order bounds), enumerated deterministically.
class CochainSpace {
  public:
    CochainSpace(int dim, int arity, const SolveBounds &bounds)
        : dim_(dim), arity_(arity)
    {
        std::vector<MultiIndex> monos = mi_enumerate(dim, 0, bounds.coeff_degree);
        std::vector<MultiIndex> orders = mi_enumerate(dim, 0, bounds.slot_order);
        std::vector<Word> words;
        Word w;
        build_words(orders, w, words);
        basis_.reserve(monos.size() * words.size());
        for (const Word &word : words)
            for (const MultiIndex &m : monos)
                basis_.emplace_back(m, word);
    }

    int size() const { return static_cast<int>(basis_.size()); }

    Cochain element(int i) const
    {
        const auto &[mono, word] = basis_.at(static_cast<std::size_t>(i));
        return Cochain::term(Poly::monomial(mono, Rational(1)), word);
    }

    Cochain assemble(const std::map<int, Rational> &coords) const
    {
        Cochain x(dim_, arity_);
        for (const auto &[i, c] : coords)
            x += element(i).scaled(c);
        return x;
    }

  private:
    void build_words(const std::vector<MultiIndex> &orders, Word &w, std::vector<Word> &out) const
    {
        if (static_cast<int>(w.size()) == arity_) {
            out.push_back(w);
            return;
        }
        for (const MultiIndex &m : orders) {
            w.push_back(m);
            build_words(orders, w, out);
            w.pop_back();
        }
    }

    int dim_;
    int arity_;
    std::vector<std::pair<MultiIndex, Word>> basis_;
};

// A linear functional on the target coordinates proving infeasibility:
// applying it to d(any X in the space) gives 0 but to Y gives 1.
struct CochainCertificate {
    std::vector<std::pair<std::pair<Word, MultiIndex>, Rational>> entries;

    Rational pair(const Cochain &c) const
    {
        Rational out;
        for (const auto &[key, lam] : entries)
            for (const auto &[w, poly] : c.terms())
                if (word_cmp(w, key.first) == 0)
                    out += lam * poly.coeff(key.second);
        return out;
    }
};

struct CoboundaryResult {
    std::optional<Cochain> solution;
    std::optional<CochainCertificate> certificate;
    bool solvable() const { return solution.has_value(); }
};

// Y must be a hoch_differential-cocycle (checked; throws otherwise).
inline CoboundaryResult
coboundary_solve(const Cochain &y, const SolveBounds &bounds)
{
    if (y.arity() < 1)
        throw std::invalid_argument("coboundary_solve: target must have arity >= 1");
    if (!hoch_differential(y).is_zero())
        throw std::invalid_argument("coboundary_solve: target is not a cocycle");

    CochainSpace space(y.dim(), y.arity() - 1, bounds);

    // Equations are indexed by target-space coordinates (word, monomial).
    using TargetKey = std::pair<Word, MultiIndex>;
    struct KeyLess {
        bool operator()(const TargetKey &a, const TargetKey &b) const
        {
            int c = word_cmp(a.first, b.first);
            if (c != 0)
                return c < 0;
            return grlex_cmp(a.second, b.second) < 0;
        }
    };
    std::map<TargetKey, SparseRow, KeyLess> rows;

    auto scatter = [&](const Cochain &image, int col, const Rational &scale) {
        for (const auto &[w, poly] : image.terms())
            for (const auto &[mono, c] : poly.terms()) {
                if (col < 0)
                    rows[{w, mono}].rhs += scale * c;
                else
                    rows[{w, mono}].add(col, scale * c);
            }
    };

    for (int i = 0; i < space.size(); ++i)
        scatter(hoch_differential(space.element(i)), i, Rational(1));
    scatter(y, -1, Rational(1));

    EchelonSolver solver;
    std::vector<TargetKey> row_keys;
    row_keys.reserve(rows.size());
    for (const auto &[key, row] : rows) {
        row_keys.push_back(key);
        if (!solver.add_row(row))
            break;
    }

    CoboundaryResult result;
    if (solver.infeasible()) {
        CochainCertificate cert;
        for (const auto &[rid, lam] : solver.certificate())
            cert.entries.emplace_back(row_keys.at(static_cast<std::size_t>(rid)), lam);
        // re-verify: the functional kills the image and pairs to 1 with Y
        for (int i = 0; i < space.size(); ++i)
            if (!cert.pair(hoch_differential(space.element(i))).is_zero())
                throw std::logic_error("coboundary_solve: certificate fails re-verification");
        if (cert.pair(y) != Rational(1))
            throw std::logic_error("coboundary_solve: certificate fails re-verification");
        result.certificate = std::move(cert);
        return result;
    }

    Cochain x = space.assemble(solver.solution());
    if (!(hoch_differential(x) == y))
        throw std::logic_error("coboundary_solve: solution fails re-verification");
    result.solution = std::move(x);
    return result;
}

// Chain-side: basis of tuples of monomials with bounded entry degree.
class ChainSpace {
  public:
    ChainSpace(int dim, int arity, int entry_degree) : dim_(dim)
    {
        std::vector<MultiIndex> monos = mi_enumerate(dim, 0, entry_degree);
        ChainTuple t;
        build(monos, arity + 1, t);
    }

    int size() const { return static_cast<int>(basis_.size()); }
    const ChainTuple &tuple(int i) const { return basis_.at(static_cast<std::size_t>(i)); }

    Chain assemble(const std::map<int, Rational> &coords) const
    {
        Chain z(dim_);
        for (const auto &[i, c] : coords)
            z += Chain::of_monomials(tuple(i), c);
        return z;
    }

  private:
    void build(const std::vector<MultiIndex> &monos, int len, ChainTuple &t)
    {
        if (static_cast<int>(t.size()) == len) {
            basis_.push_back(t);
            return;
        }
        for (const MultiIndex &m : monos) {
            t.push_back(m);
            build(monos, len, t);
            t.pop_back();
        }
    }

    int dim_;
    std::vector<ChainTuple> basis_;
};

struct ChainSolveResult {
    std::optional<Chain> solution;
    bool solvable() const { return solution.has_value(); }
};

// Find z with chain_boundary(z) = value, z ranging over tuples of length
// arity(value)+2 with monomial entries of degree <= entry_degree.
inline ChainSolveResult chain_boundary_solve(const Chain &value, int entry_degree)
{
    if (value.is_zero())
        return {Chain::zero(value.dim())};
    ChainSpace space(value.dim(), value.arity() + 1, entry_degree);

    std::map<ChainTuple, SparseRow, ChainTupleLess> rows;
    auto scatter = [&](const Chain &image, int col, const Rational &scale) {
        for (const auto &[tup, wt] : image.terms()) {
            if (col < 0)
                rows[tup].rhs += scale * wt;
            else
                rows[tup].add(col, scale * wt);
        }
    };
    for (int i = 0; i < space.size(); ++i)
        scatter(chain_boundary(Chain::of_monomials(space.tuple(i))), i, Rational(1));
    scatter(value, -1, Rational(1));

    EchelonSolver solver;
    for (const auto &[key, row] : rows)
        if (!solver.add_row(row))
            return {};
    Chain z = space.assemble(solver.solution());
    if (!(chain_boundary(z) == value))
        throw std::logic_error("chain_boundary_solve: solution fails re-verification");
    return {std::move(z)};
}

} // namespace hochlab
