#pragma once

// Exact linear algebra over Q: an incremental reduced-row-echelon solver
// for sparse systems that either produces a solution (free variables set
// to zero) or an infeasibility witness, i.e. an explicit rational
// combination of input rows adding up to 0 = 1. Row combinations are
// tracked all the way through, so every certificate can be re-verified
// against the original rows by plain substitution.
//
// Pivoting is by smallest column index and rows are processed in insertion
// order, so results are deterministic.

#include "hochlab/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hochlab {

struct SparseRow {
    std::map<int, Rational> a;
    Rational rhs;

    void add(int col, const Rational &v)
    {
        if (v.is_zero())
            return;
        auto it = a.find(col);
        if (it == a.end())
            a.emplace(col, v);
        else {
            it->second += v;
            if (it->second.is_zero())
                a.erase(it);
        }
    }

    bool empty() const { return a.empty(); }
};

// Combination of original rows, by insertion id.
using RowCombination = std::map<int, Rational>;

class EchelonSolver {
  public:
    // Feeds one equation; returns false exactly when this row made the
    // system infeasible (the certificate is then available).
    bool add_row(const SparseRow &row)
    {
        if (infeasible_)
            return false;
        int id = next_id_++;
        SparseRow r = row;
        RowCombination comb{{id, Rational(1)}};
        reduce(r, comb);
        if (r.empty()) {
            if (r.rhs.is_zero())
                return true; // redundant
            // 0 = nonzero: scale the combination to read 0 = 1
            Rational inv = Rational(1) / r.rhs;
            for (auto &kv : comb)
                kv.second *= inv;
            certificate_ = comb;
            infeasible_ = true;
            return false;
        }
        // new pivot at the smallest remaining column
        int col = r.a.begin()->first;
        Rational lead = r.a.begin()->second;
        Rational inv = Rational(1) / lead;
        for (auto &kv : r.a)
            kv.second *= inv;
        r.rhs *= inv;
        for (auto &kv : comb)
            kv.second *= inv;
        // keep reduced form: eliminate the new pivot column from old rows
        for (auto &p : pivots_) {
            auto it = p.second.row.a.find(col);
            if (it == p.second.row.a.end())
                continue;
            Rational c = it->second;
            subtract_scaled(p.second.row, c, r);
            subtract_scaled_comb(p.second.comb, c, comb);
        }
        pivots_.emplace(col, Pivot{std::move(r), std::move(comb)});
        return true;
    }

    bool infeasible() const { return infeasible_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    int rows_seen() const { return next_id_; }

    // Valid only when infeasible(): sum_i cert[i] * row_i == (0 = 1).
    const RowCombination &certificate() const
    {
        if (!infeasible_)
            throw std::logic_error("EchelonSolver: no certificate, system is feasible");
        return certificate_;
    }

    // Solution with all free variables zero. Valid only when feasible.
    std::map<int, Rational> solution() const
    {
        if (infeasible_)
            throw std::logic_error("EchelonSolver: infeasible system has no solution");
        std::map<int, Rational> x;
        for (const auto &p : pivots_)
            if (!p.second.row.rhs.is_zero())
                x.emplace(p.first, p.second.row.rhs);
        return x;
    }

    // Affine row-space membership: the row reduces to 0 = 0.
    bool implies(const SparseRow &row) const
    {
        SparseRow r = row;
        RowCombination comb;
        reduce(r, comb);
        return r.empty() && r.rhs.is_zero();
    }

  private:
    struct Pivot {
        SparseRow row;
        RowCombination comb;
    };

    static void subtract_scaled(SparseRow &r, const Rational &c, const SparseRow &p)
    {
        for (const auto &kv : p.a)
            r.add(kv.first, -(c * kv.second));
        r.rhs -= c * p.rhs;
    }

    static void subtract_scaled_comb(RowCombination &r, const Rational &c,
                                     const RowCombination &p)
    {
        for (const auto &kv : p) {
            Rational v = c * kv.second;
            auto it = r.find(kv.first);
            if (it == r.end())
                r.emplace(kv.first, -v);
            else {
                it->second -= v;
                if (it->second.is_zero())
                    r.erase(it);
            }
        }
    }

    void reduce(SparseRow &r, RowCombination &comb) const
    {
        // pivot columns can only decrease entries, so one pass in column
        // order suffices over the RREF basis
        for (auto it = r.a.begin(); it != r.a.end();) {
            auto pit = pivots_.find(it->first);
            if (pit == pivots_.end()) {
                ++it;
                continue;
            }
            Rational c = it->second;
            subtract_scaled(r, c, pit->second.row);
            subtract_scaled_comb(comb, c, pit->second.comb);
            it = r.a.upper_bound(pit->first);
        }
    }

    std::map<int, Pivot> pivots_;
    RowCombination certificate_;
    bool infeasible_ = false;
    int next_id_ = 0;
};

} // namespace hochlab
