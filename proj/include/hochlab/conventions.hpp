#pragma once

// The sign-convention ledger. Every choice listed here is exercised by the
// identity suites; the CLI embeds a fingerprint of this text in reports so
// a report is only comparable against the conventions it was produced
// under. CONVENTIONS.md mirrors this text.

#include <cstdint>
#include <string_view>

namespace hochlab {

inline constexpr std::string_view conventions_text = R"(hochlab sign conventions
========================

1. Monomial order: graded lexicographic with x1 > x2 > ...; all canonical
   forms and reports use it.

2. Hochschild coboundary (arity k -> k+1):
     (dP)(a0,...,ak) = a0 P(a1,...,ak)
                       + sum_{i=0}^{k-1} (-1)^{i+1} P(a0,..,a_i a_{i+1},..,ak)
                       + (-1)^{k+1} P(a0,...,a_{k-1}) ak.
   Relation to the bracket with the multiplication mu:
     dP = (-1)^{arity(P)-1} [mu, P]_G.
   The DG Lie algebra used for Maurer-Cartan theory carries the adjoint
   differential [mu, .]_G, under which the MC defect of a star product
   equals its associativity defect exactly, order by order.

3. Gerstenhaber bracket, with Lie degrees k_i = arity_i - 1:
     [Q1,Q2] = sum_{i=0}^{k1} (-1)^{i k2} Q1 o_i Q2
               - (-1)^{k1 k2} sum_{i=0}^{k2} (-1)^{i k1} Q2 o_i Q1.

4. Chain boundary, contraction I, Lie derivative L, Connes B: as the
   standard formulas with the wrap-around term of the boundary carrying
   (-1)^m and L's cyclic terms carrying (-1)^{m(j+1)}. The module identity
   holds with Lie-degree Koszul signs:
     L_{Q1} L_{Q2} - (-1)^{k1 k2} L_{Q2} L_{Q1} = L_{[Q1,Q2]}.

5. B compatibility: B L_P = (-1)^{arity(P)+1} L_P B holds exactly for
   unit-normalized cochains (every slot word of positive order); it fails
   for cochains with order-0 slots, so the cyclic suites draw normalized
   cochains. Likewise the Cartan homotopy statement
     B I_P - (-1)^{arity(P)} I_P B - L_P = boundary
   is verified for normalized cocycles.

6. Polyvector calculus: contraction is fixed by
     i_{d_j}(dx^{i1} ^ ... ^ dx^{ip}) = sum_r (-1)^{r-1} delta^{i_r}_j (slot r removed),
     i_{a ^ b} = i_a o i_b,
   which makes i_{dx ^ dy}(dx ^ dy) = -1. The Schouten bracket on
   decomposables is
     [f xi_I, g xi_J] = sum_r (-1)^{p-r} f (d_{i_r} g) xi_{I\r} ^ xi_J
       - (-1)^{(p-1)(q-1)} sum_s (-1)^{q-s} g (d_{j_s} f) xi_{J\s} ^ xi_I,
   and all Koszul signs use Lie degrees (polyvector degree - 1). The Lie
   derivative is the Cartan formula l_g = d i_g - (-1)^{|g|} i_g d with |g|
   the polyvector degree.

7. HKR normalization: a degree-k polyvector maps to 1/k! times the signed
   sum over all permutations of its first-order derivative word; vector
   fields map to themselves.

8. Moyal-Weyl coefficients: Pi_k = (1/k!)(1/2^k) theta^{i1 j1} ...
   theta^{ik jk} d_{i1..ik} tensor d_{j1..jk}.

9. Gauge action: exp(xi) alpha = exp([., xi]) alpha + f([., xi]) d xi with
   f(x) = (e^x - 1)/x and ad(x) = [x, xi] applied on the left. Acting by xi
   and then by eta equals acting by BCH(xi, eta). The action of xi on a
   star product is the push-forward along the intertwiner T = exp(-xi).

10. Chevalley-Eilenberg coderivation: Q(v) = -dv,
    Q(v1,v2) = (-1)^{|v1|+1} [v1,v2] with |.| the Lie degree; Koszul signs
    over desuspended degrees |.|+1; words are multilinear in their slots.

11. A/K is realized by zero-constant-term representatives; "lies in K"
    constraints drop the constant-coefficient row. The third-order cocycle
    V is antisymmetric and equals the hbar^3 coefficient of the Moyal
    commutator; for the canonical 2D bracket the normalized coboundary
    constraints from the pairs (x^4, y^3) and (x^3 y, x y^2) pin the
    x-coefficient of P(x^3 y^2) to 1/2 and -3/10 respectively, which is
    the contradiction.
)";

// FNV-1a over the ledger text; stable across platforms.
inline std::uint64_t conventions_fingerprint()
{
    std::uint64_t h = 1469598103934665603ull;
    for (char c : conventions_text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace hochlab
