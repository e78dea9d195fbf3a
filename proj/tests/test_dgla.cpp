#include "hochlab/dgla.hpp"
#include "hochlab/rng.hpp"

#include <doctest.h>

using namespace hochlab;

namespace {
const int d = 2;
Poly X() { return Poly::variable(d, 0); }
Poly Y() { return Poly::variable(d, 1); }

Series<PolyVector> bivector_series(Rng &rng, int order, int coeff_degree)
{
    Series<PolyVector> s = Series<PolyVector>::zero(order, PolyVector(d, 2));
    for (int k = 1; k <= order; ++k)
        s.coeff(k) = rng.polyvector(d, 2, coeff_degree, 2);
    return s;
}

Series<PolyVector> vector_series(Rng &rng, int order, int coeff_degree)
{
    Series<PolyVector> s = Series<PolyVector>::zero(order, PolyVector(d, 1));
    for (int k = 1; k <= order; ++k)
        s.coeff(k) = rng.polyvector(d, 1, coeff_degree, 2);
    return s;
}
} // namespace

TEST_CASE("mc defect basic values")
{
    DglaOps<Cochain> ops = hochschild_dgla(d);
    const int n = 3;

    Series<Cochain> zero = Series<Cochain>::zero(n, Cochain(d, 2));
    CHECK(mc_defect(ops, zero).is_zero());

    // alpha = hbar * (dx tensor dy): the defect is 1/2 hbar^2 [P1, P1]
    Cochain p1 = cup(Cochain::partial_op(d, 0), Cochain::partial_op(d, 1));
    Series<Cochain> alpha = zero;
    alpha.coeff(1) = p1;
    Series<Cochain> defect = mc_defect(ops, alpha);
    CHECK(defect.coeff(0).is_zero());
    CHECK(defect.coeff(1).is_zero());
    CHECK(defect.coeff(2) == gerstenhaber_bracket(p1, p1).scaled(Rational(1, 2)));
    CHECK(!defect.coeff(2).is_zero());

    // wrong grading is rejected
    Series<Cochain> bad = Series<Cochain>::zero(n, Cochain(d, 1));
    bad.coeff(1) = Cochain::partial_op(d, 0);
    CHECK_THROWS_AS(mc_defect(ops, bad), std::invalid_argument);
}

TEST_CASE("polyvector mc elements and twisting")
{
    DglaOps<PolyVector> ops = polyvector_dgla(d);
    const int n = 3;

    // any bivector series in d=2 is a formal Poisson structure
    Rng rng(1234);
    Series<PolyVector> pi = bivector_series(rng, n, 2);
    CHECK(mc_defect(ops, pi).is_zero());

    auto lich = twisted_differential(ops, pi);

    // the twisted differential is [pi, .]
    Series<PolyVector> v = vector_series(rng, n, 2);
    CHECK(lich(v) == series_bracket(ops, pi, v));

    // and it squares to zero
    for (int it = 0; it < 10; ++it) {
        Series<PolyVector> w = vector_series(rng, n, 2);
        CHECK(lich(lich(w)).is_zero());
        Series<PolyVector> b = bivector_series(rng, n, 2);
        CHECK(lich(lich(b)).is_zero());
    }

    // twisting by zero reproduces the bare differential (identically zero
    // for polyvectors)
    Series<PolyVector> zero = Series<PolyVector>::zero(n, PolyVector(d, 2));
    auto bare = twisted_differential(ops, zero);
    CHECK(bare(v) == series_differential(ops, v));
    CHECK(bare(v).is_zero());
}

TEST_CASE("gauge action degenerate cases")
{
    DglaOps<Cochain> ops = hochschild_dgla(d);
    const int n = 2;
    Series<Cochain> zero_xi = Series<Cochain>::zero(n, Cochain(d, 1));
    Series<Cochain> alpha = Series<Cochain>::zero(n, Cochain(d, 2));
    alpha.coeff(1) = cup(Cochain::partial_op(d, 0), Cochain::partial_op(d, 1));

    // xi = 0 acts trivially
    CHECK(gauge_action(ops, zero_xi, alpha) == alpha);

    // alpha = 0: the orbit of zero is f([., xi]) d xi, here truncated at
    // order 2: d xi + 1/2 [d xi, xi]
    Series<Cochain> xi = zero_xi;
    xi.coeff(1) = Cochain::term(X() * X(), {MultiIndex{2, 0}}); // second order, d xi != 0
    Series<Cochain> zero_alpha = Series<Cochain>::zero(n, Cochain(d, 2));
    Series<Cochain> out = gauge_action(ops, xi, zero_alpha);
    Series<Cochain> dxi = series_differential(ops, xi);
    REQUIRE(!dxi.is_zero());
    Series<Cochain> expect = dxi + series_bracket(ops, dxi, xi).scaled(Rational(1, 2));
    CHECK(out == expect);
}

TEST_CASE("gauge action preserves the maurer-cartan property")
{
    DglaOps<PolyVector> ops = polyvector_dgla(d);
    Rng rng(777);
    const int n = 3;
    for (int it = 0; it < 15; ++it) {
        Series<PolyVector> pi = bivector_series(rng, n, 2);
        REQUIRE(mc_defect(ops, pi).is_zero());
        Series<PolyVector> xi = vector_series(rng, n, 2);
        Series<PolyVector> moved = gauge_action(ops, xi, pi);
        CHECK(mc_defect(ops, moved).is_zero());
    }
}

TEST_CASE("gauge action composes through bch")
{
    DglaOps<PolyVector> ops = polyvector_dgla(d);
    Rng rng(888);
    const int n = 3;
    for (int it = 0; it < 10; ++it) {
        Series<PolyVector> pi = bivector_series(rng, n, 1);
        Series<PolyVector> xi = vector_series(rng, n, 1);
        Series<PolyVector> eta = vector_series(rng, n, 1);
        // with ad(x) = [x, xi] the composition runs through bch(xi, eta)
        Series<PolyVector> one_then_other = gauge_action(ops, eta, gauge_action(ops, xi, pi));
        Series<PolyVector> combined = gauge_action(ops, bch3(ops, xi, eta), pi);
        CHECK(one_then_other == combined);
    }
}

TEST_CASE("ce coderivation structure maps")
{
    DglaOps<Cochain> ops = hochschild_dgla(d);
    Rng rng(909);

    // Q(v) = -dv as a length-1 word
    Cochain v = rng.cochain(d, 2, 2, 2, 2);
    REQUIRE(!ops.dif(v).is_zero());
    CeSum<Cochain> qv = ce_coderivation(ops, std::vector<Cochain>{v});
    CeSum<Cochain> diff = qv;
    diff.push_back(CeTerm<Cochain>{Rational(1), {ops.dif(v)}});
    CHECK(ce_is_zero(ops, diff));

    // two closed elements: only the bracket word survives
    Cochain c1 = Cochain::partial_op(d, 0).coeff_scaled(X());
    Cochain c2 = Cochain::partial_op(d, 1).coeff_scaled(Y());
    REQUIRE(ops.dif(c1).is_zero());
    REQUIRE(ops.dif(c2).is_zero());
    CeSum<Cochain> q2 = ce_coderivation(ops, std::vector<Cochain>{c1, c2});
    int sgn = detail::pow_sign(ops.lie_degree(c1) + 1);
    CeSum<Cochain> diff2 = q2;
    diff2.push_back(CeTerm<Cochain>{Rational(-sgn), {ops.brk(c1, c2)}});
    CHECK(ce_is_zero(ops, diff2));

    CHECK_THROWS_AS(ce_coderivation(ops, std::vector<Cochain>(5, v)), std::invalid_argument);
}

TEST_CASE("ce coderivation squares to zero")
{
    DglaOps<Cochain> hops = hochschild_dgla(d);
    Rng rng(4242);
    for (int it = 0; it < 12; ++it) {
        std::vector<Cochain> word;
        int len = rng.range(1, 3);
        for (int i = 0; i < len; ++i)
            word.push_back(rng.cochain(d, rng.range(1, 3), 2, 2, 1));
        CeSum<Cochain> qq = ce_coderivation(hops, ce_coderivation(hops, word));
        CHECK(ce_is_zero(hops, qq));
    }

    DglaOps<PolyVector> pops = polyvector_dgla(d);
    for (int it = 0; it < 12; ++it) {
        std::vector<PolyVector> word;
        int len = rng.range(1, 3);
        for (int i = 0; i < len; ++i)
            word.push_back(rng.polyvector(d, rng.range(0, 2), 2, 2));
        CeSum<PolyVector> qq = ce_coderivation(pops, ce_coderivation(pops, word));
        CHECK(ce_is_zero(pops, qq));
    }
}
