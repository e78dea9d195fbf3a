#include "hochlab/obstruction.hpp"
#include "hochlab/rng.hpp"

#include <doctest.h>

using namespace hochlab;

namespace {
const int d = 2;
Poly X() { return Poly::variable(d, 0); }
Poly Y() { return Poly::variable(d, 1); }
Poly mono(int i, int j) { return Poly::monomial(MultiIndex{i, j}, Rational(1)); }

std::vector<MultiIndex> monomials_up_to(int dim, int max_deg)
{
    return mi_enumerate(dim, 1, max_deg);
}
} // namespace

TEST_CASE("poisson bracket")
{
    ThetaMatrix theta = canonical_theta_2d();

    // {x, y} = 1, which is zero as a class in A/K
    CHECK(poisson_bracket(theta, X(), Y()).is_zero());

    CHECK(poisson_bracket(theta, X() * X(), Y()) == Rational(2) * X());
    CHECK(poisson_bracket(theta, mono(2, 1), mono(0, 2)) ==
          Rational(4) * X() * Y() * Y());

    Rng rng(13);
    for (int it = 0; it < 20; ++it) {
        Poly a = rng.poly(d, 4, 3);
        CHECK(poisson_bracket(theta, a, a).is_zero());
    }
}

TEST_CASE("vey cocycle values")
{
    ThetaMatrix theta = canonical_theta_2d();

    // a linear slot kills V
    Rng rng(17);
    for (int it = 0; it < 10; ++it)
        CHECK(vey_raw(theta, X(), rng.poly(d, 5, 3)).is_zero());

    // V(x^3, y^3) = 3/2 (raw value; the class representative drops it)
    CHECK(vey_raw(theta, mono(3, 0), mono(0, 3)) == Poly::constant(d, Rational(3, 2)));
    CHECK(vey_cocycle(theta, mono(3, 0), mono(0, 3)).is_zero());

    // V(x^2 y, x y^2) = -1/2
    CHECK(vey_raw(theta, mono(2, 1), mono(1, 2)) == Poly::constant(d, Rational(-1, 2)));

    // V(x^4, y^3) = 6x
    CHECK(vey_raw(theta, mono(4, 0), mono(0, 3)) == Rational(6) * X());

    // antisymmetry on all monomial pairs of total degree <= 9
    for (const MultiIndex &a : monomials_up_to(d, 8))
        for (const MultiIndex &b : monomials_up_to(d, 8)) {
            if (a.total() + b.total() > 9)
                continue;
            Poly pa = Poly::monomial(a, Rational(1)), pb = Poly::monomial(b, Rational(1));
            CHECK(vey_raw(theta, pa, pb) == -vey_raw(theta, pb, pa));
        }
}

TEST_CASE("general-d vey agrees with the closed 2d form")
{
    ThetaMatrix theta = canonical_theta_2d();
    for (const MultiIndex &a : monomials_up_to(d, 7))
        for (const MultiIndex &b : monomials_up_to(d, 7)) {
            if (a.total() + b.total() > 8)
                continue;
            Poly pa = Poly::monomial(a, Rational(1)), pb = Poly::monomial(b, Rational(1));
            CHECK(vey_raw(theta, pa, pb) == vey_2d(pa, pb));
        }
}

TEST_CASE("vey is the hbar^3 term of the moyal commutator")
{
    ThetaMatrix theta = canonical_theta_2d();
    StarProduct s = moyal_weyl(theta, 5);
    for (const MultiIndex &a : monomials_up_to(d, 7))
        for (const MultiIndex &b : monomials_up_to(d, 7)) {
            if (a.total() + b.total() > 8)
                continue;
            Poly pa = Poly::monomial(a, Rational(1)), pb = Poly::monomial(b, Rational(1));
            Series<Poly> c = commutator_expansion(s, pa, pb);
            CHECK(c.coeff(1) == poisson_bracket(theta, pa, pb) +
                                    Poly::constant(d, c.coeff(1).constant_term()));
            CHECK(c.coeff(2).is_zero());
            CHECK(c.coeff(3) == vey_raw(theta, pa, pb));
            CHECK(c.coeff(4).is_zero());
        }
}

TEST_CASE("vey is a chevalley-eilenberg 2-cocycle")
{
    ThetaMatrix theta = canonical_theta_2d();
    // a few fixed spot triples plus a seeded sample; the acceptance suite
    // sweeps every triple of total degree <= 9
    CHECK(ce2_cocycle_defect(theta, X(), Y(), mono(2, 0)).is_zero());
    CHECK(ce2_cocycle_defect(theta, mono(3, 0), mono(2, 1), mono(0, 3)).is_zero());
    Rng rng(19);
    for (int it = 0; it < 25; ++it) {
        Poly a = Poly::monomial(rng.multi_index(d, 4), Rational(1));
        Poly b = Poly::monomial(rng.multi_index(d, 4), Rational(1));
        Poly c = Poly::monomial(rng.multi_index(d, 3), Rational(1));
        CHECK(ce2_cocycle_defect(theta, a, b, c).is_zero());
    }
    // a linear slot makes every term vanish
    CHECK(ce2_cocycle_defect(theta, X(), mono(2, 2), mono(1, 3)).is_zero());
}

TEST_CASE("system construction and low-degree solvability")
{
    ThetaMatrix theta = canonical_theta_2d();

    // inconsistent bounds are rejected
    ObstructionBounds bad;
    bad.max_domain_degree = 3;
    bad.max_pair_degree = 7;
    CHECK_THROWS_AS(build_coboundary_system(theta, bad), std::invalid_argument);

    // the pair (x, y) produces exactly the divergence constraint rows
    ObstructionBounds small;
    small.max_domain_degree = 3;
    small.max_pair_degree = 4;
    ObstructionSystem sys = build_coboundary_system(theta, small);
    int xy_rows = 0;
    for (const ObstructionRow &r : sys.rows())
        if (r.a == MultiIndex{1, 0} && r.b == MultiIndex{0, 1})
            ++xy_rows;
    CHECK(xy_rows > 0);

    // no obstruction at low degree: the contradiction needs
    // degree-5 monomials
    ObstructionCertificate low = solve_or_certify(sys);
    CHECK(low.solvable);
    CHECK(verify_solution(sys, low.solution));
}

TEST_CASE("the degree-5 system is infeasible with a verifiable witness")
{
    ThetaMatrix theta = canonical_theta_2d();
    ObstructionSystem sys = build_coboundary_system(theta, ObstructionBounds{});
    ObstructionCertificate cert = solve_or_certify(sys);
    CHECK(!cert.solvable);
    CHECK(!cert.combination.empty());
    CHECK(verify_infeasibility(sys, cert.combination));

    // tampering with the witness breaks it
    auto tampered = cert.combination;
    tampered[0].second += Rational(1);
    CHECK(!verify_infeasibility(sys, tampered));
}

TEST_CASE("monotonicity: the witness embeds into larger bounds")
{
    ThetaMatrix theta = canonical_theta_2d();
    ObstructionSystem sys = build_coboundary_system(theta, ObstructionBounds{});
    ObstructionCertificate cert = solve_or_certify(sys);
    REQUIRE(!cert.solvable);

    ObstructionBounds bigger;
    bigger.max_domain_degree = 6;
    bigger.max_pair_degree = 7;
    ObstructionSystem big = build_coboundary_system(theta, bigger);
    ObstructionCertificate big_cert = solve_or_certify(big);
    CHECK(!big_cert.solvable);

    // the small witness maps onto rows of the big system with identical
    // provenance and still certifies 0 = nonzero there
    std::map<std::tuple<std::string, std::string, std::string>, int> big_rows;
    auto key = [](const ObstructionRow &r) {
        return std::tuple{Poly::monomial(r.a, Rational(1)).str(),
                          Poly::monomial(r.b, Rational(1)).str(),
                          Poly::monomial(r.target, Rational(1)).str()};
    };
    for (int i = 0; i < static_cast<int>(big.rows().size()); ++i)
        big_rows[key(big.rows()[static_cast<std::size_t>(i)])] = i;
    std::vector<std::pair<int, Rational>> embedded;
    for (const auto &[ridx, lam] : cert.combination) {
        auto found = big_rows.find(key(sys.rows()[static_cast<std::size_t>(ridx)]));
        REQUIRE(found != big_rows.end());
        embedded.emplace_back(found->second, lam);
    }
    CHECK(verify_infeasibility(big, embedded));
}

TEST_CASE("coboundaries are solvable (negative control)")
{
    ThetaMatrix theta = canonical_theta_2d();
    Rng rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        LinearMapTable p0;
        for (const MultiIndex &m : monomials_up_to(d, 5)) {
            Poly v(d);
            // small random values of degree <= 4 with no constant term
            for (int t = 0; t < 2; ++t) {
                MultiIndex mi = rng.multi_index(d, 4);
                if (mi.is_zero())
                    continue;
                v += Poly::monomial(mi, rng.rational());
            }
            p0.emplace(m, v);
        }
        ObstructionSystem sys = build_delta_system(theta, ObstructionBounds{}, p0);
        ObstructionCertificate cert = solve_or_certify(sys);
        CHECK(cert.solvable);
        CHECK(verify_solution(sys, cert.solution));
        // the planted table satisfies the same rows
        CHECK(verify_solution(sys, p0));
    }
}

TEST_CASE("the scripted replay reaches the contradiction")
{
    ContradictionTranscript tr = reproduce_contradiction(canonical_theta_2d());
    CHECK(tr.failure.empty());
    CHECK(tr.reached_contradiction);
    CHECK(tr.generic_infeasible);
    CHECK(tr.raz_x_coeff == Rational(1, 2));
    CHECK(tr.dva_x_coeff == Rational(-3, 10));
    CHECK(tr.raz_x_coeff != tr.dva_x_coeff);
    for (const ReplayStep &s : tr.steps)
        CHECK(s.verified);
    REQUIRE(tr.steps.size() == 7);
    CHECK(tr.steps[4].name == "raz");
    CHECK(tr.steps[5].name == "dva");
}
