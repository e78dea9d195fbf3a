// Acceptance suite: one line per criterion, exact checks, wall-clock
// budgets enforced where stated. Exits nonzero if any criterion fails.

#include "hochlab/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace hochlab;

namespace {

int failures = 0;

long run_ms(const std::function<bool()> &body, bool &ok)
{
    auto t0 = std::chrono::steady_clock::now();
    ok = body();
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

void criterion(int number, const std::string &label, const std::function<bool()> &body,
               long budget_ms = 0)
{
    bool ok = false;
    long ms = 0;
    try {
        ms = run_ms(body, ok);
    } catch (const std::exception &e) {
        ok = false;
        std::cout << "         exception: " << e.what() << "\n";
    }
    if (budget_ms > 0 && ms > budget_ms)
        ok = false;
    if (!ok)
        ++failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label
              << "  (" << ms << " ms" << (budget_ms ? ", budget " + std::to_string(budget_ms)
                                                    : std::string())
              << ")\n"
              << std::flush;
}

bool property_checks_pass(const RunConfig &cfg,
                          const std::vector<PropertyCheck> &defs,
                          const std::vector<std::string> &names)
{
    SuiteRunner runner(cfg);
    for (const std::string &name : names) {
        bool found = false;
        for (const PropertyCheck &c : defs)
            if (c.name == name) {
                runner.run(c);
                found = true;
            }
        if (!found)
            return false;
    }
    for (const CheckResult &r : runner.take_results())
        if (!r.pass)
            return false;
    return true;
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main()
{
    RunConfig cfg; // defaults: canonical 2D bracket, order 6, seed fixed

    criterion(
        1, "complex axioms: d^2, b^2, B^2, bB+Bb, (b+uB)^2 all vanish (200 seeded each)",
        [&] {
            return property_checks_pass(cfg, checks::identities(cfg),
                                        {"cochain-differential-squares",
                                         "chain-boundary-squares", "connes-b-squares",
                                         "boundary-b-anticommute",
                                         "cyclic-differential-squares"});
        },
        30000);

    criterion(2, "module identities: L-bracket action and B-L compatibility (100 each)", [&] {
        return property_checks_pass(cfg, checks::identities(cfg),
                                    {"lie-module-identity", "b-lie-compatibility"});
    });

    criterion(3, "gerstenhaber and calculus axioms on polyvectors and forms (100 each)", [&] {
        return property_checks_pass(
            cfg, checks::calculus(cfg),
            {"wedge-graded-commutative", "wedge-associative", "schouten-antisymmetry",
             "schouten-jacobi", "schouten-wedge-leibniz", "contraction-lie-module",
             "lie-of-wedge", "cartan-formula"});
    });

    criterion(4, "hkr lands in cocycles; first-order homotopy solvable, each solve < 5 s", [&] {
        if (!property_checks_pass(cfg, checks::calculus(cfg), {"hkr-lands-in-cocycles"}))
            return false;
        for (int i = 0; i < 20; ++i) {
            Rng rng(detail::instance_seed(cfg.seed, "acceptance-hkr-homotopy", i));
            PolyVector g1 = rng.polyvector(2, rng.range(1, 2), 2, 2);
            PolyVector g2 = rng.polyvector(2, rng.range(1, 2), 2, 2);
            Cochain defect =
                hkr(schouten_bracket(g1, g2)) - gerstenhaber_bracket(hkr(g1), hkr(g2));
            if (defect.is_zero())
                continue;
            bool ok = false;
            long ms = run_ms(
                [&] {
                    return coboundary_solve(defect, SolveBounds::from(defect)).solvable();
                },
                ok);
            if (!ok || ms >= 5000)
                return false;
        }
        return true;
    });

    criterion(
        5, "moyal-weyl associativity at order 6, canonical d=2 and random d=4",
        [&] {
            if (!associativity_defect(moyal_weyl(canonical_theta_2d(), 6)).is_zero())
                return false;
            Rng rng(detail::instance_seed(cfg.seed, "moyal-associativity-4d", 0));
            ThetaMatrix theta(4, std::vector<Rational>(4, Rational(0)));
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j) {
                    theta[i][j] = rng.rational();
                    theta[j][i] = -theta[i][j];
                }
            return associativity_defect(moyal_weyl(theta, 6)).is_zero();
        },
        60000);

    criterion(6, "MC defect and associativity defect vanish together, order by order", [&] {
        DglaOps<Cochain> ops = hochschild_dgla(2);
        for (int i = 0; i < 20; ++i) {
            Rng rng(detail::instance_seed(cfg.seed, "acceptance-mc-assoc", i));
            Series<Cochain> pi = Series<Cochain>::zero(3, Cochain(2, 2));
            for (int k = 1; k <= 3; ++k)
                pi.coeff(k) = rng.cochain(2, 2, 2, 2, 2);
            StarProduct s(2, pi);
            Series<Cochain> mc = mc_defect(ops, mc_element_of(s));
            Series<Cochain> assoc = associativity_defect(s);
            for (int k = 0; k <= 3; ++k)
                if (mc.coeff(k).is_zero() != assoc.coeff(k).is_zero())
                    return false;
            if (!(mc == assoc)) // the correspondence is exact, not just iff
                return false;
        }
        return true;
    });

    criterion(
        7, "weyl commutator = hbar{a,b} + hbar^3 V(a,b) mod hbar^5, all pairs deg <= 8",
        [&] {
            ThetaMatrix theta = canonical_theta_2d();
            StarProduct s = moyal_weyl(theta, 5);
            std::vector<MultiIndex> monos = mi_enumerate(2, 1, 7);
            for (const MultiIndex &am : monos)
                for (const MultiIndex &bm : monos) {
                    if (am.total() + bm.total() > 8)
                        continue;
                    Poly a = Poly::monomial(am, Rational(1));
                    Poly b = Poly::monomial(bm, Rational(1));
                    Series<Poly> c = commutator_expansion(s, a, b);
                    Poly raw(2);
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            if (!theta[i][j].is_zero())
                                raw += (a.partial(i) * b.partial(j)).scaled(theta[i][j]);
                    if (!(c.coeff(0).is_zero() && c.coeff(1) == raw && c.coeff(2).is_zero() &&
                          c.coeff(3) == vey_raw(theta, a, b) && c.coeff(4).is_zero()))
                        return false;
                }
            Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
            if (!(commutator_expansion(s, x, y).coeff(1) == Poly::constant(2, Rational(1))))
                return false;
            return commutator_expansion(s, x * x * x, y * y * y).coeff(3) ==
                   Poly::constant(2, Rational(3, 2));
        },
        60000);

    criterion(8, "vey 2-cocycle: CE defect zero on all triples deg <= 9; general form = 2d form",
              [&] {
                  ThetaMatrix theta = canonical_theta_2d();
                  std::vector<MultiIndex> monos = mi_enumerate(2, 1, 7);
                  for (std::size_t i = 0; i < monos.size(); ++i)
                      for (std::size_t j = i; j < monos.size(); ++j)
                          for (std::size_t k = j; k < monos.size(); ++k) {
                              if (monos[i].total() + monos[j].total() + monos[k].total() > 9)
                                  continue;
                              if (!ce2_cocycle_defect(theta,
                                                      Poly::monomial(monos[i], Rational(1)),
                                                      Poly::monomial(monos[j], Rational(1)),
                                                      Poly::monomial(monos[k], Rational(1)))
                                       .is_zero())
                                  return false;
                          }
                  for (const MultiIndex &am : monos)
                      for (const MultiIndex &bm : monos) {
                          if (am.total() + bm.total() > 8)
                              continue;
                          Poly a = Poly::monomial(am, Rational(1));
                          Poly b = Poly::monomial(bm, Rational(1));
                          if (!(vey_raw(theta, a, b) == vey_2d(a, b)))
                              return false;
                      }
                  return true;
              });

    criterion(
        9,
        "non-formality certificate: system infeasible, witness re-verifies, replay derives "
        "the 1/2 vs -3/10 clash, negative controls solvable",
        [&] {
            ThetaMatrix theta = canonical_theta_2d();
            ObstructionSystem sys = build_coboundary_system(theta, cfg.obstruction);
            ObstructionCertificate cert = solve_or_certify(sys);
            if (cert.solvable || !verify_infeasibility(sys, cert.combination))
                return false;
            ContradictionTranscript tr = reproduce_contradiction(theta, cfg.obstruction);
            if (!tr.failure.empty() || !tr.reached_contradiction || !tr.generic_infeasible)
                return false;
            if (!(tr.raz_x_coeff == Rational(1, 2) && tr.dva_x_coeff == Rational(-3, 10)))
                return false;
            for (int trial = 0; trial < 5; ++trial) {
                Rng rng(detail::instance_seed(cfg.seed, "acceptance-controls", trial));
                LinearMapTable p0;
                for (const MultiIndex &m : mi_enumerate(2, 1, 5)) {
                    Poly v(2);
                    for (int t = 0; t < 2; ++t) {
                        MultiIndex mi = rng.multi_index(2, 4);
                        if (!mi.is_zero())
                            v += Poly::monomial(mi, rng.rational());
                    }
                    p0.emplace(m, v);
                }
                ObstructionSystem control = build_delta_system(theta, cfg.obstruction, p0);
                ObstructionCertificate c = solve_or_certify(control);
                if (!c.solvable || !verify_solution(control, c.solution))
                    return false;
            }
            return true;
        },
        60000);

    criterion(10, "gauge machinery: MC preserved, twists square to zero, CE Q^2 = 0", [&] {
        return property_checks_pass(cfg, checks::dgla(cfg),
                                    {"gauge-preserves-mc", "twist-moyal-squares",
                                     "twist-poisson-squares", "ce-coderivation-squares"});
    });

    criterion(11, "CLI determinism: byte-identical reports; witnesses re-verify", [&] {
        const char *bin = std::getenv("HOCHLAB_BIN");
        if (!bin) {
            std::cout << "         HOCHLAB_BIN not set\n";
            return false;
        }
        std::string base = "/tmp/hochlab_acceptance";
        std::string cmd1 = std::string(bin) + " all --seed 7 --format json --out " + base +
                           "_1.json > /dev/null 2>&1";
        std::string cmd2 = std::string(bin) + " all --seed 7 --format json --out " + base +
                           "_2.json > /dev/null 2>&1";
        if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0)
            return false;
        std::string r1 = slurp(base + "_1.json"), r2 = slurp(base + "_2.json");
        if (r1.empty() || r1 != r2)
            return false;
        std::string verify = std::string(bin) + " verify-witness " + base + "_1.json";
        if (std::system((verify + " > /dev/null 2>&1").c_str()) != 0)
            return false;
        // a bad config must exit with code 2
        std::string bad = std::string(bin) +
                          " all --theta '[[\"0\",\"1\"],[\"1\",\"0\"]]' > /dev/null 2>&1";
        int rc = std::system(bad.c_str());
        return WEXITSTATUS(rc) == 2;
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) +
                                      " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
