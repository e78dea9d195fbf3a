#pragma once

// The named verification suites behind the CLI and the acceptance tests.
// Every randomized check draws each instance from its own deterministically
// derived seed, so a failure witness (check name + instance index) replays
// exactly. Reports echo the full configuration and the fingerprint of the
// sign-convention ledger.

#include "hochlab/cobound.hpp"
#include "hochlab/conventions.hpp"
#include "hochlab/dgla.hpp"
#include "hochlab/json_io.hpp"
#include "hochlab/obstruction.hpp"
#include "hochlab/rng.hpp"
#include "hochlab/star.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hochlab {

struct RunConfig {
    int dim = 2;
    ThetaMatrix theta = canonical_theta_2d();
    int hbar_order = 6;
    int u_order = 3;
    int coeff_degree = 3;
    int derivative_order = 3;
    int chain_degree = 3;
    ObstructionBounds obstruction;
    std::uint64_t seed = 20260808;
    std::vector<std::string> suites{"all"};
    std::string format = "text";
    bool timings = false;

    void validate() const
    {
        check_antisymmetric(theta);
        if (static_cast<int>(theta.size()) != dim)
            throw std::invalid_argument("config: theta size does not match dim");
        if (hbar_order < 1 || u_order < 1)
            throw std::invalid_argument("config: orders must be >= 1");
        if (coeff_degree < 1 || derivative_order < 1 || chain_degree < 1)
            throw std::invalid_argument("config: degree bounds must be >= 1");
        if (obstruction.max_domain_degree < 3)
            throw std::invalid_argument("config: obstruction domain degree must be >= 3");
        if (obstruction.max_pair_degree - 2 > obstruction.max_domain_degree)
            throw std::invalid_argument("config: inconsistent obstruction bounds");
        if (format != "text" && format != "json")
            throw std::invalid_argument("config: format must be text or json");
        for (const std::string &s : suites)
            if (s != "all" && s != "identities" && s != "calculus" && s != "dgla" &&
                s != "star" && s != "obstruction")
                throw std::invalid_argument("config: unknown suite '" + s + "'");
    }

    bool wants(const std::string &suite) const
    {
        for (const std::string &s : suites)
            if (s == "all" || s == suite)
                return true;
        return false;
    }

    Json to_json() const
    {
        return Json{{"dim", dim},
                    {"theta", json_of(theta)},
                    {"hbar_order", hbar_order},
                    {"u_order", u_order},
                    {"coeff_degree", coeff_degree},
                    {"derivative_order", derivative_order},
                    {"chain_degree", chain_degree},
                    {"obstruction", Json{{"D", obstruction.max_domain_degree},
                                         {"Dpairs", obstruction.max_pair_degree}}},
                    {"seed", seed},
                    {"suites", suites},
                    {"format", format},
                    {"timings", timings}};
    }

    static RunConfig from_json(const Json &j)
    {
        RunConfig c;
        if (j.contains("dim"))
            c.dim = j.at("dim").get<int>();
        if (j.contains("theta"))
            c.theta = theta_from_json(j.at("theta"));
        else if (j.contains("dim"))
            throw std::invalid_argument("config: dim without theta");
        if (j.contains("hbar_order"))
            c.hbar_order = j.at("hbar_order").get<int>();
        if (j.contains("u_order"))
            c.u_order = j.at("u_order").get<int>();
        if (j.contains("coeff_degree"))
            c.coeff_degree = j.at("coeff_degree").get<int>();
        if (j.contains("derivative_order"))
            c.derivative_order = j.at("derivative_order").get<int>();
        if (j.contains("chain_degree"))
            c.chain_degree = j.at("chain_degree").get<int>();
        if (j.contains("obstruction")) {
            c.obstruction.max_domain_degree = j.at("obstruction").at("D").get<int>();
            c.obstruction.max_pair_degree = j.at("obstruction").at("Dpairs").get<int>();
        }
        if (j.contains("seed"))
            c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("suites"))
            c.suites = j.at("suites").get<std::vector<std::string>>();
        if (j.contains("format"))
            c.format = j.at("format").get<std::string>();
        if (j.contains("timings"))
            c.timings = j.at("timings").get<bool>();
        return c;
    }
};

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
    Json witness; // null unless the check produces one
    long elapsed_ms = 0;
};

struct Report {
    RunConfig config;
    std::vector<CheckResult> results;

    bool all_pass() const
    {
        for (const CheckResult &r : results)
            if (!r.pass)
                return false;
        return true;
    }

    Json to_json() const
    {
        Json checks = Json::array();
        for (const CheckResult &r : results)
            checks.push_back(Json{{"suite", r.suite},
                                  {"check", r.name},
                                  {"status", r.pass ? "pass" : "fail"},
                                  {"detail", r.detail},
                                  {"elapsed_ms", config.timings ? r.elapsed_ms : 0},
                                  {"witness", r.witness}});
        return Json{{"version", 1},
                    {"conventions_fingerprint", conventions_fingerprint()},
                    {"config", config.to_json()},
                    {"results", checks}};
    }

    std::string text() const
    {
        std::ostringstream os;
        for (const CheckResult &r : results)
            os << (r.pass ? "PASS" : "FAIL") << "  " << r.suite << "/" << r.name
               << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "  [" << r.elapsed_ms
               << " ms]\n";
        os << (all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
        return os.str();
    }
};

namespace detail {

inline std::uint64_t fnv64(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t instance_seed(std::uint64_t seed, std::string_view check, int index)
{
    std::uint64_t h = seed ^ fnv64(check);
    h ^= 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index + 1);
    return h;
}

} // namespace detail

// A randomized check: run `count` instances; each returns a witness object
// on failure (serialized instance data), nullopt on success.
struct PropertyCheck {
    std::string suite;
    std::string name;
    int count = 1;
    std::function<std::optional<Json>(Rng &)> instance;
};

class SuiteRunner {
  public:
    explicit SuiteRunner(const RunConfig &config) : config_(config) {}

    const RunConfig &config() const { return config_; }
    std::vector<CheckResult> take_results() { return std::move(results_); }

    void run(const PropertyCheck &check)
    {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult res;
        res.suite = check.suite;
        res.name = check.name;
        res.pass = true;
        int failures = 0;
        Json fail_list = Json::array();
        for (int i = 0; i < check.count; ++i) {
            Rng rng(detail::instance_seed(config_.seed, check.name, i));
            std::optional<Json> w;
            try {
                w = check.instance(rng);
            } catch (const std::exception &e) {
                w = Json{{"exception", e.what()}};
            }
            if (w.has_value()) {
                res.pass = false;
                if (failures < 3)
                    fail_list.push_back(Json{{"kind", "property"},
                                             {"check", check.name},
                                             {"index", i},
                                             {"instance", *w}});
                ++failures;
            }
        }
        std::ostringstream det;
        det << check.count << " instances";
        if (failures)
            det << ", " << failures << " failed";
        res.detail = det.str();
        if (!res.pass)
            res.witness = fail_list;
        res.elapsed_ms = ms_since(t0);
        results_.push_back(std::move(res));
    }

    void run_once(const std::string &suite, const std::string &name,
                  const std::function<void(CheckResult &)> &body)
    {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult res;
        res.suite = suite;
        res.name = name;
        try {
            body(res);
        } catch (const std::exception &e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.elapsed_ms = ms_since(t0);
        results_.push_back(std::move(res));
    }

  private:
    static long ms_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }

    RunConfig config_;
    std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------------------
// The check definitions. Shared between run_suite and the witness verifier.

namespace checks {

inline std::vector<PropertyCheck> identities(const RunConfig &cfg)
{
    const int d = cfg.dim;
    const int cd = cfg.coeff_degree, od = cfg.derivative_order, ch = cfg.chain_degree;
    std::vector<PropertyCheck> out;

    out.push_back({"identities", "cochain-differential-squares", 200, [=](Rng &rng) {
                       Cochain p = rng.cochain(d, rng.range(0, 3), cd, od, 2);
                       if (hoch_differential(hoch_differential(p)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(p)};
                   }});
    out.push_back({"identities", "chain-boundary-squares", 200, [=](Rng &rng) {
                       Chain c = rng.chain(d, rng.range(0, 5), ch, 3);
                       if (chain_boundary(chain_boundary(c)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(c)};
                   }});
    out.push_back({"identities", "connes-b-squares", 200, [=](Rng &rng) {
                       Chain c = rng.chain(d, rng.range(0, 4), ch, 3);
                       if (connes_b(connes_b(c)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(c)};
                   }});
    out.push_back({"identities", "boundary-b-anticommute", 200, [=](Rng &rng) {
                       Chain c = rng.chain(d, rng.range(0, 4), ch, 3);
                       Chain anti = chain_boundary(connes_b(c)) + connes_b(chain_boundary(c));
                       if (anti.is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(c)};
                   }});
    out.push_back({"identities", "cyclic-differential-squares", 200, [=](Rng &rng) {
                       CyclicChain c(d, 3);
                       for (int j = 0; j <= 3; ++j)
                           c.coeff(j) = rng.chain(d, rng.range(0, 3), ch, 2);
                       if (cyclic_differential(cyclic_differential(c)).is_zero())
                           return std::optional<Json>{};
                       Json parts = Json::array();
                       for (int j = 0; j <= 3; ++j)
                           parts.push_back(json_of(c.coeff(j)));
                       return std::optional<Json>{parts};
                   }});
    out.push_back({"identities", "lie-module-identity", 100, [=](Rng &rng) {
                       Cochain q1 = rng.cochain(d, rng.range(1, 3), 2, od, 2);
                       Cochain q2 = rng.cochain(d, rng.range(1, 3), 2, od, 2);
                       Chain c = rng.chain(d, rng.range(0, 4), 2, 2);
                       int k1 = q1.lie_degree(), k2 = q2.lie_degree();
                       Chain lhs =
                           lie_derivative(q1, lie_derivative(q2, c)) -
                           lie_derivative(q2, lie_derivative(q1, c))
                               .scaled(Rational(detail::pow_sign(static_cast<long>(k1) * k2)));
                       if (lhs == lie_derivative(gerstenhaber_bracket(q1, q2), c))
                           return std::optional<Json>{};
                       return std::optional<Json>{
                           Json{{"q1", json_of(q1)}, {"q2", json_of(q2)}, {"c", json_of(c)}}};
                   }});
    out.push_back({"identities", "b-lie-compatibility", 100, [=](Rng &rng) {
                       Cochain p = rng.normalized_cochain(d, rng.range(1, 3), 2, od, 2);
                       Chain c = rng.chain(d, rng.range(0, 4), 2, 2);
                       Chain lhs = connes_b(lie_derivative(p, c)) -
                                   lie_derivative(p, connes_b(c))
                                       .scaled(Rational(detail::pow_sign(p.arity() + 1)));
                       if (lhs.is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"p", json_of(p)}, {"c", json_of(c)}}};
                   }});
    out.push_back({"identities", "differential-vs-mu-bracket", 100, [=](Rng &rng) {
                       int arity = rng.range(0, 3);
                       Cochain p = rng.cochain(d, arity, cd, od, 2);
                       Cochain lhs = hoch_differential(p);
                       Cochain rhs =
                           dgla_differential(p).scaled(Rational(detail::pow_sign(arity - 1)));
                       if (lhs == rhs)
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(p)};
                   }});
    out.push_back({"identities", "cocycle-contraction-cycles", 40, [=](Rng &rng) {
                       // cups of derivations are cocycles; boundaries are cycles
                       Cochain v(d, 1);
                       for (int ax = 0; ax < d; ++ax)
                           v += Cochain::term(rng.poly(d, 2, 2), {MultiIndex::unit(d, ax)});
                       Cochain p = rng.range(0, 1) == 0 ? v : cup(v, v);
                       int m = rng.range(p.arity(), 4);
                       Chain c = rng.chain(d, m, 2, 2);
                       if (!chain_boundary(c).is_zero())
                           c = chain_boundary(rng.chain(d, m + 1, 2, 2));
                       if (chain_boundary(contraction(p, c)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"p", json_of(p)}, {"c", json_of(c)}}};
                   }});
    out.push_back({"identities", "leibniz-up-to-homotopy", 4, [=](Rng &rng) {
                       auto vf = [&](int cdeg) {
                           Cochain v(d, 1);
                           for (int ax = 0; ax < d; ++ax)
                               v += Cochain::term(rng.poly(d, cdeg, 2),
                                                  {MultiIndex::unit(d, ax)});
                           return v;
                       };
                       Cochain p = cup(vf(1), vf(1));
                       Cochain q1 = vf(1), q2 = vf(1);
                       int kp = p.lie_degree();
                       Cochain defect =
                           gerstenhaber_bracket(p, cup(q1, q2)) -
                           cup(gerstenhaber_bracket(p, q1), q2) -
                           cup(q1, gerstenhaber_bracket(p, q2))
                               .scaled(Rational(
                                   detail::pow_sign(static_cast<long>(kp) * q1.arity())));
                       if (defect.is_zero())
                           return std::optional<Json>{};
                       if (coboundary_solve(defect, SolveBounds::from(defect)).solvable())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(defect)};
                   }});
    out.push_back({"identities", "cartan-up-to-homotopy", 4, [=](Rng &rng) {
                       for (int tries = 0; tries < 50; ++tries) {
                           Cochain p = rng.normalized_cochain(d, rng.range(1, 2), 1, 2, 1);
                           if (p.is_zero() || !hoch_differential(p).is_zero())
                               continue;
                           Chain c = rng.chain(d, rng.range(p.arity(), 3), 2, 2);
                           if (!chain_boundary(c).is_zero())
                               continue;
                           Chain defect = connes_b(contraction(p, c)) -
                                          contraction(p, connes_b(c))
                                              .scaled(Rational(detail::pow_sign(p.arity()))) -
                                          lie_derivative(p, c);
                           if (defect.is_zero())
                               continue;
                           int deg = 0;
                           for (const auto &[tup, wt] : defect.terms())
                               for (const MultiIndex &m : tup)
                                   deg = std::max(deg, m.total());
                           if (chain_boundary_solve(defect, deg).solvable())
                               return std::optional<Json>{};
                           return std::optional<Json>{
                               Json{{"p", json_of(p)}, {"c", json_of(c)}}};
                       }
                       return std::optional<Json>{}; // no nontrivial instance found
                   }});
    return out;
}

inline std::vector<PropertyCheck> calculus(const RunConfig &cfg)
{
    const int d = cfg.dim;
    std::vector<PropertyCheck> out;

    out.push_back({"calculus", "wedge-graded-commutative", 100, [=](Rng &rng) {
                       int ka = rng.range(0, 3), kb = rng.range(0, 3);
                       PolyVector a = rng.polyvector(d, std::min(ka, d), 2, 2);
                       PolyVector b = rng.polyvector(d, std::min(kb, d), 2, 2);
                       PolyVector lhs = wedge(a, b);
                       PolyVector rhs = wedge(b, a).scaled(Rational(detail::pow_sign(
                           static_cast<long>(a.degree()) * b.degree())));
                       if (lhs == rhs)
                           return std::optional<Json>{};
                       return std::optional<Json>{
                           Json{{"a", json_of(a)}, {"b", json_of(b)}}};
                   }});
    out.push_back({"calculus", "wedge-associative", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector c = rng.polyvector(d, rng.range(0, 1), 2, 2);
                       if (wedge(wedge(a, b), c) == wedge(a, wedge(b, c)))
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"a", json_of(a)},
                                                       {"b", json_of(b)},
                                                       {"c", json_of(c)}}};
                   }});
    out.push_back({"calculus", "schouten-antisymmetry", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 3), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 3), 2, 2);
                       int la = a.degree() - 1, lb = b.degree() - 1;
                       PolyVector anti =
                           schouten_bracket(a, b) +
                           schouten_bracket(b, a).scaled(
                               Rational(detail::pow_sign(static_cast<long>(la) * lb)));
                       if (anti.is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{
                           Json{{"a", json_of(a)}, {"b", json_of(b)}}};
                   }});
    out.push_back({"calculus", "schouten-jacobi", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 3), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 3), 2, 2);
                       PolyVector c = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       int la = a.degree() - 1, lb = b.degree() - 1, lc = c.degree() - 1;
                       PolyVector j1 =
                           schouten_bracket(a, schouten_bracket(b, c))
                               .scaled(Rational(detail::pow_sign(static_cast<long>(la) * lc)));
                       PolyVector j2 =
                           schouten_bracket(b, schouten_bracket(c, a))
                               .scaled(Rational(detail::pow_sign(static_cast<long>(lb) * la)));
                       PolyVector j3 =
                           schouten_bracket(c, schouten_bracket(a, b))
                               .scaled(Rational(detail::pow_sign(static_cast<long>(lc) * lb)));
                       if ((j1 + j2 + j3).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"a", json_of(a)},
                                                       {"b", json_of(b)},
                                                       {"c", json_of(c)}}};
                   }});
    out.push_back({"calculus", "schouten-wedge-leibniz", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector c = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector lhs = schouten_bracket(a, wedge(b, c));
                       PolyVector rhs =
                           wedge(schouten_bracket(a, b), c) +
                           wedge(b, schouten_bracket(a, c))
                               .scaled(Rational(detail::pow_sign(
                                   static_cast<long>(b.degree()) * (a.degree() + 1))));
                       if (lhs == rhs)
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"a", json_of(a)},
                                                       {"b", json_of(b)},
                                                       {"c", json_of(c)}}};
                   }});
    out.push_back({"calculus", "contraction-lie-module", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       ExtForm w = rng.form(d, rng.range(0, d), 2, 2);
                       ExtForm lhs =
                           contraction(a, lie_derivative(b, w)) -
                           lie_derivative(b, contraction(a, w))
                               .scaled(Rational(detail::pow_sign(
                                   static_cast<long>(a.degree()) * (b.degree() + 1))));
                       if (lhs == contraction(schouten_bracket(a, b), w))
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"a", json_of(a)},
                                                       {"b", json_of(b)},
                                                       {"w", json_of(w)}}};
                   }});
    out.push_back({"calculus", "lie-of-wedge", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       PolyVector b = rng.polyvector(d, rng.range(0, 2), 2, 2);
                       ExtForm w = rng.form(d, rng.range(0, d), 2, 2);
                       ExtForm lhs = lie_derivative(wedge(a, b), w);
                       ExtForm rhs = lie_derivative(a, contraction(b, w)) +
                                     contraction(a, lie_derivative(b, w))
                                         .scaled(Rational(detail::pow_sign(a.degree())));
                       if (lhs == rhs)
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"a", json_of(a)},
                                                       {"b", json_of(b)},
                                                       {"w", json_of(w)}}};
                   }});
    out.push_back({"calculus", "cartan-formula", 100, [=](Rng &rng) {
                       PolyVector a = rng.polyvector(d, rng.range(0, 3), 2, 2);
                       ExtForm w = rng.form(d, rng.range(0, d), 2, 2);
                       ExtForm lhs = de_rham(contraction(a, w)) -
                                     contraction(a, de_rham(w))
                                         .scaled(Rational(detail::pow_sign(a.degree())));
                       if (lhs == lie_derivative(a, w))
                           return std::optional<Json>{};
                       return std::optional<Json>{
                           Json{{"a", json_of(a)}, {"w", json_of(w)}}};
                   }});
    out.push_back({"calculus", "hkr-lands-in-cocycles", 100, [=](Rng &rng) {
                       PolyVector g = rng.polyvector(d, rng.range(0, std::min(3, d)), 2, 2);
                       if (hoch_differential(hkr(g)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(g)};
                   }});
    out.push_back({"calculus", "hkr-first-order-homotopy", 20, [=](Rng &rng) {
                       PolyVector g1 = rng.polyvector(d, rng.range(1, 2), 2, 2);
                       PolyVector g2 = rng.polyvector(d, rng.range(1, 2), 2, 2);
                       Cochain defect = hkr(schouten_bracket(g1, g2)) -
                                        gerstenhaber_bracket(hkr(g1), hkr(g2));
                       if (defect.is_zero())
                           return std::optional<Json>{};
                       if (coboundary_solve(defect, SolveBounds::from(defect)).solvable())
                           return std::optional<Json>{};
                       return std::optional<Json>{
                           Json{{"g1", json_of(g1)}, {"g2", json_of(g2)}}};
                   }});
    return out;
}

inline std::vector<PropertyCheck> dgla(const RunConfig &cfg)
{
    const int d = cfg.dim;
    std::vector<PropertyCheck> out;

    // the two instances re-tested through the generic interface
    out.push_back({"dgla", "differential-squares-generic", 50, [=](Rng &rng) {
                       DglaOps<Cochain> ops = hochschild_dgla(d);
                       Cochain p = rng.cochain(d, rng.range(0, 3), 2, 2, 2);
                       if (ops.dif(ops.dif(p)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(p)};
                   }});
    out.push_back({"dgla", "jacobi-generic", 50, [=](Rng &rng) {
                       bool cochain_side = rng.range(0, 1) == 0;
                       auto jacobi = [&](auto ops, auto a, auto b, auto c) {
                           int la = ops.lie_degree(a), lb = ops.lie_degree(b),
                               lc = ops.lie_degree(c);
                           auto j1 = ops.brk(a, ops.brk(b, c))
                                         .scaled(Rational(detail::pow_sign(
                                             static_cast<long>(la) * lc)));
                           auto j2 = ops.brk(b, ops.brk(c, a))
                                         .scaled(Rational(detail::pow_sign(
                                             static_cast<long>(lb) * la)));
                           auto j3 = ops.brk(c, ops.brk(a, b))
                                         .scaled(Rational(detail::pow_sign(
                                             static_cast<long>(lc) * lb)));
                           return (j1 + j2 + j3).is_zero();
                       };
                       if (cochain_side) {
                           if (jacobi(hochschild_dgla(d), rng.cochain(d, rng.range(1, 3), 2, 2, 1),
                                      rng.cochain(d, rng.range(1, 3), 2, 2, 1),
                                      rng.cochain(d, rng.range(1, 2), 2, 2, 1)))
                               return std::optional<Json>{};
                           return std::optional<Json>{Json{{"side", "cochain"}}};
                       }
                       if (jacobi(polyvector_dgla(d), rng.polyvector(d, rng.range(0, 2), 2, 2),
                                  rng.polyvector(d, rng.range(0, 2), 2, 2),
                                  rng.polyvector(d, rng.range(0, 2), 2, 2)))
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"side", "polyvector"}}};
                   }});
    out.push_back({"dgla", "gauge-preserves-mc", 20, [=](Rng &rng) {
                       const int n = 3;
                       if (rng.range(0, 1) == 0 && d == 2) {
                           // polyvector side: every 2D bivector series is MC
                           DglaOps<PolyVector> ops = polyvector_dgla(d);
                           Series<PolyVector> pi = Series<PolyVector>::zero(n, PolyVector(d, 2));
                           Series<PolyVector> xi = Series<PolyVector>::zero(n, PolyVector(d, 1));
                           for (int k = 1; k <= n; ++k) {
                               pi.coeff(k) = rng.polyvector(d, 2, 2, 2);
                               xi.coeff(k) = rng.polyvector(d, 1, 2, 2);
                           }
                           if (mc_defect(ops, gauge_action(ops, xi, pi)).is_zero())
                               return std::optional<Json>{};
                           return std::optional<Json>{Json{{"side", "polyvector"}}};
                       }
                       // cochain side: gauge the Moyal element
                       DglaOps<Cochain> ops = hochschild_dgla(d);
                       ThetaMatrix theta = d == 2 ? canonical_theta_2d() : ThetaMatrix{};
                       if (theta.empty())
                           return std::optional<Json>{}; // only exercised in d = 2
                       StarProduct moyal = moyal_weyl(theta, n);
                       Series<Cochain> xi = Series<Cochain>::zero(n, Cochain(d, 1));
                       for (int k = 1; k <= n; ++k)
                           xi.coeff(k) = rng.cochain(d, 1, 1, 2, 1);
                       Series<Cochain> moved = gauge_action(ops, xi, mc_element_of(moyal));
                       if (mc_defect(ops, moved).is_zero())
                           return std::optional<Json>{};
                       Json w = Json::array();
                       for (int k = 1; k <= n; ++k)
                           w.push_back(json_of(xi.coeff(k)));
                       return std::optional<Json>{w};
                   }});
    out.push_back({"dgla", "twist-moyal-squares", 8, [=](Rng &rng) {
                       if (d != 2)
                           return std::optional<Json>{};
                       DglaOps<Cochain> ops = hochschild_dgla(d);
                       StarProduct moyal = moyal_weyl(canonical_theta_2d(), 3);
                       auto twisted = twisted_differential(ops, mc_element_of(moyal));
                       int arity = rng.range(1, 2);
                       Series<Cochain> x = Series<Cochain>::zero(3, Cochain(d, arity));
                       for (int k = 0; k <= 3; ++k)
                           x.coeff(k) = rng.cochain(d, arity, 2, 2, 2);
                       if (twisted(twisted(x)).is_zero())
                           return std::optional<Json>{};
                       Json w = Json::array();
                       for (int k = 0; k <= 3; ++k)
                           w.push_back(json_of(x.coeff(k)));
                       return std::optional<Json>{w};
                   }});
    out.push_back({"dgla", "twist-poisson-squares", 8, [=](Rng &rng) {
                       if (d != 2)
                           return std::optional<Json>{};
                       DglaOps<PolyVector> ops = polyvector_dgla(d);
                       Series<PolyVector> pi = Series<PolyVector>::zero(3, PolyVector(d, 2));
                       for (int k = 1; k <= 3; ++k)
                           pi.coeff(k) = rng.polyvector(d, 2, 2, 2);
                       auto lich = twisted_differential(ops, pi);
                       int degree = rng.range(0, 2);
                       Series<PolyVector> v = Series<PolyVector>::zero(3, PolyVector(d, degree));
                       for (int k = 0; k <= 3; ++k)
                           v.coeff(k) = rng.polyvector(d, degree, 2, 2);
                       if (lich(lich(v)).is_zero())
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(pi.coeff(1))};
                   }});
    out.push_back({"dgla", "ce-coderivation-squares", 50, [=](Rng &rng) {
                       int len = rng.range(1, 3);
                       if (rng.range(0, 1) == 0) {
                           DglaOps<Cochain> ops = hochschild_dgla(d);
                           std::vector<Cochain> word;
                           for (int i = 0; i < len; ++i)
                               word.push_back(rng.cochain(d, rng.range(1, 3), 2, 2, 1));
                           if (ce_is_zero(ops, ce_coderivation(ops, ce_coderivation(ops, word))))
                               return std::optional<Json>{};
                           Json w = Json::array();
                           for (const Cochain &v : word)
                               w.push_back(json_of(v));
                           return std::optional<Json>{Json{{"side", "cochain"}, {"word", w}}};
                       }
                       DglaOps<PolyVector> ops = polyvector_dgla(d);
                       std::vector<PolyVector> word;
                       for (int i = 0; i < len; ++i)
                           word.push_back(rng.polyvector(d, rng.range(0, 2), 2, 2));
                       if (ce_is_zero(ops, ce_coderivation(ops, ce_coderivation(ops, word))))
                           return std::optional<Json>{};
                       Json w = Json::array();
                       for (const PolyVector &v : word)
                           w.push_back(json_of(v));
                       return std::optional<Json>{Json{{"side", "polyvector"}, {"word", w}}};
                   }});
    out.push_back({"dgla", "gauge-bch-composition", 10, [=](Rng &rng) {
                       if (d != 2)
                           return std::optional<Json>{};
                       DglaOps<PolyVector> ops = polyvector_dgla(d);
                       const int n = 3;
                       Series<PolyVector> pi = Series<PolyVector>::zero(n, PolyVector(d, 2));
                       Series<PolyVector> xi = Series<PolyVector>::zero(n, PolyVector(d, 1));
                       Series<PolyVector> eta = Series<PolyVector>::zero(n, PolyVector(d, 1));
                       for (int k = 1; k <= n; ++k) {
                           pi.coeff(k) = rng.polyvector(d, 2, 1, 2);
                           xi.coeff(k) = rng.polyvector(d, 1, 1, 2);
                           eta.coeff(k) = rng.polyvector(d, 1, 1, 2);
                       }
                       Series<PolyVector> two = gauge_action(ops, eta, gauge_action(ops, xi, pi));
                       Series<PolyVector> one = gauge_action(ops, bch3(ops, xi, eta), pi);
                       if (two == one)
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"pi1", json_of(pi.coeff(1))}}};
                   }});
    return out;
}

inline std::vector<PropertyCheck> star_checks(const RunConfig &cfg)
{
    const int d = cfg.dim;
    std::vector<PropertyCheck> out;

    out.push_back({"star", "mc-equals-associativity-defect", 20, [=](Rng &rng) {
                       DglaOps<Cochain> ops = hochschild_dgla(d);
                       Series<Cochain> pi = Series<Cochain>::zero(3, Cochain(d, 2));
                       for (int k = 1; k <= 3; ++k)
                           pi.coeff(k) = rng.cochain(d, 2, 2, 2, 2);
                       StarProduct s(d, pi);
                       if (mc_defect(ops, mc_element_of(s)) == associativity_defect(s))
                           return std::optional<Json>{};
                       Json w = Json::array();
                       for (int k = 1; k <= 3; ++k)
                           w.push_back(json_of(pi.coeff(k)));
                       return std::optional<Json>{w};
                   }});
    out.push_back({"star", "equivalence-groupoid", 6, [=](Rng &rng) {
                       if (d != 2)
                           return std::optional<Json>{};
                       StarProduct moyal = moyal_weyl(canonical_theta_2d(), 3);
                       auto random_t = [&] {
                           Series<Cochain> t = Series<Cochain>::zero(3, Cochain(d, 1));
                           t.coeff(0) = identity_operator(d);
                           for (int k = 1; k <= 3; ++k)
                               t.coeff(k) = rng.cochain(d, 1, 1, 2, 1);
                           return EquivalenceSeries(d, t);
                       };
                       EquivalenceSeries t1 = random_t(), t2 = random_t();
                       StarProduct two = apply_equivalence(t2, apply_equivalence(t1, moyal));
                       StarProduct one = apply_equivalence(t2.compose(t1), moyal);
                       bool ok = two.pi == one.pi;
                       ok = ok && apply_equivalence(t1.inverse(), apply_equivalence(t1, moyal))
                                          .pi == moyal.pi;
                       if (ok)
                           return std::optional<Json>{};
                       return std::optional<Json>{Json{{"t1_1", json_of(t1.t.coeff(1))}}};
                   }});
    out.push_back({"star", "gauge-equivalence-bridge", 6, [=](Rng &rng) {
                       if (d != 2)
                           return std::optional<Json>{};
                       DglaOps<Cochain> ops = hochschild_dgla(d);
                       StarProduct moyal = moyal_weyl(canonical_theta_2d(), 3);
                       Series<Cochain> xi = Series<Cochain>::zero(3, Cochain(d, 1));
                       for (int k = 1; k <= 3; ++k)
                           xi.coeff(k) = rng.cochain(d, 1, 1, 2, 1);
                       Series<Cochain> moved = gauge_action(ops, xi, mc_element_of(moyal));
                       StarProduct pushed =
                           apply_equivalence(EquivalenceSeries::exp(d, -xi), moyal);
                       if (moved == pushed.pi)
                           return std::optional<Json>{};
                       return std::optional<Json>{json_of(xi.coeff(1))};
                   }});
    return out;
}

} // namespace checks

// ---------------------------------------------------------------------------

inline void run_star_specials(SuiteRunner &runner, const RunConfig &cfg)
{
    runner.run_once("star", "moyal-associativity", [&](CheckResult &res) {
        StarProduct s = moyal_weyl(cfg.theta, cfg.hbar_order);
        res.pass = associativity_defect(s).is_zero();
        std::ostringstream os;
        os << "dim " << cfg.dim << ", order " << cfg.hbar_order;
        res.detail = os.str();
    });
    runner.run_once("star", "moyal-associativity-4d", [&](CheckResult &res) {
        Rng rng(detail::instance_seed(cfg.seed, "moyal-associativity-4d", 0));
        ThetaMatrix theta(4, std::vector<Rational>(4, Rational(0)));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                theta[i][j] = rng.rational();
                theta[j][i] = -theta[i][j];
            }
        StarProduct s = moyal_weyl(theta, cfg.hbar_order);
        res.pass = associativity_defect(s).is_zero();
        res.detail = "random antisymmetric theta, order " + std::to_string(cfg.hbar_order);
    });
    runner.run_once("star", "weyl-commutator-expansion", [&](CheckResult &res) {
        // [a,b] = hbar {a,b} + hbar^3 V(a,b) mod hbar^5 on all monomial
        // pairs of total degree <= 8 for the canonical 2D bracket
        ThetaMatrix theta = canonical_theta_2d();
        StarProduct s = moyal_weyl(theta, 5);
        int pairs = 0;
        bool ok = true;
        std::vector<MultiIndex> monos = mi_enumerate(2, 1, 7);
        for (const MultiIndex &am : monos)
            for (const MultiIndex &bm : monos) {
                if (am.total() + bm.total() > 8)
                    continue;
                ++pairs;
                Poly a = Poly::monomial(am, Rational(1));
                Poly b = Poly::monomial(bm, Rational(1));
                Series<Poly> c = commutator_expansion(s, a, b);
                Poly raw_bracket(2);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        if (!theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                 .is_zero())
                            raw_bracket += (a.partial(i) * b.partial(j))
                                               .scaled(theta[static_cast<std::size_t>(i)]
                                                            [static_cast<std::size_t>(j)]);
                ok = ok && c.coeff(0).is_zero() && c.coeff(1) == raw_bracket &&
                     c.coeff(2).is_zero() && c.coeff(3) == vey_raw(theta, a, b) &&
                     c.coeff(4).is_zero();
            }
        // spot values: [x,y] = hbar and the hbar^3 part of [x^3,y^3] is 3/2
        Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
        Series<Poly> cxy = commutator_expansion(s, x, y);
        ok = ok && cxy.coeff(1) == Poly::constant(2, Rational(1));
        Series<Poly> c33 = commutator_expansion(s, x * x * x, y * y * y);
        ok = ok && c33.coeff(3) == Poly::constant(2, Rational(3, 2));
        res.pass = ok;
        res.detail = std::to_string(pairs) + " monomial pairs";
    });
    runner.run_once("star", "poisson-jacobi-examples", [&](CheckResult &res) {
        Series<PolyVector> pi1 = Series<PolyVector>::zero(3, PolyVector(2, 2));
        pi1.coeff(1) = theta_bivector(canonical_theta_2d());
        bool ok = jacobi_check(FormalPoisson(2, pi1)).is_zero();
        Series<PolyVector> pi2 = Series<PolyVector>::zero(3, PolyVector(2, 2));
        pi2.coeff(1) = PolyVector::term(Poly::variable(2, 0), {0, 1});
        ok = ok && jacobi_check(FormalPoisson(2, pi2)).is_zero();
        Series<PolyVector> pi3 = Series<PolyVector>::zero(3, PolyVector(3, 2));
        pi3.coeff(1) = PolyVector::term(Poly::variable(3, 1), {0, 1}) +
                       PolyVector::term(Poly::variable(3, 0), {1, 2});
        ok = ok && !jacobi_check(FormalPoisson(3, pi3)).is_zero();
        res.pass = ok;
        res.detail = "constant, 2d bivector, 3d counterexample";
    });
}

inline void run_obstruction_specials(SuiteRunner &runner, const RunConfig &cfg)
{
    ThetaMatrix theta = canonical_theta_2d();

    runner.run_once("obstruction", "vey-antisymmetric", [&](CheckResult &res) {
        bool ok = true;
        int pairs = 0;
        std::vector<MultiIndex> monos = mi_enumerate(2, 1, 8);
        for (const MultiIndex &am : monos)
            for (const MultiIndex &bm : monos) {
                if (am.total() + bm.total() > 9 || grlex_cmp(am, bm) > 0)
                    continue;
                ++pairs;
                Poly a = Poly::monomial(am, Rational(1)), b = Poly::monomial(bm, Rational(1));
                ok = ok && vey_raw(theta, a, b) == -vey_raw(theta, b, a);
            }
        res.pass = ok;
        res.detail = std::to_string(pairs) + " pairs, total degree <= 9";
    });
    runner.run_once("obstruction", "vey-general-vs-2d", [&](CheckResult &res) {
        bool ok = true;
        int pairs = 0;
        std::vector<MultiIndex> monos = mi_enumerate(2, 1, 7);
        for (const MultiIndex &am : monos)
            for (const MultiIndex &bm : monos) {
                if (am.total() + bm.total() > 8)
                    continue;
                ++pairs;
                Poly a = Poly::monomial(am, Rational(1)), b = Poly::monomial(bm, Rational(1));
                ok = ok && vey_raw(theta, a, b) == vey_2d(a, b);
            }
        res.pass = ok;
        res.detail = std::to_string(pairs) + " pairs, total degree <= 8";
    });
    runner.run_once("obstruction", "ce2-cocycle-vanishes", [&](CheckResult &res) {
        bool ok = true;
        int triples = 0;
        std::vector<MultiIndex> monos = mi_enumerate(2, 1, 7);
        for (std::size_t i = 0; i < monos.size(); ++i)
            for (std::size_t j = i; j < monos.size(); ++j)
                for (std::size_t k = j; k < monos.size(); ++k) {
                    if (monos[i].total() + monos[j].total() + monos[k].total() > 9)
                        continue;
                    ++triples;
                    ok = ok && ce2_cocycle_defect(theta, Poly::monomial(monos[i], Rational(1)),
                                                  Poly::monomial(monos[j], Rational(1)),
                                                  Poly::monomial(monos[k], Rational(1)))
                                   .is_zero();
                }
        res.pass = ok;
        res.detail = std::to_string(triples) + " triples, total degree <= 9";
    });
    runner.run_once("obstruction", "coboundary-system-infeasible", [&](CheckResult &res) {
        ObstructionSystem sys = build_coboundary_system(theta, cfg.obstruction);
        ObstructionCertificate cert = solve_or_certify(sys);
        res.pass = !cert.solvable && verify_infeasibility(sys, cert.combination);
        res.detail = std::to_string(sys.rows().size()) + " rows, " +
                     std::to_string(sys.columns()) + " unknowns";
        res.witness = Json{{"kind", "obstruction-certificate"},
                           {"theta", json_of(theta)},
                           {"certificate", json_of_certificate(sys, cert)}};
    });
    runner.run_once("obstruction", "negative-controls-solvable", [&](CheckResult &res) {
        res.pass = true;
        Json controls = Json::array();
        for (int trial = 0; trial < 5; ++trial) {
            Rng rng(detail::instance_seed(cfg.seed, "negative-controls-solvable", trial));
            LinearMapTable p0;
            for (const MultiIndex &m :
                 mi_enumerate(2, 1, cfg.obstruction.max_domain_degree)) {
                Poly v(2);
                for (int t = 0; t < 2; ++t) {
                    MultiIndex mi = rng.multi_index(2, 4);
                    if (!mi.is_zero())
                        v += Poly::monomial(mi, rng.rational());
                }
                p0.emplace(m, v);
            }
            ObstructionSystem sys = build_delta_system(theta, cfg.obstruction, p0);
            ObstructionCertificate cert = solve_or_certify(sys);
            bool ok = cert.solvable && verify_solution(sys, cert.solution) &&
                      verify_solution(sys, p0);
            res.pass = res.pass && ok;
            controls.push_back(Json{{"p0", json_of(p0)},
                                    {"status", cert.solvable ? "solvable" : "infeasible"},
                                    {"solution", cert.solvable ? json_of(cert.solution)
                                                               : Json()}});
        }
        res.detail = "5 random coboundaries";
        res.witness = Json{{"kind", "obstruction-controls"},
                           {"theta", json_of(theta)},
                           {"bounds", Json{{"D", cfg.obstruction.max_domain_degree},
                                           {"Dpairs", cfg.obstruction.max_pair_degree}}},
                           {"controls", controls}};
    });
    runner.run_once("obstruction", "contradiction-replay", [&](CheckResult &res) {
        ContradictionTranscript tr = reproduce_contradiction(theta, cfg.obstruction);
        res.pass = tr.failure.empty() && tr.reached_contradiction && tr.generic_infeasible &&
                   tr.raz_x_coeff == Rational(1, 2) && tr.dva_x_coeff == Rational(-3, 10);
        res.detail = "x-coefficient of P(x^3 y^2): " + tr.raz_x_coeff.str() + " vs " +
                     tr.dva_x_coeff.str();
        res.witness = Json{{"kind", "contradiction-transcript"}, {"transcript", json_of(tr)}};
    });
    runner.run_once("obstruction", "witness-monotonicity", [&](CheckResult &res) {
        ObstructionSystem sys = build_coboundary_system(theta, cfg.obstruction);
        ObstructionCertificate cert = solve_or_certify(sys);
        ObstructionBounds bigger = cfg.obstruction;
        bigger.max_domain_degree += 1;
        ObstructionSystem big = build_coboundary_system(theta, bigger);
        // map witness rows into the bigger system by provenance
        std::map<std::tuple<std::string, std::string, std::string>, int> index;
        auto key = [](const ObstructionRow &r) {
            return std::tuple{Poly::monomial(r.a, Rational(1)).str(),
                              Poly::monomial(r.b, Rational(1)).str(),
                              Poly::monomial(r.target, Rational(1)).str()};
        };
        for (int i = 0; i < static_cast<int>(big.rows().size()); ++i)
            index[key(big.rows()[static_cast<std::size_t>(i)])] = i;
        std::vector<std::pair<int, Rational>> embedded;
        bool ok = !cert.solvable;
        for (const auto &[ridx, lam] : cert.combination) {
            auto found = index.find(key(sys.rows()[static_cast<std::size_t>(ridx)]));
            if (found == index.end()) {
                ok = false;
                break;
            }
            embedded.emplace_back(found->second, lam);
        }
        ok = ok && verify_infeasibility(big, embedded);
        res.pass = ok;
        res.detail = "witness re-verified at domain degree " +
                     std::to_string(bigger.max_domain_degree);
    });
}

inline Report run_suite(const RunConfig &cfg)
{
    cfg.validate();
    SuiteRunner runner(cfg);

    if (cfg.wants("identities"))
        for (const PropertyCheck &c : checks::identities(cfg))
            runner.run(c);
    if (cfg.wants("calculus"))
        for (const PropertyCheck &c : checks::calculus(cfg))
            runner.run(c);
    if (cfg.wants("dgla"))
        for (const PropertyCheck &c : checks::dgla(cfg))
            runner.run(c);
    if (cfg.wants("star")) {
        for (const PropertyCheck &c : checks::star_checks(cfg))
            runner.run(c);
        run_star_specials(runner, cfg);
    }
    if (cfg.wants("obstruction"))
        run_obstruction_specials(runner, cfg);

    Report report;
    report.config = cfg;
    report.results = runner.take_results();
    return report;
}

// ---------------------------------------------------------------------------
// Witness re-verification for a serialized report.

inline bool verify_report_witnesses(const Json &report, std::string &why)
{
    RunConfig cfg = RunConfig::from_json(report.at("config"));
    cfg.validate();

    auto find_property = [&](const std::string &name) -> std::optional<PropertyCheck> {
        std::vector<PropertyCheck> all;
        for (const PropertyCheck &c : checks::identities(cfg))
            all.push_back(c);
        for (const PropertyCheck &c : checks::calculus(cfg))
            all.push_back(c);
        for (const PropertyCheck &c : checks::dgla(cfg))
            all.push_back(c);
        for (const PropertyCheck &c : checks::star_checks(cfg))
            all.push_back(c);
        for (const PropertyCheck &c : all)
            if (c.name == name)
                return c;
        return std::nullopt;
    };

    for (const Json &r : report.at("results")) {
        const Json &w = r.at("witness");
        if (w.is_null())
            continue;
        if (w.is_array()) {
            // property failures: replay each instance and expect the failure
            for (const Json &fail : w) {
                if (fail.value("kind", "") != "property")
                    continue;
                std::string check = fail.at("check").get<std::string>();
                int index = fail.at("index").get<int>();
                std::optional<PropertyCheck> pc = find_property(check);
                if (!pc.has_value()) {
                    why = "unknown property check '" + check + "'";
                    return false;
                }
                Rng rng(detail::instance_seed(cfg.seed, check, index));
                if (!pc->instance(rng).has_value()) {
                    why = "witness for '" + check + "' no longer reproduces a failure";
                    return false;
                }
            }
            continue;
        }
        std::string kind = w.value("kind", "");
        if (kind == "obstruction-certificate") {
            ThetaMatrix theta = theta_from_json(w.at("theta"));
            const Json &cert = w.at("certificate");
            ObstructionBounds bounds;
            bounds.max_domain_degree = cert.at("bounds").at("D").get<int>();
            bounds.max_pair_degree = cert.at("bounds").at("Dpairs").get<int>();
            ObstructionSystem sys = build_coboundary_system(theta, bounds);
            if (cert.at("status").get<std::string>() != "infeasible") {
                why = "obstruction certificate is not an infeasibility witness";
                return false;
            }
            // authenticate the serialized rows against rebuilt ones, then
            // re-check the combination
            std::map<std::tuple<std::string, std::string, std::string>, int> index;
            for (int i = 0; i < static_cast<int>(sys.rows().size()); ++i) {
                const ObstructionRow &row = sys.rows()[static_cast<std::size_t>(i)];
                index[{Poly::monomial(row.a, Rational(1)).str(),
                       Poly::monomial(row.b, Rational(1)).str(),
                       Poly::monomial(row.target, Rational(1)).str()}] = i;
            }
            std::vector<std::pair<int, Rational>> combination;
            const Json &rows = cert.at("witness").at("rows");
            const Json &lams = cert.at("witness").at("combination");
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Json &row = rows[i];
                auto found = index.find({row.at("pair")[0].get<std::string>(),
                                         row.at("pair")[1].get<std::string>(),
                                         row.at("target_monomial").get<std::string>()});
                if (found == index.end()) {
                    why = "witness row not present in the rebuilt system";
                    return false;
                }
                // the serialized coefficients must match the rebuilt row
                const ObstructionRow &rebuilt =
                    sys.rows()[static_cast<std::size_t>(found->second)];
                if (row.at("coeffs").size() != rebuilt.row.a.size() ||
                    Rational::parse(row.at("rhs").get<std::string>()) != rebuilt.row.rhs) {
                    why = "witness row differs from the rebuilt system";
                    return false;
                }
                for (const Json &entry : row.at("coeffs")) {
                    MultiIndex m =
                        Poly::parse(entry.at("m").get<std::string>(), sys.dim()).terms()[0].first;
                    MultiIndex t =
                        Poly::parse(entry.at("t").get<std::string>(), sys.dim()).terms()[0].first;
                    auto it = rebuilt.row.a.find(sys.column(m, t));
                    if (it == rebuilt.row.a.end() ||
                        it->second != Rational::parse(entry.at("c").get<std::string>())) {
                        why = "witness row coefficient differs from the rebuilt system";
                        return false;
                    }
                }
                combination.emplace_back(found->second,
                                         Rational::parse(lams[i].get<std::string>()));
            }
            if (!verify_infeasibility(sys, combination)) {
                why = "witness combination does not certify infeasibility";
                return false;
            }
            continue;
        }
        if (kind == "obstruction-controls") {
            ThetaMatrix theta = theta_from_json(w.at("theta"));
            ObstructionBounds bounds;
            bounds.max_domain_degree = w.at("bounds").at("D").get<int>();
            bounds.max_pair_degree = w.at("bounds").at("Dpairs").get<int>();
            for (const Json &control : w.at("controls")) {
                LinearMapTable p0 = table_from_json(control.at("p0"), 2);
                if (control.at("status").get<std::string>() != "solvable") {
                    why = "a negative control reports infeasible";
                    return false;
                }
                ObstructionSystem sys = build_delta_system(theta, bounds, p0);
                LinearMapTable sol = table_from_json(control.at("solution"), 2);
                if (!verify_solution(sys, sol) || !verify_solution(sys, p0)) {
                    why = "a negative-control solution fails re-verification";
                    return false;
                }
            }
            continue;
        }
        if (kind == "contradiction-transcript") {
            ObstructionBounds bounds;
            bounds.max_domain_degree =
                w.at("transcript").at("bounds").at("D").get<int>();
            bounds.max_pair_degree =
                w.at("transcript").at("bounds").at("Dpairs").get<int>();
            ContradictionTranscript tr =
                reproduce_contradiction(canonical_theta_2d(), bounds);
            if (json_of(tr) != w.at("transcript")) {
                why = "transcript does not reproduce";
                return false;
            }
            continue;
        }
        why = "unknown witness kind '" + kind + "'";
        return false;
    }
    return true;
}

} // namespace hochlab
