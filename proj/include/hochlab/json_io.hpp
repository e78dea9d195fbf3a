#pragma once

// JSON forms for values, certificates and transcripts. Keys are emitted in
// a fixed order (nlohmann ordered_json) so identical runs serialize to
// identical bytes.

#include "hochlab/chain.hpp"
#include "hochlab/cochain.hpp"
#include "hochlab/obstruction.hpp"
#include "hochlab/polyvec.hpp"
#include "hochlab/star.hpp"

#include <json.hpp>

#include <string>

namespace hochlab {

using Json = nlohmann::ordered_json;

inline Json json_of(const MultiIndex &m)
{
    Json a = Json::array();
    for (int e : m.e)
        a.push_back(e);
    return a;
}

inline MultiIndex multi_index_from_json(const Json &j)
{
    MultiIndex m(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        m.e[i] = j[i].get<int>();
    return m;
}

inline Json json_of(const Cochain &c)
{
    Json terms = Json::array();
    for (const auto &[w, poly] : c.terms()) {
        Json words = Json::array();
        for (const MultiIndex &m : w)
            words.push_back(json_of(m));
        terms.push_back(Json{{"coeff", poly.str()}, {"words", words}});
    }
    return Json{{"arity", c.arity()}, {"terms", terms}};
}

inline Cochain cochain_from_json(const Json &j, int dim)
{
    Cochain c(dim, j.at("arity").get<int>());
    for (const Json &t : j.at("terms")) {
        Word w;
        for (const Json &wm : t.at("words"))
            w.push_back(multi_index_from_json(wm));
        c += Cochain::term(Poly::parse(t.at("coeff").get<std::string>(), dim), w);
    }
    return c;
}

inline Json json_of(const Chain &c)
{
    Json terms = Json::array();
    for (const auto &[tup, wt] : c.terms()) {
        Json tuple = Json::array();
        for (const MultiIndex &m : tup)
            tuple.push_back(Poly::monomial(m, Rational(1)).str());
        terms.push_back(Json{{"weight", wt.str()}, {"tuple", tuple}});
    }
    int arity = c.is_zero() ? -1 : static_cast<int>(c.terms()[0].first.size()) - 1;
    return Json{{"arity", arity}, {"terms", terms}};
}

inline Chain chain_from_json(const Json &j, int dim)
{
    Chain c(dim);
    for (const Json &t : j.at("terms")) {
        std::vector<Poly> tuple;
        for (const Json &p : t.at("tuple"))
            tuple.push_back(Poly::parse(p.get<std::string>(), dim));
        c += Chain::of(tuple, Rational::parse(t.at("weight").get<std::string>()));
    }
    return c;
}

template <class Tag>
Json json_of_graded(const detail::Graded<Tag> &g)
{
    Json terms = Json::array();
    for (const auto &[axes, poly] : g.terms()) {
        Json ax = Json::array();
        for (int a : axes)
            ax.push_back(a + 1);
        terms.push_back(Json{{"coeff", poly.str()}, {"axes", ax}});
    }
    return Json{{"degree", g.degree()}, {"terms", terms}};
}

inline Json json_of(const PolyVector &v) { return json_of_graded(v); }
inline Json json_of(const ExtForm &w) { return json_of_graded(w); }

inline Json json_of(const ThetaMatrix &theta)
{
    Json rows = Json::array();
    for (const auto &row : theta) {
        Json r = Json::array();
        for (const Rational &v : row)
            r.push_back(v.str());
        rows.push_back(r);
    }
    return rows;
}

inline ThetaMatrix theta_from_json(const Json &j)
{
    ThetaMatrix theta;
    for (const Json &row : j) {
        std::vector<Rational> r;
        for (const Json &v : row)
            r.push_back(Rational::parse(v.get<std::string>()));
        theta.push_back(std::move(r));
    }
    check_antisymmetric(theta);
    return theta;
}

// Star products as a list of per-order bidifferential cochains.
inline Json json_of(const StarProduct &s)
{
    Json orders = Json::array();
    for (int k = 0; k <= s.order(); ++k)
        orders.push_back(json_of(s.pi.coeff(k)));
    return Json{{"dim", s.dim}, {"order", s.order()}, {"pi", orders}};
}

inline StarProduct star_from_json(const Json &j)
{
    int dim = j.at("dim").get<int>();
    int order = j.at("order").get<int>();
    Series<Cochain> pi = Series<Cochain>::zero(order, Cochain(dim, 2));
    for (int k = 0; k <= order; ++k)
        pi.coeff(k) = cochain_from_json(j.at("pi")[static_cast<std::size_t>(k)], dim);
    return StarProduct(dim, pi);
}

inline Json json_of(const LinearMapTable &table)
{
    Json out = Json::object();
    for (const auto &[m, value] : table)
        out[Poly::monomial(m, Rational(1)).str()] = value.str();
    return out;
}

inline LinearMapTable table_from_json(const Json &j, int dim)
{
    LinearMapTable table;
    for (const auto &[key, value] : j.items())
        table.emplace(Poly::parse(key, dim).terms().at(0).first,
                      Poly::parse(value.get<std::string>(), dim));
    return table;
}

// Certificate schema:
//   {status, bounds: {D, Dpairs},
//    witness: {rows: [{pair: [a, b], target_monomial, coeffs: [{m, t, c}...], rhs}],
//              combination: [rationals]}}                      (infeasible)
//   {status, bounds, witness: {table: {...}}}                  (solvable)
inline Json json_of_certificate(const ObstructionSystem &sys, const ObstructionCertificate &cert)
{
    Json out;
    out["status"] = cert.solvable ? "solvable" : "infeasible";
    out["bounds"] = Json{{"D", sys.bounds().max_domain_degree},
                         {"Dpairs", sys.bounds().max_pair_degree}};
    if (cert.solvable) {
        out["witness"] = Json{{"table", json_of(cert.solution)}};
        return out;
    }
    Json rows = Json::array();
    Json combination = Json::array();
    for (const auto &[ridx, lam] : cert.combination) {
        const ObstructionRow &r = sys.rows().at(static_cast<std::size_t>(ridx));
        Json coeffs = Json::array();
        for (const auto &[col, v] : r.row.a) {
            auto [m, t] = sys.unknown_of(col);
            coeffs.push_back(Json{{"m", Poly::monomial(m, Rational(1)).str()},
                                  {"t", Poly::monomial(t, Rational(1)).str()},
                                  {"c", v.str()}});
        }
        rows.push_back(Json{{"pair", Json::array({Poly::monomial(r.a, Rational(1)).str(),
                                                  Poly::monomial(r.b, Rational(1)).str()})},
                            {"target_monomial", Poly::monomial(r.target, Rational(1)).str()},
                            {"coeffs", coeffs},
                            {"rhs", r.row.rhs.str()}});
        combination.push_back(lam.str());
    }
    out["witness"] = Json{{"rows", rows}, {"combination", combination}};
    return out;
}

inline Json json_of(const ContradictionTranscript &tr)
{
    Json steps = Json::array();
    for (const ReplayStep &s : tr.steps) {
        Json constraints = Json::array();
        for (const std::string &c : s.constraints)
            constraints.push_back(c);
        steps.push_back(Json{{"name", s.name},
                             {"description", s.description},
                             {"constraints", constraints},
                             {"verified", s.verified}});
    }
    return Json{{"bounds", Json{{"D", tr.bounds.max_domain_degree},
                                {"Dpairs", tr.bounds.max_pair_degree}}},
                {"steps", steps},
                {"raz_x_coeff", tr.raz_x_coeff.str()},
                {"dva_x_coeff", tr.dva_x_coeff.str()},
                {"contradiction", tr.reached_contradiction},
                {"generic_infeasible", tr.generic_infeasible},
                {"failure", tr.failure}};
}

} // namespace hochlab
