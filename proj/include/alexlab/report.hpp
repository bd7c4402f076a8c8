#pragma once

// Machine-readable documents (JSON). Polynomials serialize as
// {"nvars": n, "text": "...", "terms": [{"e": [...], "c": ...}, ...]} with
// terms in lexicographic exponent order after canonical normalization.
// Integers that do not fit in 64 bits are emitted as decimal strings;
// rationals are always strings ("1/2").

#include <cstddef>
#include <string>
#include <vector>

#include "alexlab/alexinv.hpp"
#include "alexlab/cyclotomic.hpp"
#include "alexlab/fpgroup.hpp"
#include "alexlab/laurent.hpp"
#include "alexlab/norms.hpp"
#include "alexlab/obstruct.hpp"
#include "alexlab/torusgeo.hpp"
#include "json.hpp"

namespace alexlab {

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ParseError("expected an integer");
}

inline Json to_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return Json(c.get_str());
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

// Canonical form applied before serialization.
inline Json poly_to_json(const LaurentPoly& raw) {
  LaurentPoly p = raw.canonical();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["e"] = e;
    t["c"] = to_json(c);
    terms.push_back(std::move(t));
  }
  Json j;
  j["nvars"] = p.nvars();
  j["text"] = to_string(p);
  j["terms"] = std::move(terms);
  return j;
}

inline LaurentPoly poly_from_json(const Json& j) {
  LaurentPoly p(j.at("nvars").get<std::size_t>());
  for (const auto& t : j.at("terms")) p.add_term(t.at("e").get<Exponent>(), integer_from_json(t.at("c")));
  return p;
}

inline Json to_json(const AbelianizationData& ab, const GroupPresentation& p) {
  Json j;
  j["b1"] = ab.b1;
  j["torsion"] = to_json(ab.torsion);
  Json images = Json::array();
  for (std::size_t g = 0; g < ab.images.size(); ++g)
    images.push_back(Json{{"gen", p.generators.at(g)}, {"image", ab.images[g]}});
  j["images"] = std::move(images);
  return j;
}

inline Json to_json(const CyclotomicDecomposition& d) {
  Json j;
  j["content"] = to_json(d.content);
  Json f = Json::array();
  for (const auto& [idx, mult] : d.factors) f.push_back(Json{{"d", idx}, {"mult", mult}});
  j["factors"] = std::move(f);
  j["remainder"] = poly_to_json(d.remainder);
  j["fully_cyclotomic"] = d.fully_cyclotomic();
  return j;
}

inline Json to_json(const OrderFinding& f) {
  Json j;
  j["k"] = f.k;
  j["delta"] = poly_to_json(f.delta);
  j["newton_dim"] = f.newton_dim ? Json(*f.newton_dim) : Json(nullptr);
  if (f.line) {
    j["direction"] = f.line->direction;
    j["univariate"] = poly_to_json(f.line->poly);
  } else {
    j["direction"] = nullptr;
    j["univariate"] = nullptr;
  }
  j["cyclotomic"] = f.cyclotomic ? to_json(*f.cyclotomic) : Json(nullptr);
  j["cyclotomic_verdict"] = f.cyclotomic_verdict;
  return j;
}

inline Json to_json(const ObstructionReport& r) {
  Json j;
  j["test"] = r.test;
  j["b1"] = r.b1;
  j["k0"] = r.k0;
  j["kmax"] = r.kmax;
  Json per = Json::array();
  for (const auto& f : r.per_k) per.push_back(to_json(f));
  j["per_k"] = std::move(per);
  j["thickness"] = r.thickness;
  j["verdict"] = to_string(r.verdict);
  j["witnesses"] = r.witnesses;
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const ConnectedSumReport& r) {
  Json j;
  Json factors = Json::array();
  for (std::size_t i = 0; i < r.factor_orders.size(); ++i)
    factors.push_back(Json{{"k0", r.factor_orders[i].k0},
                           {"delta", poly_to_json(r.factor_orders[i].delta)},
                           {"thickness", r.factor_thickness[i]}});
  j["factors"] = std::move(factors);
  j["thickness_sum"] = r.thickness_sum;
  j["product"] = Json{{"k0", r.product_order.k0},
                      {"delta", poly_to_json(r.product_order.delta)},
                      {"thickness", r.product_thickness}};
  j["additive"] = r.additive;
  j["factor_product"] = poly_to_json(r.factor_product);
  j["divisible"] = r.divisible;
  j["qp"] = to_json(r.qp);
  return j;
}

inline Json to_json(const NormBall& b) {
  Json v = Json::array();
  for (const auto& x : b.vertices) v.push_back(to_json(x));
  return Json{{"role", to_string(b.role)}, {"vertices", std::move(v)}};
}

inline Json to_json(const McMullenReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"phi", to_json(e.datum.phi)},
                           {"alexander", to_json(e.alexander)},
                           {"thurston", to_json(e.datum.thurston)},
                           {"fibered", e.datum.fibered},
                           {"result", e.pass ? "PASS" : "FAIL"},
                           {"reason", e.reason}});
  return Json{{"entries", std::move(entries)}, {"all_pass", r.all_pass()}};
}

inline Json to_json(const TranslatedTorus& t) {
  Json rows = Json::array();
  const auto& b = t.equations().basis();
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(to_json(b.row(i)));
  return Json{{"n", t.ambient()}, {"rows", std::move(rows)}, {"q", to_json(t.translate())}, {"dim", t.dim()}};
}

inline Json to_json(const IntersectionReport& r) {
  return Json{{"meets", r.meets}, {"dim", r.meets ? Json(r.dim) : Json(nullptr)}, {"parallel", r.parallel}};
}

inline Json presentation_to_json(const GroupPresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relators) rels.push_back(serialize_word(p, r));
  return Json{{"generators", p.generators}, {"relators", std::move(rels)},
              {"fp", serialize_presentation(p)}, {"warnings", p.warnings}};
}

}  // namespace alexlab
