#pragma once

// JSON and CSV forms of engine values.  Rationals travel as reduced "p/q"
// strings; object keys keep insertion order so output is byte-stable.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "associated.hpp"
#include "binomial.hpp"
#include "check.hpp"
#include "families.hpp"
#include "ortho.hpp"

namespace umbral::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return q.get_str(); }

inline Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

inline Json to_json(const Series& s) { return Json{{"order", s.order()}, {"coeffs", to_json(s.coeffs())}}; }

inline Json to_json(const Recurrence& r) {
  // b_0 is a placeholder and is written as 0
  return Json{{"a", to_json(r.a)}, {"b", to_json(r.b)}};
}

inline Json to_json(const Poly& p) {
  Json out = Json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back(to_json(p[k]));
  return out;
}

inline Json to_json(const Report& rep) {
  Json out = Json::array();
  for (const Check& c : rep.checks()) out.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return out;
}

inline Json params_json(const std::map<std::string, Rational>& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = to_json(v);
  return out;
}

// p_0..p_n, n limited by the recurrence length.
inline std::vector<Poly> family_polys(const Recurrence& rec, int N) {
  const int n = std::min(N, rec.size());
  if (n <= 0) return {Poly::constant(1)};
  return polys_from_recurrence(rec, n).p;
}

inline Json family_json(const FamilyResult& f, const std::map<std::string, Rational>& params) {
  Json out;
  out["family"] = f.name;
  out["params"] = params_json(params);
  out["order"] = f.N;
  out["recurrence"] = f.rec.size() > 0 ? to_json(f.rec) : Json(nullptr);
  out["f0"] = to_json(f.f0);
  Json polys = Json::array();
  for (const Poly& p : family_polys(f.rec, f.N)) polys.push_back(to_json(p));
  out["polys"] = polys;
  Json norms = Json::array();
  for (int n = 0; n < f.rec.size(); ++n) norms.push_back(to_json(f.rec.norm(n)));
  out["norms"] = norms;
  out["checks"] = to_json(f.checks);
  return out;
}

inline Json assoc_json(const AssocResult& r, const std::map<std::string, Rational>& params,
                       const std::optional<Pipelines>& pl) {
  Json out = family_json(r, params);
  out["c"] = to_json(r.c);
  if (pl) {
    Json p;
    // all three at the order where they are compared
    const int k = pl->order;
    p["explicit"] = to_json(pl->explicit_mgf.truncated(k));
    p["tails"] = to_json(pl->tails_mgf.truncated(k));
    p["recurrence"] = to_json(pl->recurrence_mgf.truncated(k));
    p["hypergeometric"] = pl->formula_mgf ? to_json(pl->formula_mgf->truncated(k)) : Json(nullptr);
    p["order"] = pl->order;
    out["pipelines"] = p;
    for (const Check& c : pl->checks.checks())
      out["checks"].push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  }
  return out;
}

inline Json asym_json(const AsymReport& a) {
  Json out;
  out["instance"] = a.instance;
  out["alpha"] = to_json(a.alpha);
  out["level"] = a.level;
  out["digits"] = a.digits;
  Json rows = Json::array();
  for (const AsymRow& r : a.rows)
    rows.push_back(Json{{"s", r.s},
                        {"exact", decimal_string(r.exact)},
                        {"approx", decimal_string(r.approx)},
                        {"residual", decimal_string(r.residual)}});
  out["rows"] = rows;
  out["order_estimate"] = a.order_estimate ? Json(*a.order_estimate) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Input.

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer");
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

// {"order": n, "coeffs": [...]} or a bare coefficient array.
inline Series series_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<Rational> c = rationals_from_json(j);
    const int order = static_cast<int>(c.size()) - 1;
    return Series(std::move(c), std::max(order, 0));
  }
  if (!j.is_object() || !j.contains("coeffs")) throw std::invalid_argument("series needs \"coeffs\"");
  std::vector<Rational> c = rationals_from_json(j.at("coeffs"));
  const int order = j.contains("order") ? j.at("order").get<int>() : static_cast<int>(c.size()) - 1;
  if (order < 0 || order + 1 < static_cast<int>(c.size())) throw std::invalid_argument("series order inconsistent");
  return Series(std::move(c), order);
}

inline Recurrence recurrence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw std::invalid_argument("recurrence needs \"a\" and \"b\"");
  std::vector<Rational> a = rationals_from_json(j.at("a")), b = rationals_from_json(j.at("b"));
  if (a.size() != b.size()) throw std::invalid_argument("recurrence arrays differ in length");
  return Recurrence(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// CSV: one-dimensional data only.

inline void csv_sequence(std::ostream& os, const std::string& kind, const std::vector<Rational>& v) {
  for (std::size_t k = 0; k < v.size(); ++k) os << kind << ',' << k << ',' << v[k].get_str() << '\n';
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline void csv_checks(std::ostream& os, const Report& rep) {
  os << "name,pass,witness\n";
  for (const Check& c : rep.checks())
    os << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_field(c.witness) << '\n';
}

}  // namespace umbral::io
