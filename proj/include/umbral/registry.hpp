#pragma once

// Families by name: key=value parameter maps, defaults, and builders shared
// by the command-line tool and the verification suites.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "associated.hpp"
#include "families.hpp"
#include "rational.hpp"

namespace umbral {

using ParamMap = std::map<std::string, Rational>;

// "lambda=1,a=1/2" -> {lambda: 1, a: 1/2}
inline ParamMap parse_params(const std::string& text) {
  ParamMap out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    pos = end + 1;
  }
  return out;
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"sheffer", "ultraspherical", "hahn", "jacobi", "wilson", "multiterm"};
  return names;
}

inline ParamMap family_defaults(const std::string& name) {
  if (name == "sheffer") return {{"lambda", 1}, {"a", 1}, {"b", 1}};
  if (name == "ultraspherical") return {{"lambda", 1}, {"a", 0}, {"b", 1}};
  if (name == "hahn") return {{"lambda", 2}, {"a", rational(1, 2)}, {"s", rational(5, 2)}};
  if (name == "jacobi") return {{"lambda", 2}, {"a", rational(1, 2)}, {"r", rational(1, 2)}};
  if (name == "wilson")
    return {{"lambda", 2}, {"a", rational(1, 3)}, {"r", rational(1, 2)}, {"rt", rational(1, 5)}, {"h", rational(1, 4)}};
  if (name == "multiterm")
    return {{"n", 3}, {"lambda", 1}, {"a", 1}, {"t0", rational(1, 3)}, {"t1", rational(1, 3)}, {"t2", rational(1, 3)}};
  throw std::invalid_argument("unknown family '" + name + "'");
}

// Overrides on top of the defaults; unknown keys are rejected.
inline ParamMap merge_params(const std::string& name, const ParamMap& given) {
  ParamMap p = family_defaults(name);
  std::set<std::string> allowed;
  for (const auto& [k, v] : p) allowed.insert(k);
  if (name == "multiterm") {
    p.erase("t0");
    p.erase("t1");
    p.erase("t2");
    for (int k = 0; k < 16; ++k) allowed.insert("t" + std::to_string(k));
    allowed.insert("ttop");
    if (!given.count("t0")) {  // equal weights for the chosen n
      const auto it = given.find("n");
      const Rational n = it == given.end() ? Rational(3) : it->second;
      if (!is_integer(n) || n < 1 || n > 15) throw std::invalid_argument("multiterm n must be an integer in 1..15");
      for (int k = 0; k < n.get_num().get_si(); ++k) p["t" + std::to_string(k)] = 1 / n;
    }
  }
  for (const auto& [k, v] : given) {
    if (!allowed.count(k)) throw std::invalid_argument("unknown parameter '" + k + "' for " + name);
    p[k] = v;
  }
  return p;
}

inline ShefferParams to_sheffer(const ParamMap& p) { return {p.at("lambda"), p.at("a"), p.at("b")}; }
inline HahnParams to_hahn(const ParamMap& p) { return {p.at("lambda"), p.at("a"), p.at("s")}; }

inline JacobiParams to_jacobi(const ParamMap& p) {
  const Rational l = p.at("lambda");
  if (sgn(l) == 0) throw Error(ErrorKind::SingularParams, "lambda=0 invalid: kappa undefined");
  if (l == -2) throw Error(ErrorKind::SingularParams, "lambda=-2 invalid: kappa undefined");
  return {l, p.at("a"), p.at("r")};
}

inline WilsonParams to_wilson(const ParamMap& p) { return {to_jacobi(p), p.at("rt"), p.at("h")}; }

inline MultitermParams to_multiterm(const ParamMap& p) {
  const Rational n = p.at("n");
  if (!is_integer(n) || n < 1) throw std::invalid_argument("multiterm n must be a positive integer");
  MultitermParams m;
  m.n = static_cast<int>(n.get_num().get_si());
  m.lambda = p.at("lambda");
  m.a = p.at("a");
  for (int k = 0; k < m.n; ++k) {
    const auto it = p.find("t" + std::to_string(k));
    if (it == p.end()) throw std::invalid_argument("multiterm needs weights t0..t" + std::to_string(m.n - 1));
    m.t.push_back(it->second);
  }
  if (p.count("ttop")) m.t_top = p.at("ttop");
  return m;
}

inline FamilyResult build_family(const std::string& name, const ParamMap& given, int N) {
  const ParamMap p = merge_params(name, given);
  if (name == "sheffer") return sheffer_family(to_sheffer(p), N);
  if (name == "ultraspherical") return ultraspherical_family(to_sheffer(p), N);
  if (name == "hahn") return hahn_family(to_hahn(p), N);
  if (name == "jacobi") return jacobi_family(to_jacobi(p), N);
  if (name == "wilson") return wilson_family(to_wilson(p), N);
  return multiterm_family(to_multiterm(p), N);
}

inline const std::vector<std::string>& assoc_names() {
  static const std::vector<std::string> names{"sheffer", "ultraspherical", "jacobi", "wilson"};
  return names;
}

inline AssocResult build_assoc(const std::string& name, const ParamMap& given, const Rational& c, int N) {
  if (name == "hahn" || name == "multiterm") throw std::invalid_argument("no associated construction for " + name);
  const ParamMap p = merge_params(name, given);
  if (name == "sheffer") return sheffer_assoc(to_sheffer(p), c, N);
  if (name == "ultraspherical") return ultra_assoc(to_sheffer(p), c, N);
  if (name == "jacobi") return jacobi_assoc(to_jacobi(p), c, N);
  return wilson_assoc(to_wilson(p), c, N);
}

// The c = 0 recurrence with at least `count` terms, for continued-fraction tails.
inline Recurrence base_recurrence(const std::string& name, const ParamMap& given, int count) {
  const FamilyResult small = build_family(name, given, 4);
  if (small.closed) return small.closed->evaluate(count);
  const FamilyResult f = build_family(name, given, count + 1);
  if (f.rec.size() < count) throw Error(ErrorKind::NotThreeTerm, name + " has no three-term recurrence");
  return f.rec;
}

}  // namespace umbral
