// Command-line surface: family data, verification suites, continued-fraction
// conversions, associated families and the asymptotic residual table.
//
// Exit codes: 0 pass, 1 identity failure or degenerate continued fraction,
// 2 usage or parameter error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umbral/io.hpp"
#include "umbral/registry.hpp"
#include "umbral/suites.hpp"

namespace {

using umbral::Rational;
using umbral::io::Json;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Config {
  int order = 16;
  std::uint64_t seed = 0;
  int samples = 5;
  bool samples_given = false;
  std::string params;
  std::string c = "0";
  std::string format = "json";
  unsigned digits = 60;
  std::string out;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void json(const Json& j) { stream() << j.dump(2) << '\n'; }

 private:
  std::ofstream file_;
};

umbral::ParamMap given_params(const Config& cfg) {
  return cfg.params.empty() ? umbral::ParamMap{} : umbral::parse_params(cfg.params);
}

Json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

void report_failure(const umbral::Report& rep) {
  if (const auto f = rep.first_failure()) std::cerr << "FAIL " << f->name << ": " << f->witness << '\n';
}

// ---------------------------------------------------------------------------

int cmd_family(const std::string& name, const Config& cfg) {
  const umbral::ParamMap given = given_params(cfg);
  const umbral::ParamMap p = umbral::merge_params(name, given);
  Output out(cfg.out);
  Json j;
  umbral::Report checks;
  // integer s within the working order only has the closed f0 path
  const bool hahn_formula = name == "hahn" && umbral::is_integer(p.at("s")) && p.at("s") >= 1 &&
                            p.at("lambda") == 2 && p.at("a") == umbral::rational(1, 2);
  if (hahn_formula) {
    const umbral::Series f0 = umbral::hahn_legendre_moments(p.at("s"), cfg.order);
    const umbral::CfResult cf = umbral::continued_fraction(umbral::ogf_from_egf(f0));
    j["family"] = name;
    j["params"] = umbral::io::params_json(p);
    j["order"] = cfg.order;
    j["path"] = "closed moment series";
    j["recurrence"] = umbral::io::to_json(cf.rec);
    j["degenerate_at"] = cf.degenerate_depth >= 0 ? Json(cf.degenerate_depth) : Json(nullptr);
    j["f0"] = umbral::io::to_json(f0);
    Json polys = Json::array();
    for (const auto& q : umbral::io::family_polys(cf.rec, cfg.order)) polys.push_back(umbral::io::to_json(q));
    j["polys"] = polys;
    j["checks"] = Json::array();
    if (cfg.format == "csv") {
      umbral::io::csv_sequence(out.stream(), "f0", f0.coeffs());
      umbral::io::csv_sequence(out.stream(), "a", cf.rec.a);
      umbral::io::csv_sequence(out.stream(), "b", cf.rec.b);
    } else {
      out.json(j);
    }
    return kPass;
  }
  const umbral::FamilyResult f = umbral::build_family(name, given, cfg.order);
  if (cfg.format == "csv") {
    umbral::io::csv_sequence(out.stream(), "f0", f.f0.coeffs());
    umbral::io::csv_sequence(out.stream(), "a", f.rec.a);
    umbral::io::csv_sequence(out.stream(), "b", f.rec.b);
    std::vector<Rational> norms;
    for (int n = 0; n < f.rec.size(); ++n) norms.push_back(f.rec.norm(n));
    umbral::io::csv_sequence(out.stream(), "norm", norms);
  } else {
    out.json(umbral::io::family_json(f, p));
  }
  report_failure(f.checks);
  return f.checks.all_pass() ? kPass : kFail;
}

int cmd_verify(const std::string& suite, const Config& cfg) {
  umbral::SuiteConfig sc;
  sc.N = cfg.order;
  sc.seed = cfg.seed;
  if (cfg.samples_given) sc.samples = cfg.samples;
  if (!cfg.params.empty()) sc.params = given_params(cfg);
  const umbral::Report rep = umbral::run_suite(suite, sc);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    umbral::io::csv_checks(out.stream(), rep);
  } else {
    Json j;
    j["suite"] = suite;
    j["order"] = cfg.order;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples_given ? Json(cfg.samples) : Json(nullptr);
    j["pass"] = rep.all_pass();
    j["total"] = rep.checks().size();
    if (const auto f = rep.first_failure())
      j["first_failure"] = Json{{"name", f->name}, {"witness", f->witness}};
    j["checks"] = umbral::io::to_json(rep);
    out.json(j);
  }
  report_failure(rep);
  return rep.all_pass() ? kPass : kFail;
}

int cmd_cfrac(const std::string& direction, const std::string& input, bool roundtrip, const Config& cfg) {
  const Json in = read_json(input);
  Output out(cfg.out);
  Json j;
  int code = kPass;
  umbral::Recurrence rec;
  umbral::Series F0;
  bool have_rec = false;
  if (direction == "moments2rec") {
    F0 = umbral::io::series_from_json(in);
    const umbral::CfResult cf = umbral::continued_fraction(F0);
    rec = cf.rec;
    have_rec = true;
    j["recurrence"] = umbral::io::to_json(rec);
    j["depth"] = rec.size();
    if (cf.degenerate_depth >= 0) {
      j["degenerate_at"] = cf.degenerate_depth;
      const std::string d = std::to_string(cf.degenerate_depth);
      std::cerr << "DegenerateB: b_" << d << " = 0 at depth " << d << '\n';
      code = kFail;
    }
    if (roundtrip && code == kPass) {
      const int order = std::min(F0.order(), 2 * rec.size() - 2);
      const umbral::Series back = umbral::moments_from_recurrence(rec, order).F0;
      const bool same = !umbral::first_mismatch(back, F0, order);
      j["roundtrip"] = Json{{"order", order}, {"identical", same}};
      if (!same) code = kFail;
    }
  } else if (direction == "rec2moments") {
    rec = umbral::io::recurrence_from_json(in);
    if (rec.size() < 1) throw std::invalid_argument("empty recurrence");
    const int order = std::max(0, std::min(cfg.order, 2 * rec.size() - 2));
    const umbral::MomentSeries m = umbral::moments_from_recurrence(rec, order);
    j["F0"] = umbral::io::to_json(m.F0);
    j["f0"] = umbral::io::to_json(m.f0);
    if (roundtrip) {
      const umbral::CfResult cf = umbral::continued_fraction(m.F0);
      const int depth = std::min(cf.rec.size(), rec.size());
      const int want = order / 2;  // levels fixed by the moments
      const bool same = cf.degenerate_depth < 0 && depth >= want &&
                        cf.rec.truncated(want) == rec.truncated(want);
      j["roundtrip"] = Json{{"depth", want}, {"identical", same}};
      if (!same) code = kFail;
    }
    F0 = m.F0;
  } else {
    throw std::invalid_argument("direction must be moments2rec or rec2moments");
  }
  if (cfg.format == "csv") {
    if (have_rec) {
      umbral::io::csv_sequence(out.stream(), "a", rec.a);
      umbral::io::csv_sequence(out.stream(), "b", rec.b);
    } else {
      umbral::io::csv_sequence(out.stream(), "F0", F0.coeffs());
    }
  } else {
    out.json(j);
  }
  return code;
}

int cmd_assoc(const std::string& name, const Config& cfg) {
  const umbral::ParamMap given = given_params(cfg);
  const umbral::ParamMap p = umbral::merge_params(name, given);
  const Rational c = umbral::parse_rational(cfg.c);
  Output out(cfg.out);
  const umbral::AssocResult r = umbral::build_assoc(name, given, c, cfg.order);
  umbral::Report all = r.checks;
  std::optional<umbral::Pipelines> pl;
  Json j;
  if (sgn(c) == 0) {
    const umbral::FamilyResult base = umbral::build_family(name, given, cfg.order);
    all.operators("c = 0 reproduces the base family", r.G, base.G, cfg.order);
    const bool same = all.all_pass();
    j = umbral::io::assoc_json(r, p, std::nullopt);
    j["reduction"] = same ? "identical to base" : "differs from base";
  } else {
    if (umbral::is_integer(c) && c > 0) {
      const int n = static_cast<int>(c.get_num().get_si());
      pl = umbral::pipeline_triangle(r, umbral::base_recurrence(name, given, cfg.order + 2 * n + 4));
      all.merge(pl->checks);
    }
    j = umbral::io::assoc_json(r, p, pl);
  }
  if (cfg.format == "csv") {
    if (pl) {
      std::ostream& os = out.stream();
      os << "k,explicit,tails,recurrence" << (pl->formula_mgf ? ",hypergeometric" : "") << '\n';
      for (int k = 0; k <= pl->order; ++k) {
        os << k << ',' << pl->explicit_mgf[k].get_str() << ',' << pl->tails_mgf[k].get_str() << ','
           << pl->recurrence_mgf[k].get_str();
        if (pl->formula_mgf) os << ',' << (*pl->formula_mgf)[k].get_str();
        os << '\n';
      }
    } else {
      umbral::io::csv_sequence(out.stream(), "f0", r.f0.coeffs());
      umbral::io::csv_sequence(out.stream(), "a", r.rec.a);
      umbral::io::csv_sequence(out.stream(), "b", r.rec.b);
    }
  } else {
    out.json(j);
  }
  if (sgn(c) == 0 && all.all_pass()) std::cerr << "identical to base\n";
  report_failure(all);
  return all.all_pass() ? kPass : kFail;
}

int cmd_asym(const std::string& instance, const std::string& alpha, const std::string& s_list, int level,
             const Config& cfg) {
  const auto in = umbral::instances::by_name(instance);
  if (!in) throw std::invalid_argument("unknown instance '" + instance + "' (falling-factorial, lah)");
  std::vector<int> s;
  std::stringstream ss(s_list);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("s must be a comma-separated integer list");
    s.push_back(v);
  }
  const umbral::AsymReport a = umbral::asym_compare(*in, umbral::parse_rational(alpha), s, level, cfg.digits);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    out.stream() << "s,exact,approx,residual\n";
    for (const auto& r : a.rows)
      out.stream() << r.s << ',' << umbral::decimal_string(r.exact) << ',' << umbral::decimal_string(r.approx) << ','
                   << umbral::decimal_string(r.residual) << '\n';
  } else {
    out.json(umbral::io::asym_json(a));
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Umbral orthogonal polynomial toolkit"};
  app.require_subcommand(1);
  Config cfg;
  int env_order = 16;
  if (const char* e = std::getenv("UMBRAL_ORDER")) {
    try {
      env_order = std::stoi(e);
    } catch (const std::exception&) {
      std::cerr << "UMBRAL_ORDER must be an integer\n";
      return kUsage;
    }
  }
  cfg.order = env_order;

  app.add_option("--order", cfg.order, "truncation order N (>= 4)")->check(CLI::Range(4, 200));
  app.add_option("--seed", cfg.seed, "random seed");
  auto* samples = app.add_option("--samples", cfg.samples, "random tuples per check")->check(CLI::Range(1, 1000));
  app.add_option("--params", cfg.params, "key=value,... with rational values");
  app.add_option("--c", cfg.c, "association order");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--digits", cfg.digits, "decimal digits for asym")->check(CLI::Range(10u, 2000u));
  app.add_option("--out", cfg.out, "write output to FILE");

  std::string name, suite = "all", direction, input = "-", alpha = "1/2", s_list = "40,80", instance;
  bool roundtrip = false;
  int level = 1;

  auto* family = app.add_subcommand("family", "polynomials, recurrence, moments and checks for a family");
  family->add_option("name", name, "sheffer|ultraspherical|hahn|jacobi|wilson|multiterm")
      ->required()
      ->check(CLI::IsMember(umbral::family_names()));
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  std::vector<std::string> suites;
  for (const auto& [k, v] : umbral::suite_table()) suites.push_back(k);
  verify->add_option("suite", suite, "suite name")->check(CLI::IsMember(suites));
  auto* cfrac = app.add_subcommand("cfrac", "moments <-> recurrence");
  cfrac->add_option("direction", direction, "moments2rec|rec2moments")
      ->required()
      ->check(CLI::IsMember({"moments2rec", "rec2moments"}));
  cfrac->add_option("input", input, "JSON file, - for stdin");
  cfrac->add_flag("--roundtrip", roundtrip, "convert back and compare");
  auto* assoc = app.add_subcommand("assoc", "associated family and pipeline agreement");
  assoc->add_option("name", name, "sheffer|ultraspherical|jacobi|wilson")
      ->required()
      ->check(CLI::IsMember(umbral::assoc_names()));
  auto* asym = app.add_subcommand("asym", "fractional-index asymptotic residuals");
  asym->add_option("instance", instance, "falling-factorial|lah")->required();
  asym->add_option("--alpha", alpha, "evaluation point");
  asym->add_option("--s", s_list, "comma-separated s values");
  asym->add_option("--level", level, "expansion level 0..3")->check(CLI::Range(0, 3));
  for (auto* sub : {family, verify, cfrac, assoc, asym}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cfg.samples_given = samples->count() > 0;

  try {
    if (*family) return cmd_family(name, cfg);
    if (*verify) return cmd_verify(suite, cfg);
    if (*cfrac) return cmd_cfrac(direction, input, roundtrip, cfg);
    if (*assoc) return cmd_assoc(name, cfg);
    return cmd_asym(instance, alpha, s_list, level, cfg);
  } catch (const umbral::Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == umbral::ErrorKind::DegenerateB ? kFail : kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
