// Acceptance criteria 1..14, one pass/fail line each.
//   acceptance                 all criteria
//   acceptance --criterion k   just criterion k (exit 0 iff it passes)

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "umbral/suites.hpp"

namespace {

const char* const kTitles[] = {
    "",
    "Sheffer base case and Hermite branch",
    "ultraspherical moments and displays",
    "Hahn moment series and s=2 variance",
    "Jacobi moment series and the uniform case",
    "(1+lambda theta)^2 eigenpolynomials",
    "Wilson tridiagonality and h=0 reduction",
    "long division lemma",
    "associated pipeline triangle",
    "rational association and additivity",
    "Wilson associated",
    "orthogonality core",
    "duality and negative indices",
    "binomial extensions and asymptotics",
    "multiterm band structure",
};

bool run_one(int k) {
  umbral::SuiteConfig cfg;
  cfg.N = 12;
  umbral::Report rep;
  try {
    rep = umbral::run_criterion(k, cfg);
  } catch (const std::exception& e) {
    rep.add("criterion " + std::to_string(k), false, e.what());
  }
  const bool ok = rep.all_pass();
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << kTitles[k] << " (" << rep.checks().size()
            << " checks)";
  if (const auto f = rep.first_failure()) std::cout << " -- " << f->name << ": " << f->witness;
  std::cout << std::endl;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > umbral::kCriteria) {
        std::cerr << "criterion must be 1.." << umbral::kCriteria << '\n';
        return 2;
      }
    } else {
      std::cerr << "usage: acceptance [--criterion k]\n";
      return 2;
    }
  }
  bool all = true;
  for (int k = 1; k <= umbral::kCriteria; ++k)
    if (only == 0 || only == k) all = run_one(k) && all;
  return all ? 0 : 1;
}
