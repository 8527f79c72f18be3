#pragma once

// Named pass/fail certificates.  A check that throws records the error as its
// witness instead of aborting the whole report.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "operator.hpp"
#include "series.hpp"

namespace umbral {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // first differing entry or coefficient, or the error
};

class Report {
 public:
  void add(std::string name, bool pass, std::string witness = {}) {
    checks_.push_back(Check{std::move(name), pass, std::move(witness)});
  }

  // Runs `body`, which returns an empty string on success or a witness.
  void run(std::string name, const std::function<std::string()>& body) {
    try {
      std::string w = body();
      const bool ok = w.empty();
      add(std::move(name), ok, std::move(w));
    } catch (const Error& e) {
      add(std::move(name), false, e.what());
    }
  }

  template <class D>
  void operators(std::string name, const LinearOperator<D>& lhs, const LinearOperator<D>& rhs, int upto) {
    run(std::move(name), [&] {
      const auto m = compare_block(lhs, rhs, upto);
      return m ? m->describe() : std::string();
    });
  }

  void series(std::string name, const Series& lhs, const Series& rhs, int upto) {
    run(std::move(name), [&] {
      if (lhs.order() < upto || rhs.order() < upto)
        throw Error(ErrorKind::OrderExhausted, "series order " + std::to_string(std::min(lhs.order(), rhs.order())) +
                                                   " below " + std::to_string(upto));
      const auto k = first_mismatch(lhs, rhs, upto);
      return k ? "coefficient y^" + std::to_string(*k) + ": " + lhs[*k].get_str() + " vs " + rhs[*k].get_str()
               : std::string();
    });
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back(Check{prefix + c.name, c.pass, c.witness});
  }

  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return !checks_.empty();
  }
  std::optional<Check> first_failure() const {
    for (const auto& c : checks_)
      if (!c.pass) return c;
    return std::nullopt;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace umbral
