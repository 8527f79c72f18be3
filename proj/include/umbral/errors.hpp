#pragma once

#include <stdexcept>
#include <string>

namespace umbral {

enum class ErrorKind {
  DivisionByNonUnit,
  CompositionNonNilpotent,
  NotReversible,
  NonUnitBase,
  DiagSingular,
  NotInvertible,
  ReliabilityExhausted,
  NotThreeTerm,
  NotMonic,
  DegenerateB,
  OrderExhausted,
  NodeAtZeroOfP,
  ClosedFormRequired,
  NotPolynomialCoefficients,
  SingularParams,
  EvaluationDomain,
  NonpositiveArgument,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByNonUnit: return "DivisionByNonUnit";
    case ErrorKind::CompositionNonNilpotent: return "CompositionNonNilpotent";
    case ErrorKind::NotReversible: return "NotReversible";
    case ErrorKind::NonUnitBase: return "NonUnitBase";
    case ErrorKind::DiagSingular: return "DiagSingular";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::ReliabilityExhausted: return "ReliabilityExhausted";
    case ErrorKind::NotThreeTerm: return "NotThreeTerm";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::DegenerateB: return "DegenerateB";
    case ErrorKind::OrderExhausted: return "OrderExhausted";
    case ErrorKind::NodeAtZeroOfP: return "NodeAtZeroOfP";
    case ErrorKind::ClosedFormRequired: return "ClosedFormRequired";
    case ErrorKind::NotPolynomialCoefficients: return "NotPolynomialCoefficients";
    case ErrorKind::SingularParams: return "SingularParams";
    case ErrorKind::EvaluationDomain: return "EvaluationDomain";
    case ErrorKind::NonpositiveArgument: return "NonpositiveArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  // Index at which the failure was detected, -1 when not applicable.
  Error(ErrorKind kind, const std::string& what, int index)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  int index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  int index_ = -1;
};

}  // namespace umbral
