#pragma once
#include <stdexcept>
#include <string>

namespace rzlab {

enum class Err {
  // ensemble validation
  MeanNotZero,
  VarianceNotOne,
  MissingK,
  BadIndexSet,
  ValueOutsideS,
  BadLeadingSign,
  DegreeTooSmall,
  // polynomials
  DegreeExceedsM,
  ZeroVariancePoint,
  ZeroPolynomial,
  InexactCoefficients,
  EndpointRoot,
  NumericalBreakdown,
  // estimators
  BudgetExceeded,
  DegenerateDesign,
  ZeroSuccessRecord,
  // constructions
  BadParams,
  BlockOverlap,
  InfeasibleConditioning,
  // algint
  NotSquarefree,
  DegreeUnsupported,
  // covariance
  InvalidSpecForLemma,
  PoleAtUnitCircle,
  // cli
  UnknownSubcommand,
  BadConfig,
  IoFailure,
};

const char* to_string(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace rzlab
