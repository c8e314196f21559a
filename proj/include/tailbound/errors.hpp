#ifndef TAILBOUND_ERRORS_HPP
#define TAILBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tailbound {

enum class Errc {
  // dist
  EmptySupport,
  NegativeProb,
  ProbSumOutOfTolerance,
  NonFiniteValue,
  BadInterval,
  InvalidRange,
  // transforms
  InvalidPhi,
  // bounds
  PhiAtLambda1NotPositive,
  PhiNotFinite,
  InvalidLadder,
  SizeMismatch,
  NegativeSupport,
  AllWeightsNonpositive,
  SupportExceedsM,
  LadderNotBelowM,
  ZeroVariance,
  EmptyVariableList,
  DegenerateRanges,
  SupportTooLarge,
  NonzeroMean,
  SupportOutsideRange,
  NonpositiveInput,
  CoefficientZeroAtUnknown,
  MultipleUnknowns,
  InvalidProbability,
  NegativeCoefficient,
  // oracle
  BadBracket,
  UnknownTheorem,
  InvalidConfig,
  // cli
  FileNotFound,
  MalformedRow,
  Usage,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace tailbound

#endif  // TAILBOUND_ERRORS_HPP
