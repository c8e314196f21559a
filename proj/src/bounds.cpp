#include "tailbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace tailbound {

ThresholdLadder::ThresholdLadder(std::span<const double> thresholds)
    : thresholds_(static_cast<Eigen::Index>(thresholds.size())) {
  if (thresholds.empty()) throw Error(Errc::InvalidLadder, "ladder is empty");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    const double l = thresholds[k];
    if (!std::isfinite(l)) throw Error(Errc::InvalidLadder, "threshold is not finite");
    if (k == 0 && !(l > 0.0)) throw Error(Errc::InvalidLadder, "first threshold must be > 0");
    if (k > 0 && !(l > thresholds[k - 1])) {
      throw Error(Errc::InvalidLadder, "thresholds must be strictly increasing");
    }
    thresholds_[static_cast<Eigen::Index>(k)] = l;
  }
}

double BoundReport::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  throw std::out_of_range("no parameter " + name);
}

BoundReport finalize(BoundReport report) {
  report.lhs = report.coefficients.dot(report.tails);
  report.slack = report.rhs - report.lhs;
  report.satisfied =
      report.lhs <= report.rhs + kSatisfiedTolerance * std::max(1.0, std::abs(report.rhs));
  return report;
}

namespace {

BoundReport start(std::string theorem, const ThresholdLadder& ladder) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.ladder = ladder.thresholds();
  r.coefficients.resize(ladder.size());
  r.tails.resize(ladder.size());
  return r;
}

// P(l_k <= X < l_{k+1}) with the last cell open to +inf.
void fill_cells(BoundReport& r, const FiniteDistribution& d, const ThresholdLadder& ladder) {
  const Eigen::Index n = ladder.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double upper = k + 1 < n ? ladder[k + 1] : std::numeric_limits<double>::infinity();
    r.tails[k] = prob(d, Query::interval(ladder[k], upper));
  }
}

void fill_upper_tails(BoundReport& r, const FiniteDistribution& d, const ThresholdLadder& ladder) {
  for (Eigen::Index k = 0; k < ladder.size(); ++k) {
    r.tails[k] = prob(d, Query::ge(ladder[k]));
  }
}

Eigen::VectorXd phi_at_ladder(const Phi& phi, const ThresholdLadder& ladder) {
  require_valid(phi);
  Eigen::VectorXd values = ladder.thresholds().unaryExpr([&](double l) { return phi_eval(phi, l); });
  if (!values.allFinite()) {
    throw Error(Errc::PhiNotFinite, "phi is infinite at a ladder point");
  }
  return values;
}

FiniteDistribution centered(const FiniteDistribution& d, double mean) {
  return pushforward(d, [mean](double v) { return v - mean; });
}

double positive_variance(const FiniteDistribution& d) {
  const double variance = moments(d).variance;
  if (!(variance > 0.0)) throw Error(Errc::ZeroVariance, "distribution has zero variance");
  return variance;
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(Errc::NonpositiveInput, fmt::format("{} must be finite and > 0", name));
  }
}

}  // namespace

BoundReport general_chebyshev(const FiniteDistribution& d, const Phi& phi,
                              const ThresholdLadder& ladder) {
  const Eigen::VectorXd at = phi_at_ladder(phi, ladder);
  if (!(at[0] > 0.0)) {
    throw Error(Errc::PhiAtLambda1NotPositive, "phi(lambda_1) must be > 0");
  }
  BoundReport r = start("general_chebyshev", ladder);
  r.coefficients[0] = at[0];
  for (Eigen::Index k = 1; k < ladder.size(); ++k) {
    r.coefficients[k] = at[k] - at[k - 1];
  }
  fill_upper_tails(r, d, ladder);
  r.rhs = expect_phi(d, phi);
  return finalize(std::move(r));
}

BoundReport markov_staircase(const FiniteDistribution& d, const Phi& phi,
                             const ThresholdLadder& ladder) {
  BoundReport r = start("markov_staircase", ladder);
  r.coefficients = phi_at_ladder(phi, ladder);
  fill_cells(r, d, ladder);
  r.rhs = expect_phi(d, phi);
  return finalize(std::move(r));
}

BoundReport eisenberg(const FiniteDistribution& d, const ThresholdLadder& ladder,
                      std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != ladder.size()) {
    throw Error(Errc::SizeMismatch, "need one weight per threshold");
  }
  if (d.min_value() < 0.0) throw Error(Errc::NegativeSupport, "support must be nonnegative");
  if (!(*std::max_element(weights.begin(), weights.end()) > 0.0)) {
    throw Error(Errc::AllWeightsNonpositive, "at least one weight must be positive");
  }

  Eigen::Index v = 0;
  double best = weights[0] / ladder[0];
  for (Eigen::Index k = 1; k < ladder.size(); ++k) {
    const double ratio = weights[static_cast<std::size_t>(k)] / ladder[k];
    if (ratio > best) {
      best = ratio;
      v = k;
    }
  }

  BoundReport r = start("eisenberg", ladder);
  r.coefficients = Eigen::Map<const Eigen::VectorXd>(weights.data(), ladder.size());
  fill_cells(r, d, ladder);
  r.rhs = moments(d).mean * best;
  r.params = {{"v", static_cast<double>(v + 1)}, {"ratio", best}};
  return finalize(std::move(r));
}

BoundReport reverse_markov_gen(const FiniteDistribution& d, const ThresholdLadder& ladder,
                               double upper) {
  if (!std::isfinite(upper)) throw Error(Errc::SupportExceedsM, "M must be finite");
  if (d.max_value() > upper) throw Error(Errc::SupportExceedsM, "support exceeds M");
  if (!(ladder.last() < upper)) throw Error(Errc::LadderNotBelowM, "ladder must stay below M");

  BoundReport r = start("reverse_markov_gen", ladder);
  const Eigen::Index n = ladder.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double next = k + 1 < n ? ladder[k + 1] : upper;
    r.coefficients[k] = next - ladder[k];
    r.tails[k] = prob(d, Query::le(ladder[k]));
  }
  r.rhs = upper - moments(d).mean;
  r.params = {{"M", upper}};
  return finalize(std::move(r));
}

BoundReport chebyshev_gen(const FiniteDistribution& d, const ThresholdLadder& ladder) {
  const double variance = positive_variance(d);
  const double mean = moments(d).mean;
  const FiniteDistribution deviation = pushforward(d, [mean](double v) { return std::abs(v - mean); });

  BoundReport r = start("chebyshev_gen", ladder);
  double prev_sq = 0.0;
  for (Eigen::Index k = 0; k < ladder.size(); ++k) {
    const double sq = ladder[k] * ladder[k];
    r.coefficients[k] = sq - prev_sq;
    prev_sq = sq;
  }
  fill_upper_tails(r, deviation, ladder);
  r.rhs = variance;
  return finalize(std::move(r));
}

BoundReport cantelli_gen(const FiniteDistribution& d, const ThresholdLadder& ladder) {
  const double variance = positive_variance(d);
  const double mean = moments(d).mean;
  const double l1 = ladder.first();
  const double denom = (l1 * l1 + variance) * (l1 * l1 + variance);

  BoundReport r = start("cantelli_gen", ladder);
  // lambda_1 lambda_0 + var vanishes for lambda_0 = -var / lambda_1.
  r.coefficients[0] = 1.0;
  for (Eigen::Index k = 1; k < ladder.size(); ++k) {
    const double hi = l1 * ladder[k] + variance;
    const double lo = l1 * ladder[k - 1] + variance;
    r.coefficients[k] = (hi * hi - lo * lo) / denom;
  }
  fill_upper_tails(r, centered(d, mean), ladder);
  r.rhs = variance / (variance + l1 * l1);
  r.params = {{"t0", variance / l1}, {"variance", variance}};
  return finalize(std::move(r));
}

BoundReport hoeffding_gen(std::span<const RangedVariable> vars, const ThresholdLadder& ladder) {
  if (vars.empty()) throw Error(Errc::EmptyVariableList, "need at least one variable");

  double sum_sq = 0.0;
  for (const auto& var : vars) sum_sq += (var.hi - var.lo) * (var.hi - var.lo);
  if (!(sum_sq > 0.0)) throw Error(Errc::DegenerateRanges, "sum of squared ranges is zero");

  FiniteDistribution sum = vars.front().dist;
  for (std::size_t i = 1; i < vars.size(); ++i) {
    const auto candidates = static_cast<std::size_t>(sum.size() * vars[i].dist.size());
    if (candidates > kMaxConvolutionAtoms) {
      throw Error(Errc::SupportTooLarge,
                  fmt::format("convolution would produce {} candidate atoms", candidates));
    }
    sum = convolve(sum, vars[i].dist);
  }
  const FiniteDistribution deviation = centered(sum, moments(sum).mean);

  const double l1 = ladder.first();
  const double rate = 4.0 * l1 / sum_sq;
  BoundReport r = start("hoeffding_gen", ladder);
  // The lambda_0 = -inf term contributes exp(-inf) = 0.
  r.coefficients[0] = 1.0;
  for (Eigen::Index k = 1; k < ladder.size(); ++k) {
    r.coefficients[k] = std::exp(rate * (ladder[k] - l1)) - std::exp(rate * (ladder[k - 1] - l1));
  }
  fill_upper_tails(r, deviation, ladder);
  r.rhs = std::exp(-2.0 * l1 * l1 / sum_sq);
  r.params = {{"s0", rate}, {"sum_sq_ranges", sum_sq}};
  return finalize(std::move(r));
}

LemmaGap hoeffding_lemma_gap(const FiniteDistribution& d, double lo, double hi, double s) {
  require_positive(s, "s");
  if (std::abs(moments(d).mean) > kZeroMeanTolerance) {
    throw Error(Errc::NonzeroMean, "variable must have mean zero");
  }
  if (!(lo <= d.min_value() && d.max_value() <= hi)) {
    throw Error(Errc::SupportOutsideRange, "support is not contained in [a, b]");
  }
  const double width = hi - lo;
  return {expect_phi(d, ExpScaled{s}), std::exp(s * s * width * width / 8.0)};
}

double cantelli_shift_objective(double variance, double lambda1, double t) {
  return (variance + t * t) / ((lambda1 + t) * (lambda1 + t));
}

double hoeffding_rate_exponent(double lambda1, double sum_sq_ranges, double s) {
  return -s * lambda1 + s * s * sum_sq_ranges / 8.0;
}

Minimizer optimal_shift(double variance, double lambda1) {
  require_positive(variance, "variance");
  require_positive(lambda1, "lambda1");
  return {variance / lambda1, variance / (variance + lambda1 * lambda1)};
}

Minimizer optimal_rate(double lambda1, double sum_sq_ranges) {
  require_positive(lambda1, "lambda1");
  require_positive(sum_sq_ranges, "sum_sq_ranges");
  return {4.0 * lambda1 / sum_sq_ranges, std::exp(-2.0 * lambda1 * lambda1 / sum_sq_ranges)};
}

TailSolution solve_unknown_tail(std::span<const double> coefficients, double budget,
                                const std::map<std::size_t, double>& known, std::size_t unknown) {
  const std::size_t n = coefficients.size();
  if (unknown < 1 || unknown > n) {
    throw Error(Errc::MultipleUnknowns, fmt::format("unknown index {} outside 1..{}", unknown, n));
  }
  if (known.contains(unknown) || known.size() != n - 1) {
    throw Error(Errc::MultipleUnknowns, "known tails must cover every index except the unknown");
  }
  for (double c : coefficients) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw Error(Errc::NegativeCoefficient, "coefficients must be finite and >= 0");
    }
  }
  const double cj = coefficients[unknown - 1];
  if (!(cj > 0.0)) throw Error(Errc::CoefficientZeroAtUnknown, "coefficient at unknown is zero");

  double rest = 0.0;
  for (const auto& [k, p] : known) {
    if (k < 1 || k > n) {
      throw Error(Errc::MultipleUnknowns, fmt::format("known index {} outside 1..{}", k, n));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(Errc::InvalidProbability, fmt::format("P_{} = {} is not in [0, 1]", k, p));
    }
    rest += coefficients[k - 1] * p;
  }

  TailSolution out;
  out.raw = (budget - rest) / cj;
  out.value = std::clamp(out.raw, 0.0, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& [k, p] : known) {
    if (p > prev) out.order_warning = true;
    prev = p;
  }
  return out;
}

}  // namespace tailbound
