#ifndef TAILBOUND_BOUNDS_HPP
#define TAILBOUND_BOUNDS_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tailbound/dist.hpp"
#include "tailbound/transforms.hpp"

namespace tailbound {

/// Strictly increasing, finite, positive thresholds lambda_1 < ... < lambda_n.
///
/// The lambda_0 convention is not stored here: each bound supplies its own.
class ThresholdLadder {
public:
  /// Throws InvalidLadder on an empty, non-increasing or non-positive ladder.
  explicit ThresholdLadder(std::span<const double> thresholds);
  ThresholdLadder(std::initializer_list<double> thresholds)
      : ThresholdLadder(std::span<const double>(thresholds.begin(), thresholds.size())) {}

  const Eigen::VectorXd& thresholds() const noexcept { return thresholds_; }
  Eigen::Index size() const noexcept { return thresholds_.size(); }
  double operator[](Eigen::Index k) const { return thresholds_[k]; }
  double first() const noexcept { return thresholds_[0]; }
  double last() const noexcept { return thresholds_[thresholds_.size() - 1]; }

private:
  Eigen::VectorXd thresholds_;
};

/// Relative slack allowed when deciding whether lhs <= rhs.
inline constexpr double kSatisfiedTolerance = 1e-9;

/// Evaluated staircase inequality sum_k c_k P_k <= rhs.
struct BoundReport {
  std::string theorem;
  Eigen::VectorXd ladder;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd tails;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  /// Named auxiliary values (t0, s0, M, ...) in insertion order.
  std::vector<std::pair<std::string, double>> params;

  double param(const std::string& name) const;
};

/// Fills lhs, slack and satisfied from coefficients, tails and rhs.
BoundReport finalize(BoundReport report);

/// sum_k [phi(l_k) - phi(l_{k-1})] P(X >= l_k) <= E phi(X), with phi(l_0) = 0.
BoundReport general_chebyshev(const FiniteDistribution& d, const Phi& phi,
                              const ThresholdLadder& ladder);

/// sum_k phi(l_k) P(l_k <= X < l_{k+1}) <= E phi(X), with l_{n+1} = +inf.
BoundReport markov_staircase(const FiniteDistribution& d, const Phi& phi,
                             const ThresholdLadder& ladder);

/// sum_i a_i P(l_i <= X < l_{i+1}) <= E(X) a_v / l_v for nonnegative X, where
/// v maximizes a_k / l_k (smallest index on ties). Weights may be negative.
BoundReport eisenberg(const FiniteDistribution& d, const ThresholdLadder& ladder,
                      std::span<const double> weights);

/// sum_k (l_{k+1} - l_k) P(X <= l_k) <= M - E(X), with l_{n+1} = M.
BoundReport reverse_markov_gen(const FiniteDistribution& d, const ThresholdLadder& ladder,
                               double upper);

/// sum_k (l_k^2 - l_{k-1}^2) P(|X - EX| >= l_k) <= var(X), with l_0 = 0.
BoundReport chebyshev_gen(const FiniteDistribution& d, const ThresholdLadder& ladder);

/// One-sided staircase with l_0 = -var / l_1; c_1 is exactly 1.
BoundReport cantelli_gen(const FiniteDistribution& d, const ThresholdLadder& ladder);

/// Exact law of the independent sum built by convolution; l_0 = -inf.
BoundReport hoeffding_gen(std::span<const RangedVariable> vars, const ThresholdLadder& ladder);

/// Upper cap on candidate atoms per convolution step in hoeffding_gen.
inline constexpr std::size_t kMaxConvolutionAtoms = 1'000'000;

struct LemmaGap {
  double mgf;    ///< E exp(sX)
  double bound;  ///< exp(s^2 (b - a)^2 / 8)
};

/// Mean-zero tolerance for hoeffding_lemma_gap.
inline constexpr double kZeroMeanTolerance = 1e-12;

LemmaGap hoeffding_lemma_gap(const FiniteDistribution& d, double lo, double hi, double s);

struct Minimizer {
  double argmin;
  double value;
};

/// g(t) = (var + t^2) / (lambda1 + t)^2
double cantelli_shift_objective(double variance, double lambda1, double t);

/// g(s) = -s lambda1 + s^2 sum_sq / 8
double hoeffding_rate_exponent(double lambda1, double sum_sq_ranges, double s);

/// t0 = var / lambda1 and g(t0) = var / (var + lambda1^2).
Minimizer optimal_shift(double variance, double lambda1);

/// s0 = 4 lambda1 / sum_sq and exp(g(s0)) = exp(-2 lambda1^2 / sum_sq).
Minimizer optimal_rate(double lambda1, double sum_sq_ranges);

struct TailSolution {
  double value;  ///< clipped to [0, 1]
  double raw;
  bool order_warning = false;  ///< known tails are not nonincreasing in k
};

/// Solves sum_k c_k P_k <= budget for the single unknown P_j.
/// Indices are 1-based; known must hold every index except j.
TailSolution solve_unknown_tail(std::span<const double> coefficients, double budget,
                                const std::map<std::size_t, double>& known, std::size_t unknown);

}  // namespace tailbound

#endif  // TAILBOUND_BOUNDS_HPP
