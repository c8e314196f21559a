#ifndef TAILBOUND_DIST_HPP
#define TAILBOUND_DIST_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tailbound/errors.hpp"

namespace tailbound {

/// A (value, probability) pair as supplied by callers.
struct Atom {
  double value;
  double prob;
};

/// Law of a random variable with finite support.
///
/// Values are strictly increasing, every probability is positive and the
/// probabilities sum to one in working precision. Immutable once built;
/// construct through make_finite() or from_samples().
class FiniteDistribution {
public:
  const Eigen::VectorXd& values() const noexcept { return values_; }
  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  Eigen::Index size() const noexcept { return values_.size(); }

  double min_value() const noexcept { return values_[0]; }
  double max_value() const noexcept { return values_[values_.size() - 1]; }

  Atom atom(Eigen::Index i) const { return {values_[i], probs_[i]}; }

private:
  FiniteDistribution(Eigen::VectorXd values, Eigen::VectorXd probs)
      : values_(std::move(values)), probs_(std::move(probs)) {}

  friend FiniteDistribution make_finite(std::span<const Atom> atoms);

  Eigen::VectorXd values_;
  Eigen::VectorXd probs_;
};

struct Moments {
  double mean;
  double variance;
  double mean_abs;
};

/// A variable together with the interval [lo, hi] known to contain it.
struct RangedVariable {
  FiniteDistribution dist;
  double lo;
  double hi;
};

/// Absolute tolerance on the input probability sum before rescaling.
inline constexpr double kProbSumTolerance = 1e-9;

/// Builds a distribution from raw pairs.
///
/// Zero-probability pairs are dropped, equal values (exact comparison) are
/// merged, and the probabilities are rescaled to sum to one. The input sum
/// must lie within kProbSumTolerance of one.
FiniteDistribution make_finite(std::span<const Atom> atoms);
FiniteDistribution make_finite(std::initializer_list<Atom> atoms);

/// Empirical law: each distinct sample gets count / N.
FiniteDistribution from_samples(std::span<const double> samples);

FiniteDistribution point_mass(double value);

/// Throws InvalidRange unless lo < hi and the support lies in [lo, hi].
RangedVariable make_ranged(FiniteDistribution dist, double lo, double hi);

Moments moments(const FiniteDistribution& d);

/// Event predicate for prob().
class Query {
public:
  enum class Kind { GE, GT, LE, LT, Interval };

  static Query ge(double x) { return {Kind::GE, x, 0.0}; }
  static Query gt(double x) { return {Kind::GT, x, 0.0}; }
  static Query le(double x) { return {Kind::LE, x, 0.0}; }
  static Query lt(double x) { return {Kind::LT, x, 0.0}; }
  /// Half-open [lo, hi). hi may be +infinity.
  static Query interval(double lo, double hi) { return {Kind::Interval, lo, hi}; }

  Kind kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool contains(double x) const noexcept;

private:
  Query(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

/// Sum of the atom probabilities satisfying the query, clamped to [0, 1].
double prob(const FiniteDistribution& d, const Query& q);

/// Integral over [0, inf) of the step function lambda -> P(|X| > lambda),
/// evaluated exactly over its breakpoints.
double layer_cake_expectation(const FiniteDistribution& d);

/// Law of X + Y for independent X ~ a and Y ~ b.
FiniteDistribution convolve(const FiniteDistribution& a, const FiniteDistribution& b);

/// Law of f(X).
FiniteDistribution pushforward(const FiniteDistribution& d,
                               const std::function<double(double)>& f);

}  // namespace tailbound

#endif  // TAILBOUND_DIST_HPP
