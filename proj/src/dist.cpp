#include "tailbound/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace tailbound {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::NegativeProb: return "NegativeProb";
    case Errc::ProbSumOutOfTolerance: return "ProbSumOutOfTolerance";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::BadInterval: return "BadInterval";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::InvalidPhi: return "InvalidPhi";
    case Errc::PhiAtLambda1NotPositive: return "PhiAtLambda1NotPositive";
    case Errc::PhiNotFinite: return "PhiNotFinite";
    case Errc::InvalidLadder: return "InvalidLadder";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NegativeSupport: return "NegativeSupport";
    case Errc::AllWeightsNonpositive: return "AllWeightsNonpositive";
    case Errc::SupportExceedsM: return "SupportExceedsM";
    case Errc::LadderNotBelowM: return "LadderNotBelowM";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::EmptyVariableList: return "EmptyVariableList";
    case Errc::DegenerateRanges: return "DegenerateRanges";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::NonzeroMean: return "NonzeroMean";
    case Errc::SupportOutsideRange: return "SupportOutsideRange";
    case Errc::NonpositiveInput: return "NonpositiveInput";
    case Errc::CoefficientZeroAtUnknown: return "CoefficientZeroAtUnknown";
    case Errc::MultipleUnknowns: return "MultipleUnknowns";
    case Errc::InvalidProbability: return "InvalidProbability";
    case Errc::NegativeCoefficient: return "NegativeCoefficient";
    case Errc::BadBracket: return "BadBracket";
    case Errc::UnknownTheorem: return "UnknownTheorem";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

FiniteDistribution make_finite(std::span<const Atom> atoms) {
  std::map<double, double> merged;
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value)) {
      throw Error(Errc::NonFiniteValue, "support value is not finite");
    }
    if (!(a.prob >= 0.0) || !std::isfinite(a.prob)) {
      throw Error(Errc::NegativeProb, "probability " + std::to_string(a.prob) + " is invalid");
    }
    if (a.prob == 0.0) continue;
    // -0.0 and 0.0 compare equal and land in the same bucket
    merged[a.value] += a.prob;
    total += a.prob;
  }
  if (merged.empty()) {
    throw Error(Errc::EmptySupport, "no atoms with positive probability");
  }
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    throw Error(Errc::ProbSumOutOfTolerance,
                "probabilities sum to " + std::to_string(total));
  }

  Eigen::VectorXd values(static_cast<Eigen::Index>(merged.size()));
  Eigen::VectorXd probs(values.size());
  Eigen::Index i = 0;
  for (const auto& [v, p] : merged) {
    values[i] = v == 0.0 ? 0.0 : v;
    probs[i] = p;
    ++i;
  }
  probs /= probs.sum();
  return FiniteDistribution(std::move(values), std::move(probs));
}

FiniteDistribution make_finite(std::initializer_list<Atom> atoms) {
  return make_finite(std::span<const Atom>(atoms.begin(), atoms.size()));
}

FiniteDistribution from_samples(std::span<const double> samples) {
  if (samples.empty()) {
    throw Error(Errc::EmptySupport, "no samples");
  }
  std::map<double, std::size_t> counts;
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(Errc::NonFiniteValue, "sample is not finite");
    ++counts[s];
  }
  const double n = static_cast<double>(samples.size());
  std::vector<Atom> atoms;
  atoms.reserve(counts.size());
  for (const auto& [v, c] : counts) {
    atoms.push_back({v, static_cast<double>(c) / n});
  }
  return make_finite(atoms);
}

FiniteDistribution point_mass(double value) { return make_finite({{value, 1.0}}); }

RangedVariable make_ranged(FiniteDistribution dist, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(Errc::InvalidRange, "range requires finite lo < hi");
  }
  if (dist.min_value() < lo || dist.max_value() > hi) {
    throw Error(Errc::InvalidRange, "support is not contained in [lo, hi]");
  }
  return {std::move(dist), lo, hi};
}

Moments moments(const FiniteDistribution& d) {
  const auto& v = d.values();
  const auto& p = d.probs();
  const double mean = p.dot(v);
  const double variance = p.dot((v.array() - mean).square().matrix());
  const double mean_abs = p.dot(v.cwiseAbs());
  return {mean, variance, mean_abs};
}

bool Query::contains(double x) const noexcept {
  switch (kind_) {
    case Kind::GE: return x >= lo_;
    case Kind::GT: return x > lo_;
    case Kind::LE: return x <= lo_;
    case Kind::LT: return x < lo_;
    case Kind::Interval: return x >= lo_ && x < hi_;
  }
  return false;
}

double prob(const FiniteDistribution& d, const Query& q) {
  if (q.kind() == Query::Kind::Interval && !(q.lo() < q.hi())) {
    throw Error(Errc::BadInterval, "interval requires lo < hi");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (q.contains(d.values()[i])) total += d.probs()[i];
  }
  return std::clamp(total, 0.0, 1.0);
}

double layer_cake_expectation(const FiniteDistribution& d) {
  // |X| as sorted (magnitude, prob) pairs; equal magnitudes stay adjacent.
  std::vector<std::pair<double, double>> mags;
  mags.reserve(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    mags.emplace_back(std::abs(d.values()[i]), d.probs()[i]);
  }
  std::sort(mags.begin(), mags.end());

  // On [a_{j-1}, a_j) the survival function P(|X| > lambda) equals the mass
  // of all magnitudes >= a_j.
  double survival = 0.0;
  for (const auto& m : mags) survival += m.second;

  double integral = 0.0;
  double prev = 0.0;
  std::size_t j = 0;
  while (j < mags.size()) {
    const double level = mags[j].first;
    integral += (level - prev) * survival;
    while (j < mags.size() && mags[j].first == level) {
      survival -= mags[j].second;
      ++j;
    }
    prev = level;
  }
  return integral;
}

FiniteDistribution convolve(const FiniteDistribution& a, const FiniteDistribution& b) {
  std::vector<Atom> sums;
  sums.reserve(static_cast<std::size_t>(a.size() * b.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      sums.push_back({a.values()[i] + b.values()[j], a.probs()[i] * b.probs()[j]});
    }
  }
  return make_finite(sums);
}

FiniteDistribution pushforward(const FiniteDistribution& d,
                               const std::function<double(double)>& f) {
  std::vector<Atom> mapped;
  mapped.reserve(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    mapped.push_back({f(d.values()[i]), d.probs()[i]});
  }
  return make_finite(mapped);
}

}  // namespace tailbound
