#ifndef TAILBOUND_ORACLE_HPP
#define TAILBOUND_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/dist.hpp"
#include "tailbound/transforms.hpp"

namespace tailbound::oracle {

enum class Theorem {
  GeneralChebyshev,
  MarkovStaircase,
  Eisenberg,
  ReverseMarkovGen,
  ChebyshevGen,
  CantelliGen,
  HoeffdingGen,
  HoeffdingLemma,
  LayerCake,
  AbelIdentity,
  N1Reduction,
};

inline constexpr Theorem kAllTheorems[] = {
    Theorem::GeneralChebyshev, Theorem::MarkovStaircase, Theorem::Eisenberg,
    Theorem::ReverseMarkovGen, Theorem::ChebyshevGen,    Theorem::CantelliGen,
    Theorem::HoeffdingGen,     Theorem::HoeffdingLemma,  Theorem::LayerCake,
    Theorem::AbelIdentity,     Theorem::N1Reduction,
};

std::string_view theorem_name(Theorem t) noexcept;

/// Throws UnknownTheorem.
Theorem parse_theorem(std::string_view name);

/// Identity checks compare two routes rather than an inequality.
bool is_identity(Theorem t) noexcept;

struct IntRange {
  int lo;
  int hi;
};

struct RealRange {
  double lo;
  double hi;
};

struct FuzzConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  IntRange support_size{2, 12};
  RealRange value_range{-10.0, 10.0};
  IntRange ladder_len{1, 6};
  /// Serialize the worst trial even when nothing was violated.
  bool record_worst = false;
};

/// Throws InvalidConfig.
void validate(const FuzzConfig& config);

/// Bound instances for the inequality family, generated to satisfy each
/// theorem's preconditions. Fields not used by a theorem are left empty.
struct Instance {
  Theorem theorem;
  FiniteDistribution dist;
  std::vector<double> ladder{};
  Phi phi = PositivePart{};
  double upper = 0.0;                  ///< reverse Markov M
  std::vector<double> weights{};       ///< eisenberg
  std::vector<RangedVariable> vars{};  ///< hoeffding_gen
  double lo = 0.0;                     ///< hoeffding_lemma range
  double hi = 0.0;
  double s = 0.0;                      ///< hoeffding_lemma rate
  Theorem reduction = Theorem::MarkovStaircase;  ///< n1_reduction target
};

/// Per-trial engine. Seeded from (seed, theorem, trial) through SplitMix64 so
/// every trial is reproducible on its own.
std::mt19937_64 trial_rng(std::uint64_t seed, Theorem theorem, std::uint64_t trial);

Instance random_instance(std::mt19937_64& rng, const FuzzConfig& config, Theorem theorem);

/// Runs the library operation an inequality instance targets.
BoundReport evaluate(const Instance& inst);

struct Verdict {
  bool pass;
  double margin;  ///< lhs - (rhs + tolerance) on failure, else 0
  bool resum_mismatch = false;
};

/// Absolute (scaled) tolerance on the independent lhs re-summation.
inline constexpr double kResumTolerance = 1e-12;

Verdict check_report(const BoundReport& report, double tol_rel);

/// Coefficients, tails and rhs recomputed by direct enumeration over atoms
/// without going through the library's prob/moments/convolve routines.
struct Rederived {
  std::vector<double> coefficients;
  std::vector<double> tails;
  double rhs;
};

Rederived rederive(const Instance& inst);

struct FuzzSummary {
  std::string theorem;
  int trials_run = 0;
  int violations = 0;
  double worst_slack = 0.0;
  int worst_trial = -1;
  std::optional<std::string> worst_case;  ///< JSON serialized instance
};

using ReportHook = std::function<void(BoundReport&)>;

/// Runs config.trials independent trials. The hook, when set, is applied to
/// each report before it is checked (fault injection for detector tests).
FuzzSummary fuzz_theorem(Theorem theorem, const FuzzConfig& config, const ReportHook& hook = {});

std::string serialize(const Instance& inst);
std::string serialize(const FuzzSummary& summary);

/// Golden-section search for the minimizer of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than tol * max(1, |mid|).
double minimize_scalar(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace tailbound::oracle

#endif  // TAILBOUND_ORACLE_HPP
