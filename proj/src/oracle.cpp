#include "tailbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"

namespace tailbound::oracle {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kIdentityTolerance = 1e-12;
constexpr double kSoundnessTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool close_scaled(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double snap(double x) { return std::round(2.0 * x) / 2.0; }

// Plain (value, prob) view of a distribution for the enumeration routes.
struct Atoms {
  std::vector<double> v;
  std::vector<double> p;

  explicit Atoms(const FiniteDistribution& d) {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      v.push_back(d.values()[i]);
      p.push_back(d.probs()[i]);
    }
  }
  Atoms() = default;

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m += v[i] * p[i];
    return m;
  }
  double variance() const {
    const double m = mean();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (v[i] - m) * (v[i] - m) * p[i];
    return s;
  }
  template <class Pred>
  double mass(Pred pred) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (pred(v[i])) s += p[i];
    }
    return s;
  }
};

FiniteDistribution random_dist(std::mt19937_64& rng, int size, double lo, double hi, bool on_grid) {
  std::vector<Atom> atoms(static_cast<std::size_t>(size));
  double total = 0.0;
  for (auto& a : atoms) {
    a.value = uniform(rng, lo, hi);
    if (on_grid) a.value = std::clamp(snap(a.value), lo, hi);
    a.prob = uniform(rng, 0.05, 1.0);
    total += a.prob;
  }
  for (auto& a : atoms) a.prob /= total;
  return make_finite(atoms);
}

// Strictly increasing thresholds in (0, hi); fewer than len when draws collide.
std::vector<double> random_ladder(std::mt19937_64& rng, int len, double hi, bool on_grid) {
  std::vector<double> ladder;
  for (int k = 0; k < len; ++k) {
    double l = uniform(rng, 0.0, hi);
    if (on_grid) l = snap(l);
    if (l > 0.0 && l < hi) ladder.push_back(l);
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  if (ladder.empty()) ladder.push_back(hi / 2.0);
  return ladder;
}

Phi random_phi(std::mt19937_64& rng, const RealRange& values, double lambda1) {
  switch (uniform_int(rng, 0, 4)) {
    case 0: return PositivePart{};
    case 1: return PowerPositive{uniform(rng, 0.25, 4.0)};
    case 2: return ShiftedSquare{uniform(rng, 0.0, 5.0)};
    case 3: return ExpScaled{uniform(rng, 0.05, 1.0)};
    default: {
      PiecewiseConstant f;
      const int m = uniform_int(rng, 0, 4);
      for (int j = 0; j < m; ++j) f.breakpoints.push_back(snap(uniform(rng, values.lo, values.hi)));
      std::sort(f.breakpoints.begin(), f.breakpoints.end());
      f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end()), f.breakpoints.end());
      double level = uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : uniform(rng, 0.0, 2.0);
      f.levels.push_back(level);
      for (std::size_t j = 0; j < f.breakpoints.size(); ++j) {
        level += uniform(rng, 0.0, 3.0);
        f.levels.push_back(level);
      }
      if (!(phi_eval(f, lambda1) > 0.0)) {
        for (double& l : f.levels) l += 0.5;
      }
      return f;
    }
  }
}

int support_size(std::mt19937_64& rng, const FuzzConfig& c, int min_size) {
  return std::max(min_size, uniform_int(rng, c.support_size.lo, c.support_size.hi));
}

double magnitude(const RealRange& r) { return std::max(std::abs(r.lo), std::abs(r.hi)); }

// S_N law by enumerating every combination of atoms.
Atoms enumerate_sum(const std::vector<RangedVariable>& vars) {
  std::vector<Atoms> parts;
  for (const auto& var : vars) parts.emplace_back(var.dist);
  Atoms sum;
  std::vector<std::size_t> idx(parts.size(), 0);
  while (true) {
    double v = 0.0;
    double p = 1.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      v += parts[i].v[idx[i]];
      p *= parts[i].p[idx[i]];
    }
    sum.v.push_back(v);
    sum.p.push_back(p);
    std::size_t i = 0;
    while (i < parts.size() && ++idx[i] == parts[i].v.size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == parts.size()) break;
  }
  return sum;
}

Json vec_json(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

std::string_view theorem_name(Theorem t) noexcept {
  switch (t) {
    case Theorem::GeneralChebyshev: return "general_chebyshev";
    case Theorem::MarkovStaircase: return "markov_staircase";
    case Theorem::Eisenberg: return "eisenberg";
    case Theorem::ReverseMarkovGen: return "reverse_markov_gen";
    case Theorem::ChebyshevGen: return "chebyshev_gen";
    case Theorem::CantelliGen: return "cantelli_gen";
    case Theorem::HoeffdingGen: return "hoeffding_gen";
    case Theorem::HoeffdingLemma: return "hoeffding_lemma";
    case Theorem::LayerCake: return "layer_cake";
    case Theorem::AbelIdentity: return "abel_identity";
    case Theorem::N1Reduction: return "n1_reduction";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : kAllTheorems) {
    if (theorem_name(t) == name) return t;
  }
  throw Error(Errc::UnknownTheorem, fmt::format("unknown theorem '{}'", name));
}

bool is_identity(Theorem t) noexcept {
  return t == Theorem::LayerCake || t == Theorem::AbelIdentity || t == Theorem::N1Reduction;
}

void validate(const FuzzConfig& c) {
  if (c.trials < 1) throw Error(Errc::InvalidConfig, "trials must be >= 1");
  if (c.support_size.lo < 1 || c.support_size.lo > c.support_size.hi) {
    throw Error(Errc::InvalidConfig, "support_size range is empty");
  }
  if (!(c.value_range.lo < c.value_range.hi) || !std::isfinite(c.value_range.lo) ||
      !std::isfinite(c.value_range.hi)) {
    throw Error(Errc::InvalidConfig, "value_range is empty");
  }
  if (c.ladder_len.lo < 1 || c.ladder_len.lo > c.ladder_len.hi) {
    throw Error(Errc::InvalidConfig, "ladder_len range is empty");
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, Theorem theorem, std::uint64_t trial) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ (static_cast<std::uint64_t>(theorem) + 1) * 0xd1b54a32d192ed03ULL);
  x = splitmix64(x ^ trial);
  return std::mt19937_64(x);
}

Instance random_instance(std::mt19937_64& rng, const FuzzConfig& c, Theorem theorem) {
  const RealRange& vr = c.value_range;
  const int len = uniform_int(rng, c.ladder_len.lo, c.ladder_len.hi);
  // Grid draws make thresholds land on atoms, exercising the >= events.
  const bool on_grid = uniform(rng, 0.0, 1.0) < 0.5;
  Instance inst{.theorem = theorem, .dist = point_mass(0.0)};

  switch (theorem) {
    case Theorem::GeneralChebyshev:
    case Theorem::MarkovStaircase:
    case Theorem::AbelIdentity:
      inst.dist = random_dist(rng, support_size(rng, c, 1), vr.lo, vr.hi, on_grid);
      inst.ladder = random_ladder(rng, len, 1.1 * magnitude(vr), on_grid);
      inst.phi = random_phi(rng, vr, inst.ladder.front());
      break;
    case Theorem::Eisenberg: {
      inst.dist = random_dist(rng, support_size(rng, c, 1), 0.0, magnitude(vr), on_grid);
      inst.ladder = random_ladder(rng, len, 1.1 * magnitude(vr), on_grid);
      for (std::size_t k = 0; k < inst.ladder.size(); ++k) inst.weights.push_back(uniform(rng, -2.0, 5.0));
      if (*std::max_element(inst.weights.begin(), inst.weights.end()) <= 0.0) {
        inst.weights[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(inst.weights.size()) - 1))] =
            uniform(rng, 0.1, 5.0);
      }
      break;
    }
    case Theorem::ReverseMarkovGen:
      inst.dist = random_dist(rng, support_size(rng, c, 1), vr.lo, vr.hi, on_grid);
      inst.upper = std::max(inst.dist.max_value(), 0.0) + (on_grid ? snap(uniform(rng, 0.5, 5.0)) : uniform(rng, 0.1, 5.0));
      inst.ladder = random_ladder(rng, len, inst.upper, on_grid);
      break;
    case Theorem::ChebyshevGen:
    case Theorem::CantelliGen: {
      inst.dist = random_dist(rng, support_size(rng, c, 2), vr.lo, vr.hi, false);
      const double sd = std::sqrt(Atoms(inst.dist).variance());
      inst.ladder = random_ladder(rng, len, 3.0 * sd, false);
      break;
    }
    case Theorem::HoeffdingGen: {
      const int nvars = uniform_int(rng, 2, 4);
      double variance = 0.0;
      for (int i = 0; i < nvars; ++i) {
        const int size = std::clamp(uniform_int(rng, c.support_size.lo, c.support_size.hi), 2, 5);
        FiniteDistribution d = random_dist(rng, size, vr.lo, vr.hi, false);
        variance += Atoms(d).variance();
        const double lo = d.min_value() - uniform(rng, 0.0, 2.0);
        const double hi = d.max_value() + uniform(rng, 0.0, 2.0);
        inst.vars.push_back(make_ranged(std::move(d), lo, hi));
      }
      inst.ladder = random_ladder(rng, len, 3.0 * std::sqrt(variance), false);
      break;
    }
    case Theorem::HoeffdingLemma: {
      const FiniteDistribution raw = random_dist(rng, support_size(rng, c, 2), vr.lo, vr.hi, false);
      const double mean = Atoms(raw).mean();
      inst.dist = pushforward(raw, [mean](double v) { return v - mean; });
      inst.lo = inst.dist.min_value() - uniform(rng, 0.0, 2.0);
      inst.hi = inst.dist.max_value() + uniform(rng, 0.0, 2.0);
      // Keep exp(s^2 (b-a)^2 / 8) finite.
      inst.s = uniform(rng, 0.01, std::min(5.0, 60.0 / (inst.hi - inst.lo)));
      break;
    }
    case Theorem::LayerCake:
      inst.dist = random_dist(rng, support_size(rng, c, 1), vr.lo, vr.hi, on_grid);
      break;
    case Theorem::N1Reduction: {
      constexpr Theorem targets[] = {Theorem::GeneralChebyshev, Theorem::ReverseMarkovGen,
                                     Theorem::ChebyshevGen, Theorem::CantelliGen, Theorem::HoeffdingGen};
      inst.reduction = targets[uniform_int(rng, 0, 4)];
      FuzzConfig single = c;
      single.ladder_len = {1, 1};
      Instance sub = random_instance(rng, single, inst.reduction);
      sub.phi = PositivePart{};
      sub.theorem = Theorem::N1Reduction;
      sub.reduction = inst.reduction;
      return sub;
    }
  }
  return inst;
}

BoundReport evaluate(const Instance& inst) {
  const ThresholdLadder ladder(inst.ladder);
  const Theorem target = inst.theorem == Theorem::N1Reduction ? inst.reduction : inst.theorem;
  switch (target) {
    case Theorem::GeneralChebyshev: return general_chebyshev(inst.dist, inst.phi, ladder);
    case Theorem::MarkovStaircase: return markov_staircase(inst.dist, inst.phi, ladder);
    case Theorem::Eisenberg: return eisenberg(inst.dist, ladder, inst.weights);
    case Theorem::ReverseMarkovGen: return reverse_markov_gen(inst.dist, ladder, inst.upper);
    case Theorem::ChebyshevGen: return chebyshev_gen(inst.dist, ladder);
    case Theorem::CantelliGen: return cantelli_gen(inst.dist, ladder);
    case Theorem::HoeffdingGen: return hoeffding_gen(inst.vars, ladder);
    default: break;
  }
  throw Error(Errc::UnknownTheorem,
              fmt::format("'{}' does not produce a bound report", theorem_name(inst.theorem)));
}

Verdict check_report(const BoundReport& report, double tol_rel) {
  double resum = 0.0;
  for (Eigen::Index k = 0; k < report.coefficients.size(); ++k) {
    resum += report.coefficients[k] * report.tails[k];
  }
  const double allowed = report.rhs + tol_rel * std::max(1.0, std::abs(report.rhs));
  Verdict v{true, 0.0};
  if (!close_scaled(resum, report.lhs, kResumTolerance)) {
    v.pass = false;
    v.resum_mismatch = true;
  }
  if (!(report.lhs <= allowed)) {
    v.pass = false;
    v.margin = report.lhs - allowed;
  }
  return v;
}

Rederived rederive(const Instance& inst) {
  const Theorem target = inst.theorem == Theorem::N1Reduction ? inst.reduction : inst.theorem;
  const std::vector<double>& l = inst.ladder;
  const std::size_t n = l.size();
  const Atoms x(inst.dist);
  Rederived out;
  out.coefficients.resize(n);
  out.tails.resize(n);

  auto cells = [&] {
    for (std::size_t k = 0; k < n; ++k) {
      const double upper = k + 1 < n ? l[k + 1] : std::numeric_limits<double>::infinity();
      out.tails[k] = x.mass([&](double v) { return l[k] <= v && v < upper; });
    }
  };

  switch (target) {
    case Theorem::GeneralChebyshev:
    case Theorem::MarkovStaircase: {
      double prev = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double at = phi_eval(inst.phi, l[k]);
        out.coefficients[k] = target == Theorem::MarkovStaircase ? at : at - prev;
        prev = at;
        if (target == Theorem::GeneralChebyshev) {
          out.tails[k] = x.mass([&](double v) { return v >= l[k]; });
        }
      }
      if (target == Theorem::MarkovStaircase) cells();
      out.rhs = 0.0;
      for (std::size_t i = 0; i < x.v.size(); ++i) out.rhs += phi_eval(inst.phi, x.v[i]) * x.p[i];
      break;
    }
    case Theorem::Eisenberg: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        out.coefficients[k] = inst.weights[k];
        best = std::max(best, inst.weights[k] / l[k]);
      }
      cells();
      out.rhs = x.mean() * best;
      break;
    }
    case Theorem::ReverseMarkovGen:
      for (std::size_t k = 0; k < n; ++k) {
        out.coefficients[k] = (k + 1 < n ? l[k + 1] : inst.upper) - l[k];
        out.tails[k] = x.mass([&](double v) { return v <= l[k]; });
      }
      out.rhs = inst.upper - x.mean();
      break;
    case Theorem::ChebyshevGen: {
      const double m = x.mean();
      for (std::size_t k = 0; k < n; ++k) {
        out.coefficients[k] = l[k] * l[k] - (k > 0 ? l[k - 1] * l[k - 1] : 0.0);
        out.tails[k] = x.mass([&](double v) { return std::abs(v - m) >= l[k]; });
      }
      out.rhs = x.variance();
      break;
    }
    case Theorem::CantelliGen: {
      // Shifted-square route: phi_t(x) = (x + t)^2 at t = var / l_1, normalized
      // by phi_t(l_1), with l_0 = -t.
      const double m = x.mean();
      const double var = x.variance();
      const double t = var / l[0];
      const double norm = (l[0] + t) * (l[0] + t);
      double prev = -t;
      for (std::size_t k = 0; k < n; ++k) {
        out.coefficients[k] = ((l[k] + t) * (l[k] + t) - (prev + t) * (prev + t)) / norm;
        prev = l[k];
        out.tails[k] = x.mass([&](double v) { return v - m >= l[k]; });
      }
      out.rhs = var / (var + l[0] * l[0]);
      break;
    }
    case Theorem::HoeffdingGen: {
      const Atoms sum = enumerate_sum(inst.vars);
      double sum_sq = 0.0;
      for (const auto& var : inst.vars) sum_sq += (var.hi - var.lo) * (var.hi - var.lo);
      const double s = 4.0 * l[0] / sum_sq;
      const double m = sum.mean();
      // Unnormalized e^{s l_k} differences rescaled by e^{-s l_1}.
      const double scale = std::exp(-s * l[0]);
      for (std::size_t k = 0; k < n; ++k) {
        const double below = k > 0 ? std::exp(s * l[k - 1]) : 0.0;
        out.coefficients[k] = (std::exp(s * l[k]) - below) * scale;
        out.tails[k] = sum.mass([&](double v) { return v - m >= l[k]; });
      }
      out.rhs = std::exp(-s * l[0] + s * s * sum_sq / 8.0);
      break;
    }
    default:
      throw Error(Errc::UnknownTheorem, "no enumeration route for this theorem");
  }
  return out;
}

namespace {

bool matches(const BoundReport& r, const Rederived& red) {
  if (static_cast<std::size_t>(r.coefficients.size()) != red.coefficients.size()) return false;
  for (std::size_t k = 0; k < red.coefficients.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    if (!close_scaled(r.coefficients[kk], red.coefficients[k], kIdentityTolerance)) return false;
    if (!close_scaled(r.tails[kk], red.tails[k], kIdentityTolerance)) return false;
  }
  return close_scaled(r.rhs, red.rhs, kIdentityTolerance);
}

// Classical single-threshold bound on P_1, computed from enumerated moments.
double classical_bound(const Instance& inst) {
  const double l = inst.ladder.front();
  switch (inst.reduction) {
    case Theorem::GeneralChebyshev: {
      const Atoms x(inst.dist);
      double pos = 0.0;
      for (std::size_t i = 0; i < x.v.size(); ++i) pos += std::max(x.v[i], 0.0) * x.p[i];
      return pos / l;
    }
    case Theorem::ReverseMarkovGen:
      return (inst.upper - Atoms(inst.dist).mean()) / (inst.upper - l);
    case Theorem::ChebyshevGen: return Atoms(inst.dist).variance() / (l * l);
    case Theorem::CantelliGen: {
      const double var = Atoms(inst.dist).variance();
      return var / (var + l * l);
    }
    case Theorem::HoeffdingGen: {
      double sum_sq = 0.0;
      for (const auto& var : inst.vars) sum_sq += (var.hi - var.lo) * (var.hi - var.lo);
      return std::exp(-2.0 * l * l / sum_sq);
    }
    default: break;
  }
  throw Error(Errc::UnknownTheorem, "no classical form");
}

struct TrialResult {
  bool violated;
  double slack;
};

TrialResult run_trial(const Instance& inst, const ReportHook& hook) {
  switch (inst.theorem) {
    case Theorem::LayerCake: {
      const double a = layer_cake_expectation(inst.dist);
      const double b = moments(inst.dist).mean_abs;
      return {!close_rel(a, b, kIdentityTolerance), -std::abs(a - b)};
    }
    case Theorem::AbelIdentity: {
      const ThresholdLadder ladder(inst.ladder);
      BoundReport g = general_chebyshev(inst.dist, inst.phi, ladder);
      BoundReport m = markov_staircase(inst.dist, inst.phi, ladder);
      if (hook) {
        hook(g);
        hook(m);
      }
      return {!close_rel(g.lhs, m.lhs, kIdentityTolerance), -std::abs(g.lhs - m.lhs)};
    }
    case Theorem::N1Reduction: {
      BoundReport r = evaluate(inst);
      if (hook) hook(r);
      // The single-threshold bound on P_1 is rhs / c_1.
      const double implied = r.rhs / r.coefficients[0];
      const double classical = classical_bound(inst);
      const Rederived red = rederive(inst);
      const bool ok = close_rel(implied, classical, kIdentityTolerance) &&
                      close_scaled(r.tails[0], red.tails[0], kIdentityTolerance) &&
                      check_report(r, kSoundnessTolerance).pass;
      return {!ok, -std::abs(implied - classical)};
    }
    case Theorem::HoeffdingLemma: {
      const LemmaGap gap = hoeffding_lemma_gap(inst.dist, inst.lo, inst.hi, inst.s);
      const Atoms x(inst.dist);
      double mgf = 0.0;
      for (std::size_t i = 0; i < x.v.size(); ++i) mgf += std::exp(inst.s * x.v[i]) * x.p[i];
      const bool sound = gap.mgf <= gap.bound + kSoundnessTolerance * std::max(1.0, gap.bound);
      return {!sound || !close_rel(mgf, gap.mgf, kIdentityTolerance), gap.bound - gap.mgf};
    }
    default: {
      BoundReport r = evaluate(inst);
      if (hook) hook(r);
      const Verdict v = check_report(r, kSoundnessTolerance);
      const bool agrees = matches(r, rederive(inst));
      return {!v.pass || !agrees, r.rhs - r.lhs};
    }
  }
}

}  // namespace

FuzzSummary fuzz_theorem(Theorem theorem, const FuzzConfig& config, const ReportHook& hook) {
  validate(config);
  FuzzSummary summary;
  summary.theorem = std::string(theorem_name(theorem));
  summary.worst_slack = std::numeric_limits<double>::infinity();

  std::optional<Instance> worst;
  std::optional<Instance> worst_violation;
  double worst_violation_slack = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < config.trials; ++trial) {
    auto rng = trial_rng(config.seed, theorem, static_cast<std::uint64_t>(trial));
    const Instance inst = random_instance(rng, config, theorem);
    const TrialResult result = run_trial(inst, hook);
    ++summary.trials_run;
    if (result.slack < summary.worst_slack) {
      summary.worst_slack = result.slack;
      summary.worst_trial = trial;
      if (config.record_worst) worst = inst;
    }
    if (result.violated) {
      ++summary.violations;
      if (!worst_violation || result.slack < worst_violation_slack) {
        worst_violation = inst;
        worst_violation_slack = result.slack;
      }
    }
  }
  if (worst_violation) {
    summary.worst_case = serialize(*worst_violation);
  } else if (worst) {
    summary.worst_case = serialize(*worst);
  }
  return summary;
}

std::string serialize(const Instance& inst) {
  Json j;
  j["theorem"] = theorem_name(inst.theorem);
  if (inst.theorem == Theorem::N1Reduction) j["reduction"] = theorem_name(inst.reduction);
  if (inst.vars.empty()) {
    j["values"] = vec_json(inst.dist.values());
    j["probs"] = vec_json(inst.dist.probs());
  }
  if (!inst.ladder.empty()) j["ladder"] = inst.ladder;
  const Theorem target = inst.theorem == Theorem::N1Reduction ? inst.reduction : inst.theorem;
  if (target == Theorem::GeneralChebyshev || target == Theorem::MarkovStaircase ||
      target == Theorem::AbelIdentity) {
    j["phi"] = to_string(inst.phi);
  }
  if (!inst.weights.empty()) j["weights"] = inst.weights;
  if (inst.theorem == Theorem::ReverseMarkovGen || inst.reduction == Theorem::ReverseMarkovGen) {
    j["M"] = inst.upper;
  }
  if (!inst.vars.empty()) {
    Json vars = Json::array();
    for (const auto& var : inst.vars) {
      vars.push_back({{"values", vec_json(var.dist.values())},
                      {"probs", vec_json(var.dist.probs())},
                      {"lo", var.lo},
                      {"hi", var.hi}});
    }
    j["vars"] = std::move(vars);
  }
  if (inst.theorem == Theorem::HoeffdingLemma) {
    j["range"] = {inst.lo, inst.hi};
    j["s"] = inst.s;
  }
  return j.dump();
}

std::string serialize(const FuzzSummary& s) {
  Json j;
  j["theorem"] = s.theorem;
  j["trials_run"] = s.trials_run;
  j["violations"] = s.violations;
  j["worst_slack"] = s.worst_slack;
  j["worst_trial"] = s.worst_trial;
  j["worst_case"] = s.worst_case ? Json::parse(*s.worst_case) : Json(nullptr);
  return j.dump();
}

double minimize_scalar(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw Error(Errc::BadBracket, "need finite lo < hi and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 1000; ++iter) {
    if (b - a <= tol * std::max(1.0, std::abs(0.5 * (a + b)))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace tailbound::oracle
