#ifndef TAILBOUND_TRANSFORMS_HPP
#define TAILBOUND_TRANSFORMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tailbound/dist.hpp"

namespace tailbound {

/// x -> max(x, 0)
struct PositivePart {};

/// x -> x^p for x >= 0, else 0.
struct PowerPositive {
  double p;
};

/// x -> (x + t)^2 for x >= 0, else 0. Nondecreasing only for t >= 0.
struct ShiftedSquare {
  double t;
};

/// x -> exp(s x) on all of R.
struct ExpScaled {
  double s;
};

/// Right-continuous step function. levels[0] applies below breakpoints[0],
/// levels[j] on [breakpoints[j-1], breakpoints[j]).
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> levels;
};

/// Nonnegative nondecreasing transform applied to a variable before taking
/// expectations.
using Phi = std::variant<PositivePart, PowerPositive, ShiftedSquare, ExpScaled, PiecewiseConstant>;

struct PhiRejection {
  enum class Reason {
    NonpositiveExponent,
    NegativeShift,
    NonpositiveRate,
    NonFiniteParameter,
    LevelCountMismatch,
    BreakpointsNotIncreasing,
    NegativeLevel,
    DecreasingLevel,
  };
  Reason reason;
  std::string message;
};

/// std::nullopt when phi satisfies its variant's invariants.
std::optional<PhiRejection> validate_phi(const Phi& phi);

/// Throws Error(InvalidPhi) carrying the rejection message.
void require_valid(const Phi& phi);

double phi_eval(const Phi& phi, double x);

/// E[phi(X)] = sum of phi(v_i) p_i.
double expect_phi(const FiniteDistribution& d, const Phi& phi);

/// Law of phi(X).
FiniteDistribution pushforward(const FiniteDistribution& d, const Phi& phi);

/// Parses `pospart`, `power:<p>`, `shifted-square:<t>`, `exp:<s>`.
Phi parse_phi(std::string_view text);

std::string to_string(const Phi& phi);

}  // namespace tailbound

#endif  // TAILBOUND_TRANSFORMS_HPP
