#include "tailbound/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace tailbound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

PhiRejection reject(PhiRejection::Reason reason, std::string message) {
  return {reason, std::move(message)};
}

}  // namespace

std::optional<PhiRejection> validate_phi(const Phi& phi) {
  using R = PhiRejection::Reason;
  return std::visit(
      overloaded{
          [](const PositivePart&) -> std::optional<PhiRejection> { return std::nullopt; },
          [](const PowerPositive& f) -> std::optional<PhiRejection> {
            if (!std::isfinite(f.p)) return reject(R::NonFiniteParameter, "power exponent is not finite");
            if (!(f.p > 0.0)) return reject(R::NonpositiveExponent, "power exponent must be > 0");
            return std::nullopt;
          },
          [](const ShiftedSquare& f) -> std::optional<PhiRejection> {
            if (!std::isfinite(f.t)) return reject(R::NonFiniteParameter, "shift is not finite");
            if (!(f.t >= 0.0)) {
              return reject(R::NegativeShift, "shift must be >= 0, otherwise not nondecreasing across 0");
            }
            return std::nullopt;
          },
          [](const ExpScaled& f) -> std::optional<PhiRejection> {
            if (!std::isfinite(f.s)) return reject(R::NonFiniteParameter, "rate is not finite");
            if (!(f.s > 0.0)) return reject(R::NonpositiveRate, "rate must be > 0");
            return std::nullopt;
          },
          [](const PiecewiseConstant& f) -> std::optional<PhiRejection> {
            if (f.levels.size() != f.breakpoints.size() + 1) {
              return reject(R::LevelCountMismatch, "need exactly one more level than breakpoints");
            }
            for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
              if (!std::isfinite(f.breakpoints[i])) {
                return reject(R::NonFiniteParameter, "breakpoint is not finite");
              }
              if (i > 0 && !(f.breakpoints[i] > f.breakpoints[i - 1])) {
                return reject(R::BreakpointsNotIncreasing, "breakpoints must be strictly increasing");
              }
            }
            for (std::size_t i = 0; i < f.levels.size(); ++i) {
              if (!std::isfinite(f.levels[i])) return reject(R::NonFiniteParameter, "level is not finite");
              if (f.levels[i] < 0.0) return reject(R::NegativeLevel, "levels must be nonnegative");
              if (i > 0 && f.levels[i] < f.levels[i - 1]) {
                return reject(R::DecreasingLevel, fmt::format("level {} decreases", i));
              }
            }
            return std::nullopt;
          },
      },
      phi);
}

void require_valid(const Phi& phi) {
  if (auto r = validate_phi(phi)) throw Error(Errc::InvalidPhi, r->message);
}

double phi_eval(const Phi& phi, double x) {
  return std::visit(
      overloaded{
          [x](const PositivePart&) { return x >= 0.0 ? x : 0.0; },
          [x](const PowerPositive& f) { return x >= 0.0 ? std::pow(x, f.p) : 0.0; },
          [x](const ShiftedSquare& f) { return x >= 0.0 ? (x + f.t) * (x + f.t) : 0.0; },
          [x](const ExpScaled& f) { return std::exp(f.s * x); },
          [x](const PiecewiseConstant& f) {
            const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
            return f.levels[static_cast<std::size_t>(it - f.breakpoints.begin())];
          },
      },
      phi);
}

double expect_phi(const FiniteDistribution& d, const Phi& phi) {
  const Eigen::VectorXd mapped = d.values().unaryExpr([&](double v) { return phi_eval(phi, v); });
  return d.probs().dot(mapped);
}

FiniteDistribution pushforward(const FiniteDistribution& d, const Phi& phi) {
  return pushforward(d, [&](double v) { return phi_eval(phi, v); });
}

namespace {

double parse_param(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::InvalidPhi, fmt::format("bad numeric parameter in '{}'", whole));
  }
  return value;
}

}  // namespace

Phi parse_phi(std::string_view text) {
  Phi phi;
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  if (colon == std::string_view::npos) {
    if (name != "pospart") throw Error(Errc::InvalidPhi, fmt::format("unknown phi '{}'", text));
    phi = PositivePart{};
  } else {
    const double param = parse_param(text.substr(colon + 1), text);
    if (name == "power") {
      phi = PowerPositive{param};
    } else if (name == "shifted-square") {
      phi = ShiftedSquare{param};
    } else if (name == "exp") {
      phi = ExpScaled{param};
    } else {
      throw Error(Errc::InvalidPhi, fmt::format("unknown phi '{}'", text));
    }
  }
  require_valid(phi);
  return phi;
}

std::string to_string(const Phi& phi) {
  return std::visit(
      overloaded{
          [](const PositivePart&) { return std::string("pospart"); },
          [](const PowerPositive& f) { return fmt::format("power:{}", f.p); },
          [](const ShiftedSquare& f) { return fmt::format("shifted-square:{}", f.t); },
          [](const ExpScaled& f) { return fmt::format("exp:{}", f.s); },
          [](const PiecewiseConstant& f) {
            return fmt::format("piecewise:[{}]/[{}]", fmt::join(f.breakpoints, ","),
                               fmt::join(f.levels, ","));
          },
      },
      phi);
}

}  // namespace tailbound
