#ifndef TAILBOUND_TESTS_SUPPORT_HPP
#define TAILBOUND_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tailbound/dist.hpp"

namespace testing {

inline tailbound::FiniteDistribution die() {
  std::vector<tailbound::Atom> atoms;
  for (int i = 1; i <= 6; ++i) atoms.push_back({static_cast<double>(i), 1.0 / 6.0});
  return tailbound::make_finite(atoms);
}

inline tailbound::FiniteDistribution bernoulli(double q) {
  return tailbound::make_finite({{0.0, 1.0 - q}, {1.0, q}});
}

inline tailbound::FiniteDistribution rademacher() {
  return tailbound::make_finite({{-1.0, 0.5}, {1.0, 0.5}});
}

/// Random distribution with 1..12 atoms in [lo, hi].
inline tailbound::FiniteDistribution random_dist(std::mt19937_64& rng, double lo = -10.0,
                                                 double hi = 10.0, int min_size = 1) {
  std::uniform_int_distribution<int> size(min_size, 12);
  std::uniform_real_distribution<double> value(lo, hi);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  std::vector<tailbound::Atom> atoms(static_cast<std::size_t>(size(rng)));
  double total = 0.0;
  for (auto& a : atoms) {
    a = {value(rng), weight(rng)};
    total += a.prob;
  }
  for (auto& a : atoms) a.prob /= total;
  return tailbound::make_finite(atoms);
}

inline std::vector<double> random_ladder(std::mt19937_64& rng, double hi, int max_len = 6) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_real_distribution<double> value(0.0, hi);
  std::vector<double> l;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const double x = value(rng);
    if (x > 0.0) l.push_back(x);
  }
  if (l.empty()) l.push_back(hi / 2);
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

inline bool rel_close(double a, double b, double tol) {
  return a == b || std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing

#endif  // TAILBOUND_TESTS_SUPPORT_HPP
