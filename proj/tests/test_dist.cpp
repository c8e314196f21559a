#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tailbound/dist.hpp"

using namespace tailbound;
using testing::die;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tailbound::Error");
  return Errc::Usage;
}

}  // namespace

TEST_CASE("make_finite builds, merges and sorts") {
  const auto b = make_finite({{1.0, 0.5}, {0.0, 0.5}});
  REQUIRE(b.size() == 2);
  CHECK(b.values()[0] == 0.0);
  CHECK(b.values()[1] == 1.0);
  CHECK(b.probs()[0] == 0.5);

  const auto merged = make_finite({{1.0, 0.3}, {1.0, 0.2}, {2.0, 0.5}});
  REQUIRE(merged.size() == 2);
  CHECK(merged.probs()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(merged.probs()[1] == doctest::Approx(0.5).epsilon(1e-15));

  const auto d6 = die();
  CHECK(d6.size() == 6);
  CHECK(std::abs(d6.probs().sum() - 1.0) <= 1e-12);
}

TEST_CASE("make_finite drops zero-probability pairs and rescales within tolerance") {
  const auto d = make_finite({{3.0, 0.0}, {1.0, 0.5}, {2.0, 0.5 + 5e-10}});
  CHECK(d.size() == 2);
  CHECK(d.min_value() == 1.0);
  CHECK(std::abs(d.probs().sum() - 1.0) <= 1e-15);
}

TEST_CASE("make_finite error paths") {
  CHECK(code_of([] { make_finite(std::span<const Atom>{}); }) == Errc::EmptySupport);
  CHECK(code_of([] { make_finite({{1.0, 0.0}}); }) == Errc::EmptySupport);
  CHECK(code_of([] { make_finite({{1.0, -0.5}, {2.0, 1.5}}); }) == Errc::NegativeProb);
  CHECK(code_of([] { make_finite({{0.0, 0.5}, {1.0, 0.6}}); }) == Errc::ProbSumOutOfTolerance);
  CHECK(code_of([] { make_finite({{0.0, 0.5}, {1.0, 0.5 + 2e-9}}); }) == Errc::ProbSumOutOfTolerance);
  CHECK(code_of([] { make_finite({{NAN, 1.0}}); }) == Errc::NonFiniteValue);
}

TEST_CASE("from_samples tallies frequencies") {
  const std::vector<double> s{1, 1, 2};
  const auto d = from_samples(s);
  REQUIRE(d.size() == 2);
  CHECK(d.probs()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.probs()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const std::vector<double> one{5};
  const auto pm = from_samples(one);
  CHECK(pm.size() == 1);
  CHECK(pm.probs()[0] == 1.0);

  CHECK(code_of([] { from_samples(std::span<const double>{}); }) == Errc::EmptySupport);
}

TEST_CASE("from_samples on 600 simulated die rolls") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> face(1, 6);
  std::vector<double> rolls;
  std::vector<int> tally(7, 0);
  for (int i = 0; i < 600; ++i) {
    const int f = face(rng);
    rolls.push_back(f);
    ++tally[static_cast<std::size_t>(f)];
  }
  const auto d = from_samples(rolls);
  REQUIRE(d.size() == 6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    CHECK(d.probs()[i] == doctest::Approx(tally[static_cast<std::size_t>(i + 1)] / 600.0));
    CHECK(std::abs(d.probs()[i] - 1.0 / 6.0) <= 0.06);
  }
}

TEST_CASE("moments") {
  const Moments m = moments(die());
  CHECK(m.mean == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(m.variance == doctest::Approx(35.0 / 12.0).epsilon(1e-14));
  CHECK(m.mean_abs == doctest::Approx(3.5).epsilon(1e-14));

  const Moments pm = moments(point_mass(-2.25));
  CHECK(pm.mean == -2.25);
  CHECK(pm.variance == 0.0);

  const Moments r = moments(testing::rademacher());
  CHECK(r.mean == 0.0);
  CHECK(r.variance == 1.0);
  CHECK(r.mean_abs == 1.0);
}

TEST_CASE("prob queries on the die") {
  const auto d = die();
  CHECK(prob(d, Query::ge(5)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(prob(d, Query::gt(5)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(prob(d, Query::le(2)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(prob(d, Query::lt(2)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(prob(d, Query::interval(2, 5)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(prob(d, Query::ge(d.min_value())) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([&] { prob(d, Query::interval(3, 3)); }) == Errc::BadInterval);
}

TEST_CASE("layer_cake_expectation examples") {
  CHECK(layer_cake_expectation(die()) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(layer_cake_expectation(point_mass(4.0)) == 4.0);
  CHECK(layer_cake_expectation(make_finite({{-2.0, 0.5}, {2.0, 0.5}})) == 2.0);
  CHECK(layer_cake_expectation(point_mass(0.0)) == 0.0);
}

TEST_CASE("convolve examples") {
  const auto two = convolve(testing::bernoulli(0.5), testing::bernoulli(0.5));
  REQUIRE(two.size() == 3);
  CHECK(two.probs()[0] == 0.25);
  CHECK(two.probs()[1] == 0.5);
  CHECK(two.probs()[2] == 0.25);

  const auto d = die();
  const auto same = convolve(d, point_mass(0.0));
  CHECK(same.values() == d.values());
  CHECK((same.probs() - d.probs()).cwiseAbs().maxCoeff() <= 1e-15);

  const auto sum = convolve(d, d);
  CHECK(sum.size() == 11);
  CHECK(prob(sum, Query::interval(7, 7.5)) == doctest::Approx(6.0 / 36.0).epsilon(1e-14));
}

TEST_CASE("pushforward examples") {
  const auto sq = pushforward(die(), [](double x) { return x * x; });
  REQUIRE(sq.size() == 6);
  CHECK(sq.values()[5] == 36.0);

  const auto pos = pushforward(testing::rademacher(), [](double x) { return std::max(x, 0.0); });
  REQUIRE(pos.size() == 2);
  CHECK(pos.values()[0] == 0.0);
  CHECK(pos.probs()[0] == 0.5);

  const auto shifted = pushforward(die(), [](double x) { return std::max(x - 3.5, 0.0); });
  REQUIRE(shifted.size() == 4);
  CHECK(shifted.values()[0] == 0.0);
  CHECK(shifted.probs()[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(shifted.values()[1] == 0.5);
  CHECK(shifted.values()[2] == 1.5);
  CHECK(shifted.values()[3] == 2.5);
  CHECK(shifted.probs()[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("make_ranged validates containment") {
  CHECK(code_of([] { make_ranged(die(), 2.0, 6.0); }) == Errc::InvalidRange);
  CHECK(code_of([] { make_ranged(point_mass(1.0), 1.0, 1.0); }) == Errc::InvalidRange);
  CHECK(make_ranged(die(), 1.0, 6.0).hi == 6.0);
}

TEST_CASE("property: construction invariants and layer cake over random seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto d = testing::random_dist(rng);
    CHECK(std::abs(d.probs().sum() - 1.0) <= 1e-12);
    CHECK((d.probs().array() > 0.0).all());
    for (Eigen::Index i = 1; i < d.size(); ++i) CHECK(d.values()[i] > d.values()[i - 1]);
    CHECK(testing::rel_close(layer_cake_expectation(d), moments(d).mean_abs, 1e-12));
  }
}

TEST_CASE("property: GE/LT partition and monotone tails") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto d = testing::random_dist(rng);
    std::uniform_real_distribution<double> x(-12.0, 12.0);
    double a = x(rng), b = x(rng);
    if (a > b) std::swap(a, b);
    // Each atom lands in exactly one of the two events.
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      CHECK(Query::ge(a).contains(d.values()[i]) != Query::lt(a).contains(d.values()[i]));
    }
    CHECK(std::abs(prob(d, Query::ge(a)) + prob(d, Query::lt(a)) - 1.0) <= 1e-12);
    CHECK(prob(d, Query::ge(a)) >= prob(d, Query::ge(b)));
    // Thresholds exactly on atoms.
    const double atom = d.values()[d.size() / 2];
    CHECK(std::abs(prob(d, Query::ge(atom)) + prob(d, Query::lt(atom)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: convolution adds means and variances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto a = testing::random_dist(rng);
    const auto b = testing::random_dist(rng);
    const Moments ma = moments(a), mb = moments(b), ms = moments(convolve(a, b));
    CHECK(std::abs(ms.mean - (ma.mean + mb.mean)) <= 1e-12 * std::max(1.0, std::abs(ms.mean)));
    CHECK(testing::rel_close(ms.variance, ma.variance + mb.variance, 1e-12));
  }
}
