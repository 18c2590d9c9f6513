#include <catch_amalgamated.hpp>

#include <cmath>

#include "mtb/env.hpp"
#include "mtb/kl.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace mtb;

// Reference values below were computed independently with 50-digit arithmetic
// and frozen here; comparisons use 1e-12 relative tolerance unless the
// quantity itself comes out of a bisection (then absolute 2e-9, twice the
// bracket stop).

TEST_CASE("bernoulli divergence matches frozen references") {
  CHECK_THAT(bernoulli_kl(0.533, 0.6), WithinRel(0.009210232682136567588712, 1e-12));
  CHECK_THAT(bernoulli_kl(0.038, 0.6), WithinRel(0.7393479543939200205142, 1e-12));
  CHECK_THAT(bernoulli_kl(0.796, 0.6), WithinRel(0.08764265751426824526426, 1e-12));
  CHECK_THAT(bernoulli_kl(0.36, 0.6), WithinRel(0.1169050981615140992454, 1e-12));
  CHECK_THAT(bernoulli_kl(0.1, 0.5), WithinRel(0.3680642071684970577136, 1e-12));
  CHECK_THAT(bernoulli_kl(0.0, 0.5), WithinRel(0.6931471805599453094172, 1e-12));  // ln 2
  CHECK_THAT(bernoulli_kl(1.0, 0.25), WithinRel(std::log(4.0), 1e-12));
}

TEST_CASE("bernoulli divergence edge conventions") {
  CHECK(bernoulli_kl(0.3, 0.3) == 0.0);
  CHECK(bernoulli_kl(0.0, 0.0) == 0.0);
  CHECK(bernoulli_kl(1.0, 1.0) == 0.0);
  CHECK(bernoulli_kl(0.5, 0.0) == kInfinity);
  CHECK(bernoulli_kl(0.5, 1.0) == kInfinity);
  CHECK(bernoulli_kl(0.0, 1.0) == kInfinity);
  CHECK(bernoulli_kl(1.0, 0.0) == kInfinity);
  CHECK_THROWS_AS(bernoulli_kl(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_kl(0.5, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_kl(std::nan(""), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_kl(0.5, std::nan("")), std::invalid_argument);
}

TEST_CASE("divergence is positive and increases away from the base point") {
  RewardStream rng(7, 0);
  for (int i = 0; i < 500; ++i) {
    const double p = rng.next_uniform();
    const double q1 = rng.next_uniform() * 0.98 + 0.01;
    CHECK(bernoulli_kl(p, q1) >= 0.0);
    // moving q further from p (same side) cannot decrease the divergence
    const double q2 = q1 < p ? q1 * 0.5 : q1 + (1.0 - q1) * 0.5;
    CHECK(bernoulli_kl(p, q2) >= bernoulli_kl(p, q1) - 1e-15);
  }
}

TEST_CASE("one-sided divergence vanishes at and above the target") {
  CHECK(one_sided_kl(0.6, 0.6) == 0.0);
  CHECK(one_sided_kl(0.7, 0.6) == 0.0);
  CHECK(one_sided_kl(1.0, 0.0) == 0.0);
  CHECK(one_sided_kl(0.533, 0.6) == bernoulli_kl(0.533, 0.6));  // bit-identical when below
  CHECK_THAT(one_sided_kl(0.038, 0.6), WithinRel(0.7393479543939200205142, 1e-12));
}

TEST_CASE("exploration budget matches frozen references") {
  const ExplorationSchedule sched{3.1};
  CHECK_THAT(exploration_budget(1000000, sched), WithinRel(21.95546549283990781923, 1e-12));
  CHECK_THAT(exploration_budget(100000, sched), WithinRel(19.08768357378460277777, 1e-12));
  CHECK(exploration_budget(1, sched) == 0.0);
  CHECK_THAT(exploration_budget(2, sched), WithinRel(std::log(2.0), 1e-12));  // ln ln 2 < 0 clamps to 0
  CHECK_THAT(exploration_budget(3, sched),
             WithinRel(std::log(3.0) + 3.1 * std::log(std::log(3.0)), 1e-12));
  CHECK_THROWS_AS(exploration_budget(0, sched), std::invalid_argument);
}

TEST_CASE("exploration budget is nondecreasing in the round count") {
  const ExplorationSchedule sched{3.5};
  double prev = 0.0;
  for (std::int64_t n = 1; n < 2000000; n = n * 2 + 1) {
    const double b = exploration_budget(n, sched);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("schedule constant must exceed 3") {
  CHECK_THROWS_AS(ExplorationSchedule{3.0}, std::invalid_argument);
  CHECK_THROWS_AS(ExplorationSchedule{2.0}, std::invalid_argument);
  CHECK_THROWS_AS(ExplorationSchedule{std::nan("")}, std::invalid_argument);
  CHECK_NOTHROW(ExplorationSchedule{3.0000001});
}

TEST_CASE("confidence ends match frozen bisection references") {
  // sup/inf of q with 10 * D(0.5 || q) <= 2
  CHECK_THAT(kl_upper_from_budget(0.5, 10, 2.0), WithinAbs(0.7870888163810812307448, 2e-9));
  CHECK_THAT(kl_lower_from_budget(0.5, 10, 2.0), WithinAbs(0.2129111836189187692552, 2e-9));
}

TEST_CASE("upper end agrees with a brute-force scan of the constraint") {
  // Independent localization of sup{q : 10 * D(0.5 || q) <= 2} on a 1e-7 grid.
  double first_bad = 1.0;
  for (double q = 0.5; q <= 1.0; q += 1e-7) {
    if (10.0 * bernoulli_kl(0.5, q) > 2.0) { first_bad = q; break; }
  }
  const double ui = kl_upper_from_budget(0.5, 10, 2.0);
  CHECK(ui <= first_bad);
  CHECK(ui >= first_bad - 2e-7);
}

TEST_CASE("confidence ends bracket the mean and satisfy the budget identity") {
  RewardStream rng(11, 0);
  const ExplorationSchedule sched{3.1};
  for (int i = 0; i < 300; ++i) {
    const double mu = rng.next_uniform();
    const auto t = static_cast<std::int64_t>(std::floor(std::exp(rng.next_uniform() * std::log(1e6)))) + 1;
    const auto n = static_cast<std::int64_t>(std::floor(std::exp(rng.next_uniform() * std::log(1e7)))) + 3;
    const double f = exploration_budget(n, sched);
    const double ui = kl_upper_from_budget(mu, t, f);
    const double li = kl_lower_from_budget(mu, t, f);
    REQUIRE(li <= mu);
    REQUIRE(mu <= ui);
    const double td = static_cast<double>(t);
    // away from the saturated ends the budget identity must hold tightly
    if (ui < 1.0) CHECK(std::abs(td * bernoulli_kl(mu, ui) - f) <= 1e-6);
    if (li > 0.0) CHECK(std::abs(td * bernoulli_kl(mu, li) - f) <= 1e-6);
  }
}

TEST_CASE("confidence ends respond to budget and pull count as expected") {
  const ExplorationSchedule sched{3.1};
  // zero budget pins both ends to the mean, bit-exactly
  CHECK(kl_upper_index(0.37, 5, 1, sched) == 0.37);
  CHECK(kl_lower_index(0.37, 5, 1, sched) == 0.37);
  // wider budget (larger n) widens the interval
  const double u1 = kl_upper_index(0.4, 20, 100, sched);
  const double u2 = kl_upper_index(0.4, 20, 10000, sched);
  CHECK(u2 >= u1 - 1e-12);
  // more pulls tighten it
  const double u3 = kl_upper_index(0.4, 2000, 100, sched);
  CHECK(u3 <= u1 + 1e-12);
  CHECK(u3 - 0.4 < 0.05);
  // degenerate means stay inside [0, 1]
  CHECK(kl_upper_index(1.0, 3, 50, sched) == 1.0);
  CHECK(kl_lower_index(0.0, 3, 50, sched) == 0.0);
  CHECK(kl_upper_index(0.0, 1, 50, sched) > 0.0);
  CHECK(kl_lower_index(1.0, 1, 50, sched) < 1.0);
}

TEST_CASE("confidence ends reject bad inputs") {
  const ExplorationSchedule sched{3.1};
  CHECK_THROWS_AS(kl_upper_index(0.5, 0, 10, sched), std::invalid_argument);
  CHECK_THROWS_AS(kl_lower_index(0.5, 0, 10, sched), std::invalid_argument);
  CHECK_THROWS_AS(kl_upper_index(1.5, 1, 10, sched), std::invalid_argument);
  CHECK_THROWS_AS(kl_upper_from_budget(0.5, 1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kl_upper_from_budget(0.5, 1, std::nan("")), std::invalid_argument);
}
