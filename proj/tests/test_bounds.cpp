#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "mtb/bounds.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using namespace mtb;

namespace {

BanditInstance ten_arm() {
  BanditInstance inst;
  inst.means = {0.038, 0.041, 0.078, 0.36, 0.533, 0.796, 0.814, 0.85, 0.94, 0.967};
  inst.tau = 0.6;
  return inst;
}

}  // namespace

TEST_CASE("crossing constant matches the high-precision reference") {
  const BoundResult b = crossing_bound(ten_arm());
  CHECK_THAT(b.constant, WithinRel(28.55519606036596951147, 1e-12));
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].arm == 5);
  CHECK(b.terms[0].target == 0.6);
  CHECK_THAT(b.terms[0].coefficient, WithinRel(1.0 / 0.009210232682136567588712, 1e-12));

  BanditInstance two;
  two.means = {0.3, 0.7};
  two.tau = 0.5;
  const BoundResult b2 = crossing_bound(two);
  CHECK_THAT(b2.constant, WithinRel(4.86127864347187960847, 1e-12));
  CHECK(b2.terms[0].arm == 1);
}

TEST_CASE("ranked constants match the high-precision references") {
  const BanditInstance inst = ten_arm();

  const BoundResult up = ranked_bound(inst, 4);
  CHECK_THAT(up.constant, WithinRel(45.83301574235763091892, 1e-12));
  REQUIRE(up.terms.size() == 2);
  CHECK(up.terms[0].arm == 6);  // the boundary arm itself comes first
  CHECK(up.terms[1].arm == 5);
  CHECK(up.terms[0].target == 0.6);
  CHECK(up.terms[1].target == 0.6);

  const BoundResult down = ranked_bound(inst, -2);
  CHECK_THAT(down.constant, WithinRel(57.59393263178696401899, 1e-12));
  REQUIRE(down.terms.size() == 2);
  CHECK(down.terms[0].arm == 5);
  CHECK(down.terms[1].arm == 6);
  CHECK_THAT(down.terms[0].target, WithinRel(0.6, 1e-15));
  CHECK_THAT(down.terms[1].target, WithinRel(0.6, 1e-15));
  CHECK(down.objective.rank == -2);

  CHECK_THROWS_WITH(ranked_bound(inst, -5), ContainsSubstring("no arm with rank"));
  CHECK_THROWS_WITH(ranked_bound(inst, 6), ContainsSubstring("no arm with rank"));
}

TEST_CASE("proximity constant matches the high-precision reference") {
  const BoundResult b = proximity_bound(ten_arm());
  CHECK_THAT(b.constant, WithinRel(6.449953751472626806556, 1e-12));
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].arm == 6);                      // neighbour on the far side of the threshold
  CHECK(b.terms[0].target == 2.0 * 0.6 - 0.533);   // reflection of the best mean
  CHECK(b.terms[0].target == 0.6669999999999999);  // pinned as a double
}

TEST_CASE("rank one is exactly the crossing bound") {
  RewardStream rng(41, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const BanditInstance inst = test::random_instance(rng, 2 + static_cast<int>(rng.next_u64() % 7));
    const BoundResult a = crossing_bound(inst);
    const BoundResult b = ranked_bound(inst, 1);
    CHECK(a.constant == b.constant);
    REQUIRE(b.terms.size() == 1);
    CHECK(a.terms[0].arm == b.terms[0].arm);
    CHECK(a.terms[0].coefficient == b.terms[0].coefficient);
    CHECK(a.terms[0].target == b.terms[0].target);
    CHECK(b.objective.kind == ObjectiveKind::ranked);
  }
}

TEST_CASE("the boundary term drops when the target is the top arm") {
  BanditInstance inst;
  inst.means = {0.1, 0.2, 0.6, 0.8};
  inst.tau = 0.5;
  const BoundResult b = ranked_bound(inst, 2);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].arm == 2);  // only the arm just below the boundary remains
  CHECK_THAT(b.constant, WithinRel((0.8 - 0.2) / bernoulli_kl(0.2, 0.5), 1e-15));
}

TEST_CASE("two-sided ranked bound decomposes into its two terms") {
  BanditInstance inst;
  inst.means = {0.1, 0.2, 0.6, 0.7, 0.9};
  inst.tau = 0.5;
  const BoundResult b = ranked_bound(inst, 2);
  REQUIRE(b.terms.size() == 2);
  CHECK(b.terms[0].arm == 3);
  CHECK(b.terms[1].arm == 2);
  CHECK_THAT(b.constant,
             WithinRel(0.1 / bernoulli_kl(0.6, 0.5) + 0.5 / bernoulli_kl(0.2, 0.5), 1e-15));
}

TEST_CASE("below-threshold ranks agree with the direct closed form") {
  RewardStream rng(43, 0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const BanditInstance inst = test::random_instance(rng, 3 + static_cast<int>(rng.next_u64() % 6));
    const NormalizedInstance norm = normalize(inst);
    const std::vector<double>& m = norm.instance.means;
    const double tau = inst.tau;
    const int kc = crossing_position(norm.instance);
    for (int r = 0; r >= 2 - kc; --r) {
      const int ks = kc + r - 1;
      double expect = std::abs(m[ks - 1] - m[kc - 1]) / bernoulli_kl(m[kc - 1], tau);
      if (r <= -1 && ks != 1)
        expect += std::abs(m[ks - 1] - m[kc - 2]) / bernoulli_kl(m[kc - 2], tau);
      const BoundResult b = ranked_bound(inst, r);
      // The mirror path evaluates divergences at 1 - m, whose rounding shifts
      // threshold-hugging divergences by up to ~eps/margin relative.
      CHECK_THAT(b.constant, WithinRel(expect, 1e-10));
      // Terms sit on the boundary pair, never on the target arm.
      for (const BoundTerm& t : b.terms) {
        CHECK(t.arm != norm.to_original(ks));
        CHECK_THAT(t.target, WithinRel(tau, 1e-15));
      }
      ++checked;
    }
  }
  CHECK(checked >= 200);  // every instance contributes at least rank zero
}

TEST_CASE("proximity bound reflects across whichever side the best arm is on") {
  BanditInstance above;
  above.means = {0.2, 0.65, 0.9};
  above.tau = 0.6;
  const BoundResult b = proximity_bound(above);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].arm == 1);  // best arm 2 sits above, so the confusable arm is below
  CHECK_THAT(b.terms[0].target, WithinRel(0.55, 1e-15));
  CHECK_THAT(b.constant, WithinRel(0.45 / bernoulli_kl(0.2, 2.0 * 0.6 - 0.65), 1e-15));
}

TEST_CASE("proximity bound rejects reflections that leave the reward range") {
  BanditInstance inst;
  inst.means = {0.5, 1.0};
  inst.tau = 0.75;  // exact tie, lower arm wins, reflection lands exactly at one
  CHECK_THROWS_WITH(proximity_bound(inst), ContainsSubstring("degenerate bound target"));
}

TEST_CASE("the constant explodes as the gap below the threshold vanishes") {
  BanditInstance inst;
  inst.means = {0.599999, 0.9};
  inst.tau = 0.6;
  const BoundResult b = crossing_bound(inst);
  CHECK(b.constant > 1e6);
  CHECK_THAT(b.constant, WithinRel((0.9 - 0.599999) / 2.083332754751132694212e-12, 1e-8));
}

TEST_CASE("declared-decreasing instances report original labels") {
  BanditInstance down = ten_arm();
  std::reverse(down.means.begin(), down.means.end());
  down.direction = Direction::decreasing;
  const BoundResult b = crossing_bound(down);
  CHECK_THAT(b.constant, WithinRel(28.55519606036596951147, 1e-12));
  CHECK(b.terms[0].arm == 6);  // arm 6 of the declared order holds mean 0.533
}

TEST_CASE("every bound is a positive finite sum of its terms") {
  RewardStream rng(47, 0);
  for (int trial = 0; trial < 150; ++trial) {
    const BanditInstance inst = test::random_instance(rng, 2 + static_cast<int>(rng.next_u64() % 7));
    const std::vector<Objective> objectives = {
        {ObjectiveKind::crossing, 1}, {ObjectiveKind::proximity, 1}, {ObjectiveKind::ranked, 0}};
    for (const Objective& obj : objectives) {
      const BoundResult b = bound_for(inst, obj);
      CHECK(std::isfinite(b.constant));
      CHECK(b.constant > 0.0);
      const int best = optimal_arm(inst, obj).index;
      double sum = 0.0;
      for (const BoundTerm& t : b.terms) {
        CHECK(t.arm != best);
        CHECK(t.coefficient > 0.0);
        CHECK(t.target > 0.0);
        CHECK(t.target < 1.0);
        sum += t.coefficient * std::abs(inst.means[best - 1] - inst.means[t.arm - 1]);
      }
      CHECK_THAT(b.constant, WithinRel(sum, 1e-12));
    }
  }
}

TEST_CASE("the reference curve starts at zero and rejects pre-history rounds") {
  const BoundResult b = crossing_bound(ten_arm());
  const std::vector<double> curve = bound_curve(b, {1, 10, 100});
  REQUIRE(curve.size() == 3);
  CHECK(curve[0] == 0.0);
  CHECK_THAT(curve[2], WithinRel(2.0 * curve[1], 1e-12));
  CHECK_THROWS_AS(bound_curve(b, {0, 10}), std::invalid_argument);
}
