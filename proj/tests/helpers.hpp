#pragma once
// Shared test utilities: seeded random feasible instances and a scripted
// driver for the samplers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mtb/env.hpp"
#include "mtb/instance.hpp"
#include "mtb/policies.hpp"

namespace mtb::test {

inline double uniform_in(RewardStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_uniform();
}

// Random valid instance: K means separated by at least `min_gap`, threshold
// placed strictly between two adjacent means with at least `tau_margin` of
// clearance on both sides, random declared direction.
inline BanditInstance random_instance(RewardStream& rng, int num_arms, double min_gap = 0.004,
                                      double tau_margin_frac = 0.05) {
  while (true) {
    std::vector<double> means(num_arms);
    for (double& m : means) m = uniform_in(rng, 0.02, 0.98);
    std::sort(means.begin(), means.end());
    bool separated = true;
    for (int i = 1; i < num_arms; ++i)
      if (means[i] - means[i - 1] < min_gap) separated = false;
    if (!separated) continue;

    // Crossing lands between arms j and j+1 (1-based), uniformly.
    const int j = 1 + static_cast<int>(rng.next_uniform() * (num_arms - 1));
    const double lo = means[j - 1], hi = means[j];
    const double tau = lo + (hi - lo) * uniform_in(rng, tau_margin_frac, 1.0 - tau_margin_frac);

    BanditInstance inst;
    inst.means = means;
    inst.tau = tau;
    if (rng.next_u64() & 1) {
      std::reverse(inst.means.begin(), inst.means.end());
      inst.direction = Direction::decreasing;
    }
    if (!validate(inst)) return inst;
  }
}

// Feed a sampler `rounds` rewards drawn from reward_fn(arm, pull_index).
inline void drive(Sampler& sampler, std::int64_t rounds,
                  const std::function<int(int arm, std::int64_t pull_index)>& reward_fn) {
  std::vector<std::int64_t> pulls(64, 0);
  for (std::int64_t n = 0; n < rounds; ++n) {
    const int arm = sampler.select_arm();
    sampler.update(arm, reward_fn(arm, pulls[arm]++));
  }
}

}  // namespace mtb::test
