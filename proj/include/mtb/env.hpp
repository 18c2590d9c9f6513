#pragma once
// Deterministic reward streams. Each trial owns a splitmix64 generator (a
// Weyl counter pushed through a finalizer), seeded from the experiment seed
// and the trial index, so any trial can be reproduced without generating its
// predecessors and worker scheduling cannot change the draws. Manifests
// record this scheme as "splitmix64-v1".

#include <cstdint>

#include "instance.hpp"

namespace mtb {

class RewardStream {
 public:
  RewardStream(std::uint64_t experiment_seed, std::uint64_t trial_index)
      : state_(start_state(experiment_seed, trial_index)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static std::uint64_t start_state(std::uint64_t experiment_seed, std::uint64_t trial_index) {
    std::uint64_t z = experiment_seed + 0xD1B54A32D192ED03ull * (trial_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// One Bernoulli draw for the given arm, consuming exactly one uniform. A
// plain instance fires on u < mean; a complemented instance (built by
// invert()) fires on u >= 1 - mean, which has the same mean but produces
// exactly one minus the source instance's reward on a shared stream.
inline int sample_reward(const BanditInstance& inst, int arm, RewardStream& stream) {
  if (arm < 1 || arm > static_cast<int>(inst.means.size()))
    throw std::invalid_argument("sample_reward: arm out of range");
  const double u = stream.next_uniform();
  const double mean = inst.means[arm - 1];
  return inst.complemented ? (u >= 1.0 - mean ? 1 : 0) : (u < mean ? 1 : 0);
}

}  // namespace mtb
