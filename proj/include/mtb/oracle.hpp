#pragma once
// Which arm a clairvoyant would settle on under each objective, and the
// per-arm gaps |mu_best - mu_k| that price every pull of the wrong arm.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"

namespace mtb {

enum class ObjectiveKind { crossing, ranked, proximity };

// crossing: the first arm (in increasing order) at or above the threshold.
// ranked: rank >= 1 picks the rank-th arm at or above the threshold counting
//   upward; rank <= 0 picks the (1-rank)-th arm below it counting downward,
//   so rank 0 is the last arm below the threshold.
// proximity: the arm whose mean is closest to the threshold.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::crossing;
  int rank = 1;  // consulted only when kind == ranked
};

inline std::string to_string(const Objective& obj) {
  switch (obj.kind) {
    case ObjectiveKind::crossing: return "crossing";
    case ObjectiveKind::ranked: return "ranked(" + std::to_string(obj.rank) + ")";
    case ObjectiveKind::proximity: return "proximity";
  }
  throw std::logic_error("unknown objective kind");
}

struct OptimalArm {
  int index = 0;             // 1-based, original labeling
  Objective objective;
  std::vector<double> gaps;  // gaps[k-1] = |mu_best - mu_k|, original labeling
  bool tie = false;          // proximity only: another arm within 1e-12 of the best distance
};

// First arm at or above the threshold on an increasing instance (1-based).
// Guaranteed to exist and exceed 1 by feasibility.
inline int crossing_position(const BanditInstance& increasing) {
  const int K = static_cast<int>(increasing.means.size());
  for (int k = 1; k <= K; ++k) {
    if (increasing.means[k - 1] >= increasing.tau) return k;
  }
  throw std::logic_error("crossing_position: no arm at or above the threshold in a valid instance");
}

// Target position on the increasing view for a ranked objective; throws when
// the requested rank walks off either end of the arm list.
inline int ranked_position(const BanditInstance& increasing, int rank) {
  const int K = static_cast<int>(increasing.means.size());
  const int kstar = crossing_position(increasing) + rank - 1;
  if (kstar < 1 || kstar > K)
    throw std::invalid_argument("no arm with rank " + std::to_string(rank) +
                                " relative to the threshold (have " + std::to_string(K) + " arms)");
  return kstar;
}

// Closest-to-threshold position on the increasing view; ties go to the
// smaller index. tie_out (optional) reports whether another arm comes within
// 1e-12 of the winning distance.
inline int proximity_position(const BanditInstance& increasing, bool* tie_out = nullptr) {
  const int K = static_cast<int>(increasing.means.size());
  int best = 1;
  for (int k = 2; k <= K; ++k) {
    if (std::abs(increasing.means[k - 1] - increasing.tau) <
        std::abs(increasing.means[best - 1] - increasing.tau))
      best = k;
  }
  if (tie_out) {
    *tie_out = false;
    const double best_dist = std::abs(increasing.means[best - 1] - increasing.tau);
    for (int k = 1; k <= K; ++k) {
      if (k != best && std::abs(std::abs(increasing.means[k - 1] - increasing.tau) - best_dist) <= 1e-12)
        *tie_out = true;
    }
  }
  return best;
}

inline OptimalArm optimal_arm(const BanditInstance& inst, const Objective& obj) {
  const NormalizedInstance norm = normalize(inst);
  const BanditInstance& inc = norm.instance;
  const int K = static_cast<int>(inc.means.size());
  int kstar = 0;
  bool tie = false;
  switch (obj.kind) {
    case ObjectiveKind::crossing: kstar = crossing_position(inc); break;
    case ObjectiveKind::ranked: kstar = ranked_position(inc, obj.rank); break;
    case ObjectiveKind::proximity: kstar = proximity_position(inc, &tie); break;
  }
  OptimalArm out;
  out.index = norm.to_original(kstar);
  out.objective = obj;
  out.tie = tie;
  out.gaps.assign(K, 0.0);
  const double best = inc.means[kstar - 1];
  for (int k = 1; k <= K; ++k) out.gaps[norm.to_original(k) - 1] = std::abs(best - inc.means[k - 1]);
  return out;
}

// Total pseudo-regret of a pull-count profile: sum over arms of gap * pulls.
inline double cumulative_pseudo_regret(const BanditInstance& inst, const Objective& obj,
                                       const std::vector<std::int64_t>& pulls) {
  const OptimalArm opt = optimal_arm(inst, obj);
  if (pulls.size() != opt.gaps.size())
    throw std::invalid_argument("pull profile has " + std::to_string(pulls.size()) + " entries for " +
                                std::to_string(opt.gaps.size()) + " arms");
  double total = 0.0;
  for (std::size_t k = 0; k < pulls.size(); ++k) {
    if (pulls[k] < 0) throw std::invalid_argument("negative pull count");
    total += opt.gaps[k] * static_cast<double>(pulls[k]);
  }
  return total;
}

}  // namespace mtb
