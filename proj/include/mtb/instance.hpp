#pragma once
// Problem description: K Bernoulli arms whose means are strictly monotone in
// the arm index, plus a known threshold tau in (0, 1). A feasible instance has
// its smallest mean below tau and its largest at or above it. Arm indices in
// the public API are 1-based and refer to the instance as declared (the
// "original" labeling); helpers translate to the increasing-order view.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtb {

enum class Direction { increasing, decreasing };

struct BanditInstance {
  std::vector<double> means;  // means[k-1] is arm k's success probability
  double tau = 0.5;
  Direction direction = Direction::increasing;
  // Set by invert(): draws fire on the complement of the source instance's
  // event so a mirrored run sees rewards that are exactly one minus the
  // source's on the same stream. Arm means are means[k-1] either way.
  bool complemented = false;
};

inline Direction direction_from_string(const std::string& s) {
  if (s == "increasing") return Direction::increasing;
  if (s == "decreasing") return Direction::decreasing;
  throw std::invalid_argument("direction must be \"increasing\" or \"decreasing\", got \"" + s + "\"");
}

inline std::string to_string(Direction d) {
  return d == Direction::increasing ? "increasing" : "decreasing";
}

// First violated requirement as text, or nullopt when the instance is usable.
inline std::optional<std::string> validate(const BanditInstance& inst) {
  const std::size_t K = inst.means.size();
  if (K < 2) return "instance needs at least two arms";
  if (!(inst.tau > 0.0 && inst.tau < 1.0)) return "threshold must lie strictly inside (0, 1)";
  for (std::size_t i = 0; i < K; ++i) {
    if (!(inst.means[i] >= 0.0 && inst.means[i] <= 1.0))
      return "arm " + std::to_string(i + 1) + " mean outside [0, 1]";
  }
  for (std::size_t i = 1; i < K; ++i) {
    const bool ordered = inst.direction == Direction::increasing ? inst.means[i - 1] < inst.means[i]
                                                                 : inst.means[i - 1] > inst.means[i];
    if (!ordered)
      return "means must be strictly " + to_string(inst.direction) + " (arms " + std::to_string(i) +
             " and " + std::to_string(i + 1) + " are not)";
  }
  const double lowest = inst.direction == Direction::increasing ? inst.means.front() : inst.means.back();
  const double highest = inst.direction == Direction::increasing ? inst.means.back() : inst.means.front();
  if (!(lowest < inst.tau)) return "no arm mean lies below the threshold";
  if (!(highest >= inst.tau)) return "no arm mean lies at or above the threshold";
  return std::nullopt;
}

inline void require_valid(const BanditInstance& inst) {
  if (auto why = validate(inst)) throw std::invalid_argument(*why);
}

// A valid instance reordered so means increase with the arm index, plus the
// label map back to the declared ordering. The map is its own inverse.
struct NormalizedInstance {
  BanditInstance instance;  // direction == increasing
  bool reversed = false;    // true when the original was declared decreasing

  int to_original(int k) const {
    return reversed ? static_cast<int>(instance.means.size()) + 1 - k : k;
  }
  int to_normalized(int k) const { return to_original(k); }
};

inline NormalizedInstance normalize(const BanditInstance& inst) {
  require_valid(inst);
  NormalizedInstance out{inst, inst.direction == Direction::decreasing};
  if (out.reversed) {
    std::reverse(out.instance.means.begin(), out.instance.means.end());
    out.instance.direction = Direction::increasing;
  }
  return out;
}

// Arm label k on an instance corresponds to label K+1-k on its mirror.
inline int mirrored_label(std::size_t num_arms, int k) {
  return static_cast<int>(num_arms) + 1 - k;
}

// Mirror of an increasing instance: output arm k has mean 1 - means[K-k] and
// the threshold becomes 1 - tau, so arms below the threshold swap roles with
// arms at or above it. Output arm k corresponds to input arm K+1-k. The
// complement flag is toggled so reward draws couple exactly (X + X' = 1).
// Throws when the mirror is infeasible, which happens iff some mean equals
// tau exactly (the mirrored top arm then sits exactly on the new threshold
// from the wrong side).
inline BanditInstance invert(const BanditInstance& inst) {
  require_valid(inst);
  if (inst.direction != Direction::increasing)
    throw std::invalid_argument("invert expects an increasing instance; normalize first");
  BanditInstance out;
  out.means.reserve(inst.means.size());
  for (auto it = inst.means.rbegin(); it != inst.means.rend(); ++it) out.means.push_back(1.0 - *it);
  out.tau = 1.0 - inst.tau;
  out.direction = Direction::increasing;
  out.complemented = !inst.complemented;
  if (auto why = validate(out)) throw std::invalid_argument("mirrored instance is infeasible: " + *why);
  return out;
}

}  // namespace mtb
