#pragma once
// Asymptotic regret rate constants: the instance-dependent factor C such that
// any good adaptive sampler's cumulative regret must grow at least like
// C * ln t. Each bound lists the arms that have to absorb the exploration,
// how many pulls per unit of log-time they need (the coefficient), and the
// mean value those pulls must be able to rule out (the target).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "instance.hpp"
#include "kl.hpp"
#include "oracle.hpp"

namespace mtb {

struct BoundTerm {
  int arm = 0;               // 1-based, original labeling
  double coefficient = 0.0;  // pulls per unit ln t: 1 / D(mu_arm || target)
  double target = 0.0;       // mean level to discriminate against, original reward scale
};

struct BoundResult {
  double constant = 0.0;  // sum over terms of coefficient * |mu_best - mu_arm|
  std::vector<BoundTerm> terms;
  Objective objective;
};

// Identifying the first arm at or above the threshold only requires ruling
// "the arm just below could be at tau" out: one term on arm k*-1.
inline BoundResult crossing_bound(const BanditInstance& inst) {
  const NormalizedInstance norm = normalize(inst);
  const BanditInstance& inc = norm.instance;
  const int kstar = crossing_position(inc);
  const int below = kstar - 1;  // >= 1 by feasibility
  const double divergence = bernoulli_kl(inc.means[below - 1], inc.tau);
  BoundResult out;
  out.objective = {ObjectiveKind::crossing, 1};
  const BoundTerm term{norm.to_original(below), 1.0 / divergence, inc.tau};
  out.terms.push_back(term);
  out.constant = term.coefficient * (inc.means[kstar - 1] - inc.means[below - 1]);
  return out;
}

// Ranked target above the threshold: locating the boundary costs a term on
// the arm just below it (always) and one on the boundary arm itself (only
// when rank >= 2 and the target is not the top arm, since pushing the
// boundary up must stay feasible). Rank 1 is exactly the crossing bound.
// Ranks at or below zero mirror the instance and reuse the positive-rank
// form, mapping arm labels and targets back through the mirror.
inline BoundResult ranked_bound(const BanditInstance& inst, int rank) {
  const NormalizedInstance norm = normalize(inst);
  const BanditInstance& inc = norm.instance;
  const int K = static_cast<int>(inc.means.size());

  if (rank <= 0) {
    const BoundResult inner = ranked_bound(invert(inc), 1 - rank);
    BoundResult out;
    out.objective = {ObjectiveKind::ranked, rank};
    out.constant = inner.constant;
    for (const BoundTerm& t : inner.terms)
      out.terms.push_back({norm.to_original(mirrored_label(K, t.arm)), t.coefficient, 1.0 - t.target});
    return out;
  }

  if (rank == 1) {
    BoundResult out = crossing_bound(inst);
    out.objective = {ObjectiveKind::ranked, 1};
    return out;
  }

  const int kstar = ranked_position(inc, rank);
  const int boundary = crossing_position(inc);
  BoundResult out;
  out.objective = {ObjectiveKind::ranked, rank};
  if (kstar != K) {
    const double divergence = bernoulli_kl(inc.means[boundary - 1], inc.tau);
    const BoundTerm term{norm.to_original(boundary), 1.0 / divergence, inc.tau};
    out.terms.push_back(term);
    out.constant += term.coefficient * (inc.means[kstar - 1] - inc.means[boundary - 1]);
  }
  {
    const double divergence = bernoulli_kl(inc.means[boundary - 2], inc.tau);
    const BoundTerm term{norm.to_original(boundary - 1), 1.0 / divergence, inc.tau};
    out.terms.push_back(term);
    out.constant += term.coefficient * (inc.means[kstar - 1] - inc.means[boundary - 2]);
  }
  return out;
}

// Closest-arm objective: the only cheap confusion moves the adjacent arm on
// the other side of the threshold to the reflection 2*tau - mu_best, where it
// would be exactly as close as the current best. One term on that neighbour.
inline BoundResult proximity_bound(const BanditInstance& inst) {
  const NormalizedInstance norm = normalize(inst);
  const BanditInstance& inc = norm.instance;
  const int kstar = proximity_position(inc);
  const double mu_best = inc.means[kstar - 1];
  // The neighbour on the far side of the threshold; feasibility puts it in range.
  const int adj = mu_best >= inc.tau ? kstar - 1 : kstar + 1;
  const double target = 2.0 * inc.tau - mu_best;
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("degenerate bound target: reflected mean lies outside (0, 1)");
  const double divergence = bernoulli_kl(inc.means[adj - 1], target);
  BoundResult out;
  out.objective = {ObjectiveKind::proximity, 1};
  const BoundTerm term{norm.to_original(adj), 1.0 / divergence, target};
  out.terms.push_back(term);
  out.constant = term.coefficient * std::abs(mu_best - inc.means[adj - 1]);
  return out;
}

inline BoundResult bound_for(const BanditInstance& inst, const Objective& obj) {
  switch (obj.kind) {
    case ObjectiveKind::crossing: return crossing_bound(inst);
    case ObjectiveKind::ranked: return ranked_bound(inst, obj.rank);
    case ObjectiveKind::proximity: return proximity_bound(inst);
  }
  throw std::logic_error("unknown objective kind");
}

// Reference curve C * ln t (zero at t = 1) sampled at the given rounds.
inline std::vector<double> bound_curve(const BoundResult& bound, const std::vector<std::int64_t>& rounds) {
  std::vector<double> out;
  out.reserve(rounds.size());
  for (const std::int64_t t : rounds) {
    if (t < 1) throw std::invalid_argument("bound curve rounds start at 1");
    out.push_back(bound.constant * std::log(static_cast<double>(t)));
  }
  return out;
}

}  // namespace mtb
