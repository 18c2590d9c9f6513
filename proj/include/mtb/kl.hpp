#pragma once
// Bernoulli divergences and KL confidence indices. Probabilities are doubles
// in [0, 1]; an infinite divergence is reported as +infinity so it orders
// above every finite budget.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mtb {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// D(p || q) between Bernoulli(p) and Bernoulli(q), with 0*log(0) = 0.
// q in {0, 1} gives +infinity unless p matches it exactly. NaN and values
// outside [0, 1] are rejected.
inline double bernoulli_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli_kl: first argument outside [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bernoulli_kl: second argument outside [0, 1]");
  if (q == 0.0) return p == 0.0 ? 0.0 : kInfinity;
  if (q == 1.0) return p == 1.0 ? 0.0 : kInfinity;
  if (p == 0.0) return -std::log1p(-q);
  if (p == 1.0) return -std::log(q);
  // log1p keeps the two terms accurate when p and q nearly coincide, where the
  // naive p*log(p/q) form cancels away most of the significand.
  const double d = p - q;
  return p * std::log1p(d / q) + (1.0 - p) * std::log1p(-d / (1.0 - q));
}

// Cost of raising a mean p up to q: the divergence when p sits below q and
// exactly zero otherwise.
inline double one_sided_kl(double p, double q) {
  return p < q ? bernoulli_kl(p, q) : 0.0;
}

// Exploration budget f(n) = max(0, ln n) + c * max(0, ln ln n). The schedule
// constant must exceed 3 for the walk-style samplers' guarantees to hold, so
// construction rejects anything at or below it.
struct ExplorationSchedule {
  double c = 3.1;

  explicit ExplorationSchedule(double c_ = 3.1) : c(c_) {
    if (!(c > 3.0)) throw std::invalid_argument("exploration constant must exceed 3");
  }
};

inline double exploration_budget(std::int64_t n, const ExplorationSchedule& sched) {
  if (n < 1) throw std::invalid_argument("exploration budget needs a round count >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  const double lnln_n = ln_n > 0.0 ? std::log(ln_n) : 0.0;
  return std::max(0.0, ln_n) + sched.c * std::max(0.0, lnln_n);
}

// Largest q in [mu_hat, 1] with t * D(mu_hat || q) <= budget. Bisection keeps
// the low end feasible; it returns once the bracket is under 1e-9 AND the
// feasible end's constraint residual is under 1e-7 (the constraint is steep in
// q near the edges, so a small bracket alone does not make the residual
// small). When 100 halvings cannot produce that certificate the root is
// hugging 1 closer than doubles can express (adjacent representables already
// jump the budget by more than the tolerance, or the root rounds to 1), so
// the trivial end is returned: the interval is merely wider, never wrong.
inline double kl_upper_from_budget(double mu_hat, std::int64_t t, double budget) {
  if (!(mu_hat >= 0.0 && mu_hat <= 1.0)) throw std::invalid_argument("kl index: mean outside [0, 1]");
  if (t < 1) throw std::invalid_argument("kl index: pull count must be >= 1");
  if (!(budget >= 0.0)) throw std::invalid_argument("kl index: budget must be >= 0");
  if (budget == 0.0 || mu_hat == 1.0) return mu_hat;
  if (budget == kInfinity) return 1.0;
  const double td = static_cast<double>(t);
  double lo = mu_hat;
  double hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (td * bernoulli_kl(mu_hat, mid) <= budget) lo = mid; else hi = mid;
    if (hi - lo <= 1e-9 && budget - td * bernoulli_kl(mu_hat, lo) <= 1e-7) return lo;
  }
  return budget - td * bernoulli_kl(mu_hat, lo) <= 9e-7 ? lo : 1.0;
}

// Mirror image: smallest q in [0, mu_hat] with t * D(mu_hat || q) <= budget,
// with the same certify-or-saturate convention at 0.
inline double kl_lower_from_budget(double mu_hat, std::int64_t t, double budget) {
  if (!(mu_hat >= 0.0 && mu_hat <= 1.0)) throw std::invalid_argument("kl index: mean outside [0, 1]");
  if (t < 1) throw std::invalid_argument("kl index: pull count must be >= 1");
  if (!(budget >= 0.0)) throw std::invalid_argument("kl index: budget must be >= 0");
  if (budget == 0.0 || mu_hat == 0.0) return mu_hat;
  if (budget == kInfinity) return 0.0;
  const double td = static_cast<double>(t);
  double lo = 0.0;      // infeasible end
  double hi = mu_hat;   // feasible end
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (td * bernoulli_kl(mu_hat, mid) <= budget) hi = mid; else lo = mid;
    if (hi - lo <= 1e-9 && budget - td * bernoulli_kl(mu_hat, hi) <= 1e-7) return hi;
  }
  return budget - td * bernoulli_kl(mu_hat, hi) <= 9e-7 ? hi : 0.0;
}

// Indices at round n: the budget is f(n) and t is the arm's pull count.
inline double kl_upper_index(double mu_hat, std::int64_t t, std::int64_t n, const ExplorationSchedule& sched) {
  return kl_upper_from_budget(mu_hat, t, exploration_budget(n, sched));
}

inline double kl_lower_index(double mu_hat, std::int64_t t, std::int64_t n, const ExplorationSchedule& sched) {
  return kl_lower_from_budget(mu_hat, t, exploration_budget(n, sched));
}

}  // namespace mtb
