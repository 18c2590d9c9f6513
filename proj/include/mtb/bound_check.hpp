#pragma once
// Numerical cross-check of the closed-form rate constants. The semi-infinite
// covering program
//
//   minimize   sum_k C_k * gap_k
//   subject to sum_k C_k * D(mu_k || lambda_k) >= 1   for every confusable lambda
//              C >= 0
//
// is discretized by enumerating, for each position the best arm could be
// pushed to, the monotone chains of altered means over a uniform cell-centered
// grid. Every enumerated lambda is a genuine confusable instance (feasible,
// strictly monotone, different optimal position), so the discretized program
// is a relaxation and its optimum approaches the true constant from below as
// the grid refines.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "simplex.hpp"

namespace mtb {

struct ConstraintFamily {
  int shifted_to = 0;     // position the best arm is pushed to (increasing-order label)
  int first_arm = 0;      // lowest altered arm (increasing-order label)
  int depth = 0;          // number of altered arms in the chain
  std::int64_t rows = 0;  // constraints contributed after feasibility filters
};

struct BoundCheckReport {
  double numerical = 0.0;    // discretized covering program optimum
  double closed_form = 0.0;  // formula constant for the same instance/objective
  double rel_diff = 0.0;     // |numerical - closed_form| / closed_form
  std::int64_t rows = 0;
  int resolution = 0;
  // True when the instance admits no confusable alternative in any family
  // (for example a single arm below the threshold under the crossing
  // objective): the honest discretized optimum is then 0 and the closed form
  // measures a constraint that never binds.
  bool degenerate = false;
  std::vector<ConstraintFamily> families;
  std::vector<double> coefficients;  // optimal C per arm, original labeling, 0 at the best arm
};

namespace detail {

struct FamilySpec {
  int shifted_to = 0;
  int first_arm = 0;
  int depth = 0;
  double lo = 0.0;  // open/closed ends are both handled by the cell-centered grid,
  double hi = 0.0;  // whose points are strictly interior to (lo, hi)
  bool first_coord_below_tau = false;   // lowest altered arm must stay below tau
  bool last_coord_at_or_above_tau = false;  // highest altered arm must reach tau
};

inline double choose_count(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace detail

inline BoundCheckReport verify_bound(const BanditInstance& inst, const Objective& obj, int resolution) {
  if (resolution < 50 || resolution > 20000)
    throw std::invalid_argument("verification grid resolution must be in [50, 20000]");
  const NormalizedInstance norm = normalize(inst);
  const BanditInstance& inc = norm.instance;
  const int K = static_cast<int>(inc.means.size());
  if (K > 6)
    throw std::invalid_argument("numerical verification supports at most 6 arms (chain count explodes beyond that)");

  // Ranks at or below zero: verify the mirrored instance at the mirrored rank
  // and map arm labels back through the mirror.
  if (obj.kind == ObjectiveKind::ranked && obj.rank <= 0) {
    const BoundCheckReport m = verify_bound(invert(inc), {ObjectiveKind::ranked, 1 - obj.rank}, resolution);
    BoundCheckReport out = m;
    out.closed_form = bound_for(inst, obj).constant;
    out.rel_diff = out.closed_form > 0.0 ? std::abs(out.numerical - out.closed_form) / out.closed_form : 0.0;
    out.families.clear();
    for (const ConstraintFamily& f : m.families)
      out.families.push_back({mirrored_label(K, f.shifted_to), mirrored_label(K, f.first_arm + f.depth - 1),
                              f.depth, f.rows});
    out.coefficients.assign(K, 0.0);
    for (int j = 1; j <= K; ++j)
      out.coefficients[norm.to_original(mirrored_label(K, j)) - 1] = m.coefficients[j - 1];
    return out;
  }

  const double closed = bound_for(inst, obj).constant;
  const double tau = inc.tau;
  const auto mean = [&](int k) { return inc.means[k - 1]; };

  int kstar = 0;
  std::vector<detail::FamilySpec> specs;
  switch (obj.kind) {
    case ObjectiveKind::crossing: {
      kstar = crossing_position(inc);
      for (int i = 2; i <= kstar - 1; ++i)
        specs.push_back({i, i, kstar - i, tau, mean(kstar), false, false});
      break;
    }
    case ObjectiveKind::ranked: {
      kstar = ranked_position(inc, obj.rank);
      const int boundary = crossing_position(inc);
      // Push the boundary up: arms boundary..boundary+d-1 drop below tau.
      for (int i = kstar + 1; i <= std::min(kstar + obj.rank - 1, K); ++i)
        specs.push_back({i, boundary, i - kstar, mean(boundary - 1), tau, false, false});
      // Push the boundary down: arms boundary-d..boundary-1 rise to tau or above.
      for (int i = obj.rank + 1; i <= kstar - 1; ++i)
        specs.push_back({i, boundary - (kstar - i), kstar - i, tau, mean(boundary), false, false});
      break;
    }
    case ObjectiveKind::proximity: {
      kstar = proximity_position(inc);
      const double mu_best = mean(kstar);
      if (mu_best >= tau) {
        // A chain ending just below the best arm lands strictly closer to tau.
        for (int i = 1; i <= kstar - 1; ++i)
          specs.push_back({i, i, kstar - i, 2.0 * tau - mu_best, mu_best, i == 1, false});
      } else {
        for (int i = kstar + 1; i <= K; ++i)
          specs.push_back({i, kstar + 1, i - kstar, mu_best, 2.0 * tau - mu_best, false, i == K});
      }
      break;
    }
  }

  // Refuse to enumerate astronomically many chains; the guard is an upper
  // bound because feasibility filters only remove rows.
  double estimated = 0.0;
  for (const auto& s : specs)
    if (s.hi > s.lo) estimated += detail::choose_count(resolution, s.depth);
  if (estimated > 8e6)
    throw std::invalid_argument("verification would enumerate ~" + std::to_string(static_cast<long long>(estimated)) +
                                " chains; reduce the resolution");

  const int d = K - 1;
  const auto column_of = [&](int arm) { return arm - 1 - (arm > kstar ? 1 : 0); };
  std::vector<double> gaps(d, 0.0);
  for (int arm = 1; arm <= K; ++arm)
    if (arm != kstar) gaps[column_of(arm)] = std::abs(mean(kstar) - mean(arm));
  CoverLp lp(gaps);

  BoundCheckReport report;
  report.resolution = resolution;
  report.closed_form = closed;

  for (const auto& s : specs) {
    ConstraintFamily fam{s.shifted_to, s.first_arm, s.depth, 0};
    const double width = s.hi - s.lo;
    if (width > 0.0) {
      const int R = resolution;
      std::vector<double> grid(R);
      for (int j = 0; j < R; ++j) grid[j] = s.lo + (j + 0.5) * width / R;
      // Divergence of each altered arm against each grid level, computed once.
      std::vector<std::vector<double>> div(s.depth, std::vector<double>(R));
      for (int t = 0; t < s.depth; ++t)
        for (int j = 0; j < R; ++j) div[t][j] = bernoulli_kl(mean(s.first_arm + t), grid[j]);

      std::vector<int> idx(s.depth);
      for (int t = 0; t < s.depth; ++t) idx[t] = t;
      std::vector<double> row(s.depth);
      if (R >= s.depth) {
        while (true) {
          const bool first_ok = !s.first_coord_below_tau || grid[idx[0]] < tau;
          const bool last_ok = !s.last_coord_at_or_above_tau || grid[idx[s.depth - 1]] >= tau;
          if (first_ok && last_ok) {
            for (int t = 0; t < s.depth; ++t) row[t] = div[t][idx[t]];
            lp.add_row(column_of(s.first_arm), row);
            ++fam.rows;
          }
          // next strictly increasing index tuple
          int t = s.depth - 1;
          while (t >= 0 && idx[t] == R - s.depth + t) --t;
          if (t < 0) break;
          ++idx[t];
          for (int u = t + 1; u < s.depth; ++u) idx[u] = idx[u - 1] + 1;
        }
      }
    }
    report.rows += fam.rows;
    report.families.push_back(fam);
  }

  const CoverLpResult sol = lp.solve();
  report.numerical = sol.value;
  report.degenerate = report.rows == 0;
  report.rel_diff = closed > 0.0 ? std::abs(sol.value - closed) / closed : 0.0;
  report.coefficients.assign(K, 0.0);
  for (int arm = 1; arm <= K; ++arm)
    if (arm != kstar) report.coefficients[norm.to_original(arm) - 1] = sol.x[column_of(arm)];
  return report;
}

}  // namespace mtb
