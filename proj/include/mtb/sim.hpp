#pragma once
// Monte-Carlo regret experiments. One sampler per trial runs against its own
// counter-seeded reward stream; every pull is priced with the objective's gap
// vector and cumulative pseudo-regret is recorded at log-spaced checkpoints.
// Trials are independent and their traces are aggregated in trial-index
// order, so the worker count changes wall time but never a single output bit.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "env.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "policies.hpp"

namespace mtb {

struct RegretTrace {
  std::vector<std::int64_t> rounds;     // checkpoint rounds, ascending, ending at the horizon
  std::vector<double> regret;           // cumulative pseudo-regret at each checkpoint
  std::int64_t best_arm_pulls_late = 0; // pulls of the oracle arm in rounds (T/2, T]
  std::int64_t late_rounds = 0;
};

struct AggregateResult {
  std::vector<std::int64_t> rounds;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;  // empty when trials == 1
  std::vector<double> lower_bound;    // C * ln t reference curve
  double best_arm_fraction = 0.0;     // mean over trials of the late-window share
  int trials = 0;
  BoundResult bound;
};

// `count` log-spaced checkpoint rounds between the end of the initial sweep
// (round K+1) and the horizon inclusive, deduplicated, always ending exactly
// at the horizon. Horizons inside the sweep get the single checkpoint {T}.
inline std::vector<std::int64_t> log_checkpoints(int num_arms, std::int64_t horizon, int count = 50) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (count < 1) throw std::invalid_argument("checkpoint count must be >= 1");
  const std::int64_t first = static_cast<std::int64_t>(num_arms) + 1;
  std::vector<std::int64_t> out;
  if (horizon <= first || count == 1) {
    out.push_back(horizon);
    return out;
  }
  const double la = std::log(static_cast<double>(first));
  const double lb = std::log(static_cast<double>(horizon));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    auto t = static_cast<std::int64_t>(std::llround(std::exp(la + f * (lb - la))));
    t = std::clamp(t, first, horizon);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

inline RegretTrace run_trial(const BanditInstance& inst, const Objective& obj, PolicyKind kind,
                             const ExplorationSchedule& sched, std::int64_t horizon,
                             std::uint64_t experiment_seed, std::uint64_t trial_index,
                             const std::vector<std::int64_t>& checkpoints) {
  require_valid(inst);
  const OptimalArm opt = optimal_arm(inst, obj);
  const int K = static_cast<int>(inst.means.size());
  if (horizon < K) throw std::invalid_argument("horizon must cover at least one sweep of the arms");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const bool ordered = i == 0 ? checkpoints[i] >= 1 : checkpoints[i] > checkpoints[i - 1];
    if (!ordered || checkpoints[i] > horizon)
      throw std::invalid_argument("checkpoints must be ascending and within the horizon");
  }

  const int rank = obj.kind == ObjectiveKind::ranked ? obj.rank : 1;
  auto sampler = make_sampler(kind, K, inst.tau, rank, sched);
  RewardStream stream(experiment_seed, trial_index);

  RegretTrace trace;
  trace.rounds = checkpoints;
  trace.regret.assign(checkpoints.size(), 0.0);
  trace.late_rounds = horizon - horizon / 2;

  double cumulative = 0.0;
  std::size_t next_checkpoint = 0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const int arm = sampler->select_arm();
    const int reward = sample_reward(inst, arm, stream);
    sampler->update(arm, reward);
    cumulative += opt.gaps[arm - 1];
    if (n > horizon / 2 && arm == opt.index) ++trace.best_arm_pulls_late;
    if (next_checkpoint < trace.rounds.size() && trace.rounds[next_checkpoint] == n)
      trace.regret[next_checkpoint++] = cumulative;
  }
  return trace;
}

struct MonteCarloSpec {
  BanditInstance instance;
  Objective objective;
  PolicyKind policy = PolicyKind::crossing;
  ExplorationSchedule schedule{};
  std::int64_t horizon = 0;
  int trials = 1;
  std::uint64_t seed = 1;
  int checkpoint_count = 50;
  int workers = 0;  // 0 = one per hardware thread, capped by the trial count
};

inline AggregateResult run_monte_carlo(const MonteCarloSpec& spec) {
  require_valid(spec.instance);
  if (spec.trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const int K = static_cast<int>(spec.instance.means.size());
  if (spec.horizon < K) throw std::invalid_argument("horizon must cover at least one sweep of the arms");

  const std::vector<std::int64_t> checkpoints = log_checkpoints(K, spec.horizon, spec.checkpoint_count);
  std::vector<RegretTrace> traces(spec.trials);

  int workers = spec.workers > 0 ? spec.workers : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, spec.trials);

  std::atomic<int> next_trial{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string error_text;

  const auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next_trial.fetch_add(1);
      if (i >= spec.trials) break;
      try {
        traces[i] = run_trial(spec.instance, spec.objective, spec.policy, spec.schedule, spec.horizon,
                              spec.seed, static_cast<std::uint64_t>(i), checkpoints);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> hold(error_mutex);
        if (!failed.exchange(true)) error_text = "trial " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error(error_text);

  AggregateResult agg;
  agg.rounds = checkpoints;
  agg.trials = spec.trials;
  agg.bound = bound_for(spec.instance, spec.objective);
  agg.lower_bound = bound_curve(agg.bound, checkpoints);
  const std::size_t C = checkpoints.size();
  agg.mean_regret.assign(C, 0.0);
  for (const RegretTrace& tr : traces)
    for (std::size_t i = 0; i < C; ++i) agg.mean_regret[i] += tr.regret[i];
  for (std::size_t i = 0; i < C; ++i) agg.mean_regret[i] /= static_cast<double>(spec.trials);
  if (spec.trials > 1) {
    agg.stderr_regret.assign(C, 0.0);
    for (const RegretTrace& tr : traces)
      for (std::size_t i = 0; i < C; ++i) {
        const double d = tr.regret[i] - agg.mean_regret[i];
        agg.stderr_regret[i] += d * d;
      }
    for (std::size_t i = 0; i < C; ++i)
      agg.stderr_regret[i] = std::sqrt(agg.stderr_regret[i] / static_cast<double>(spec.trials - 1)) /
                             std::sqrt(static_cast<double>(spec.trials));
  }
  for (const RegretTrace& tr : traces)
    agg.best_arm_fraction += static_cast<double>(tr.best_arm_pulls_late) / static_cast<double>(tr.late_rounds);
  agg.best_arm_fraction /= static_cast<double>(spec.trials);
  return agg;
}

}  // namespace mtb
