#pragma once
// Sequential samplers that hunt for the arm the objective designates. Each
// keeps a candidate position, moves it at most one step per round, and bases
// every decision on KL confidence indices; none of them ever sees the true
// means. Round bookkeeping: rounds() counts completed (updated) rounds, so
// select_arm() for round n = rounds()+1 uses pull counts through round n-1
// with budget f(n), and the candidate reposition after the n-th reward uses
// the post-update counts with the same f(n).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kl.hpp"

namespace mtb {

enum class PolicyKind { crossing, ranked, proximity };

class Sampler {
 public:
  virtual ~Sampler() = default;
  // Arm to play in the upcoming round; pure, so repeated calls agree until
  // the next update(). The first K rounds sweep arms 1..K once.
  virtual int select_arm() const = 0;
  // Record the reward of the arm just played (must be the arm select_arm()
  // returned), then reposition the candidate.
  virtual void update(int arm, int reward) = 0;
  // Current candidate position; 0 until every arm has been pulled once.
  virtual int candidate() const = 0;
  virtual std::int64_t rounds() const = 0;
};

// Shared machinery: counts, sums, empirical means and confidence indices.
class IndexSampler : public Sampler {
 public:
  IndexSampler(int num_arms, double tau, ExplorationSchedule sched)
      : tau_(tau), sched_(sched), pulls_(num_arms, 0), sums_(num_arms, 0) {
    if (num_arms < 2) throw std::invalid_argument("sampler needs at least two arms");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("threshold must lie strictly inside (0, 1)");
  }

  int select_arm() const final {
    if (round_ < num_arms()) return static_cast<int>(round_) + 1;
    return choose(round_ + 1);
  }

  void update(int arm, int reward) final {
    if (arm < 1 || arm > num_arms()) throw std::invalid_argument("update: arm out of range");
    if (reward != 0 && reward != 1) throw std::invalid_argument("update: reward must be 0 or 1");
    pulls_[arm - 1] += 1;
    sums_[arm - 1] += reward;
    round_ += 1;
    if (round_ == num_arms()) initialize_candidate();
    else if (round_ > num_arms()) reposition(round_);
  }

  int candidate() const final { return candidate_; }
  std::int64_t rounds() const final { return round_; }

  int num_arms() const { return static_cast<int>(pulls_.size()); }
  double threshold() const { return tau_; }
  const std::vector<std::int64_t>& pulls() const { return pulls_; }
  const std::vector<std::int64_t>& reward_sums() const { return sums_; }
  double mean(int arm) const {
    return pulls_[arm - 1] > 0 ? static_cast<double>(sums_[arm - 1]) / static_cast<double>(pulls_[arm - 1]) : 0.0;
  }
  // Confidence interval ends for the round with budget f(n).
  double upper(int arm, std::int64_t n) const {
    return kl_upper_from_budget(mean(arm), pulls_[arm - 1], exploration_budget(n, sched_));
  }
  double lower(int arm, std::int64_t n) const {
    return kl_lower_from_budget(mean(arm), pulls_[arm - 1], exploration_budget(n, sched_));
  }

 protected:
  // Arm for round n, once every arm has one pull.
  virtual int choose(std::int64_t n) const = 0;
  // Candidate from the first sweep's empirical means.
  virtual void initialize_candidate() = 0;
  // Candidate move after the n-th reward landed.
  virtual void reposition(std::int64_t n) = 0;

  // One-step walk toward the threshold boundary shared by the ranked and
  // proximity samplers: confidently above moves left, neighbour confidently
  // below moves right.
  void step_toward_boundary(std::int64_t n) {
    if (candidate_ > 1 && lower(candidate_, n) > tau_) candidate_ -= 1;
    else if (candidate_ < num_arms() && upper(std::min(candidate_ + 1, num_arms()), n) < tau_) candidate_ += 1;
  }

  double tau_;
  ExplorationSchedule sched_;
  std::vector<std::int64_t> pulls_;
  std::vector<std::int64_t> sums_;
  std::int64_t round_ = 0;
  int candidate_ = 0;
};

// Crossing objective: walk the candidate onto the first arm at or above the
// threshold and keep sampling it; the left neighbour's upper index pulls the
// candidate down, its own upper index pushes it up.
class CrossingSampler final : public IndexSampler {
 public:
  using IndexSampler::IndexSampler;

 protected:
  int choose(std::int64_t) const override { return candidate_; }

  void initialize_candidate() override {
    // First arm whose empirical mean clears the threshold; top arm when none does.
    candidate_ = num_arms();
    for (int k = 1; k <= num_arms(); ++k) {
      if (mean(k) > tau_) { candidate_ = k; break; }
    }
  }

  void reposition(std::int64_t n) override {
    if (candidate_ > 1 && upper(candidate_ - 1, n) > tau_) candidate_ -= 1;
    else if (candidate_ < num_arms() && upper(candidate_, n) < tau_) candidate_ += 1;
  }
};

// Ranked objective with rank >= 1: keep the candidate on the last arm below
// the threshold; while the boundary is uncertain sample whichever side is in
// doubt, and once both sides are confirmed exploit the arm `rank` steps up.
class RankedSampler final : public IndexSampler {
 public:
  RankedSampler(int num_arms, double tau, int rank, ExplorationSchedule sched)
      : IndexSampler(num_arms, tau, sched), rank_(rank) {
    if (rank < 1) throw std::invalid_argument("ranked sampler needs rank >= 1; use make_sampler for ranks <= 0");
  }

  int rank() const { return rank_; }

 protected:
  int choose(std::int64_t n) const override {
    const int ca = candidate_;
    const int na = std::min(ca + 1, num_arms());
    const double upper_ca = upper(ca, n);
    const double lower_na = lower(na, n);
    if (lower_na >= tau_ && upper_ca <= tau_)
      return std::clamp(ca + rank_, 1, num_arms());
    if (upper_ca > tau_) return ca;
    if (lower_na < tau_) return na;
    return ca;  // unreachable: the two tests above exhaust the complement; kept for shape
  }

  void initialize_candidate() override {
    // Last arm whose empirical mean sits below the threshold; bottom arm when none does.
    candidate_ = 1;
    for (int k = num_arms(); k >= 1; --k) {
      if (mean(k) < tau_) { candidate_ = k; break; }
    }
  }

  void reposition(std::int64_t n) override { step_toward_boundary(n); }

 private:
  int rank_;
};

// Proximity objective: candidate plus its upper neighbour straddle the
// threshold; sample whichever of the two still has the threshold inside its
// confidence interval (empirically closer breaks the both-in case), otherwise
// whichever interval end sits closer to the threshold.
class ProximitySampler final : public IndexSampler {
 public:
  using IndexSampler::IndexSampler;

 protected:
  int choose(std::int64_t n) const override {
    const int ca = candidate_;
    const int na = std::min(ca + 1, num_arms());
    const double upper_ca = upper(ca, n);
    const double lower_na = lower(na, n);
    const bool tau_in_ca = lower(ca, n) <= tau_ && tau_ <= upper_ca;
    const bool tau_in_na = lower_na <= tau_ && tau_ <= upper(na, n);
    if (tau_in_ca && tau_in_na)
      return std::abs(mean(ca) - tau_) < std::abs(mean(na) - tau_) ? ca : na;
    if (tau_in_ca) return ca;
    if (tau_in_na) return na;
    return std::abs(upper_ca - tau_) < std::abs(lower_na - tau_) ? ca : na;
  }

  void initialize_candidate() override {
    // Arm with the empirical mean closest to the threshold, ties to the smaller index.
    candidate_ = 1;
    for (int k = 2; k <= num_arms(); ++k) {
      if (std::abs(mean(k) - tau_) < std::abs(mean(candidate_) - tau_)) candidate_ = k;
    }
  }

  void reposition(std::int64_t n) override { step_toward_boundary(n); }
};

// Ranked objective with rank <= 0 (counting down from the threshold): run the
// ranked walker on the mirrored problem and translate labels and rewards.
// Mirror arm j is arm K+1-j here, mirror rewards are complements, and the
// mirrored threshold/rank are 1-tau and 1-rank.
class MirroredRankedSampler final : public Sampler {
 public:
  MirroredRankedSampler(int num_arms, double tau, int rank, ExplorationSchedule sched)
      : num_arms_(num_arms), inner_(num_arms, 1.0 - tau, 1 - rank, sched) {
    if (rank > 0) throw std::invalid_argument("mirrored ranked sampler expects rank <= 0");
  }

  int select_arm() const override { return num_arms_ + 1 - inner_.select_arm(); }
  void update(int arm, int reward) override {
    if (arm < 1 || arm > num_arms_) throw std::invalid_argument("update: arm out of range");
    inner_.update(num_arms_ + 1 - arm, 1 - reward);
  }
  int candidate() const override {
    const int c = inner_.candidate();
    return c == 0 ? 0 : num_arms_ + 1 - c;
  }
  std::int64_t rounds() const override { return inner_.rounds(); }
  const RankedSampler& mirror() const { return inner_; }

 private:
  int num_arms_;
  RankedSampler inner_;
};

// rank is consulted only by the ranked kind; rank <= 0 builds the mirrored
// walker. Samplers receive the arm count and threshold, never the means.
inline std::unique_ptr<Sampler> make_sampler(PolicyKind kind, int num_arms, double tau, int rank,
                                             const ExplorationSchedule& sched) {
  switch (kind) {
    case PolicyKind::crossing: return std::make_unique<CrossingSampler>(num_arms, tau, sched);
    case PolicyKind::ranked:
      if (rank <= 0) return std::make_unique<MirroredRankedSampler>(num_arms, tau, rank, sched);
      return std::make_unique<RankedSampler>(num_arms, tau, rank, sched);
    case PolicyKind::proximity: return std::make_unique<ProximitySampler>(num_arms, tau, sched);
  }
  throw std::logic_error("unknown policy kind");
}

inline std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::crossing: return "crossing";
    case PolicyKind::ranked: return "ranked";
    case PolicyKind::proximity: return "proximity";
  }
  throw std::logic_error("unknown policy kind");
}

}  // namespace mtb
