#pragma once

#include <span>

#include "pirl/env.hpp"
#include "pirl/rng.hpp"

namespace pirl {

// The eight shaped-reward coefficients. Penalty weights carry their sign, so
// the total is always a plain weighted sum of non-negative components.
struct RewardWeights {
  double lambda_c = 1.0;           // coverage gain
  double lambda_r = -0.6;          // redundancy penalty
  double lambda_b = -0.3;          // battery efficiency
  double lambda_cam_usage = 0.4;   // PTZ parameter usage
  double lambda_cur = 0.35;        // curiosity incentive
  double lambda_collision = -1.15; // collision penalty
  double lambda_idle = -0.55;      // idle/inactivity penalty
  double lambda_llm = 0.4;         // LLM alignment

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

// One uniform draw per coefficient from its EWRI range.
RewardWeights sample_ewri_weights(Rng& rng);

// Fixed weights used outside EWRI episodes: the midpoint of each range.
RewardWeights midpoint_weights();

struct RewardBreakdown {
  double delta_coverage = 0.0;  // newly covered fraction of ground cells
  double redundant = 0.0;       // 0/1
  double battery_pen = 0.0;     // battery drained this step
  double cam_usage = 0.0;       // 0/1, camera action that produced new coverage
  double curiosity = 0.0;       // mean 1/sqrt(1 + prior visits) over observed
  double collision = 0.0;       // 0/1
  double idle = 0.0;            // 0/1
  double llm_shaping = 0.0;     // PARE alignment term, passed through
  double total = 0.0;
};

double weighted_total(const RewardWeights& weights, const RewardBreakdown& parts);

RewardBreakdown compute_reward(const RewardWeights& weights, const StepEvents& events,
                               int covered_before, int covered_after, int total_ground_cells,
                               std::span<const int> observed_prior_visits,
                               bool camera_action_taken, double llm_shaping);

}  // namespace pirl
