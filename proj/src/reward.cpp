#include "pirl/reward.hpp"

#include <cmath>

namespace pirl {

RewardWeights sample_ewri_weights(Rng& rng) {
  RewardWeights w;
  w.lambda_c = rng.uniform(0.5, 1.5);
  w.lambda_r = rng.uniform(-1.0, -0.2);
  w.lambda_b = rng.uniform(-0.5, -0.1);
  w.lambda_cam_usage = rng.uniform(0.2, 0.6);
  w.lambda_cur = rng.uniform(0.2, 0.5);
  w.lambda_collision = rng.uniform(-1.5, -0.8);
  w.lambda_idle = rng.uniform(-0.8, -0.3);
  w.lambda_llm = rng.uniform(0.2, 0.6);
  return w;
}

RewardWeights midpoint_weights() {
  return RewardWeights{1.0, -0.6, -0.3, 0.4, 0.35, -1.15, -0.55, 0.4};
}

double weighted_total(const RewardWeights& w, const RewardBreakdown& p) {
  return w.lambda_c * p.delta_coverage + w.lambda_r * p.redundant + w.lambda_b * p.battery_pen +
         w.lambda_cam_usage * p.cam_usage + w.lambda_cur * p.curiosity +
         w.lambda_collision * p.collision + w.lambda_idle * p.idle +
         w.lambda_llm * p.llm_shaping;
}

RewardBreakdown compute_reward(const RewardWeights& weights, const StepEvents& events,
                               int covered_before, int covered_after, int total_ground_cells,
                               std::span<const int> observed_prior_visits,
                               bool camera_action_taken, double llm_shaping) {
  RewardBreakdown parts;
  parts.delta_coverage =
      static_cast<double>(covered_after - covered_before) / total_ground_cells;
  parts.redundant = events.redundant ? 1.0 : 0.0;
  parts.battery_pen = events.battery_drain;
  parts.cam_usage = camera_action_taken && events.newly_covered > 0 ? 1.0 : 0.0;
  if (!observed_prior_visits.empty()) {
    double sum = 0.0;
    for (int n : observed_prior_visits) sum += 1.0 / std::sqrt(1.0 + n);
    parts.curiosity = sum / static_cast<double>(observed_prior_visits.size());
  }
  parts.collision = events.collision ? 1.0 : 0.0;
  parts.idle = events.idle ? 1.0 : 0.0;
  parts.llm_shaping = llm_shaping;
  parts.total = weighted_total(weights, parts);
  return parts;
}

}  // namespace pirl
