#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pirl/env.hpp"
#include "pirl/metrics.hpp"
#include "pirl/pare.hpp"
#include "pirl/reward.hpp"

namespace pirl {

// One JSONL record per step (pre-step state, action, events, reward
// breakdown, advice) bracketed by an episode header and summary. The step
// stream doubles as the imitation-learning dataset: each line carries the
// full state and its action label.
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(std::ostream& out) : out_(out) {}

  void episode_header(int episode, std::uint64_t seed, const std::string& method,
                      const Environment& env, const RewardWeights& weights);
  void step(int step_index, const UavState& pre_state, Action action, const StepEvents& events,
            const RewardBreakdown& reward, const std::optional<Advice>& advice);
  void episode_summary(int episode, const EpisodeMetrics& metrics);

 private:
  std::ostream& out_;
};

struct TrajectoryStep {
  int step = 0;
  UavState state;  // state the action was taken in
  std::string action;
  StepEvents events;
  RewardBreakdown reward;
  std::optional<Advice> advice;
};

struct TrajectoryEpisode {
  int episode = 0;
  std::uint64_t seed = 0;
  std::string method;
  GridDims dims;
  std::vector<Obstacle> obstacles;
  UavState start;
  RewardWeights weights;
  std::vector<TrajectoryStep> steps;
  std::optional<EpisodeMetrics> summary;
};

std::vector<TrajectoryEpisode> read_trajectory(std::istream& in);
std::vector<TrajectoryEpisode> read_trajectory_file(const std::string& path);

// Recomputes per-episode metrics by replaying the logged observed-cell sets
// and battery drains; backs the `replay` CLI command.
std::vector<EpisodeMetrics> recount_metrics(const std::vector<TrajectoryEpisode>& episodes);

}  // namespace pirl
