#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pirl/coverage.hpp"
#include "pirl/rng.hpp"
#include "pirl/types.hpp"

namespace pirl {

struct StepEvents {
  std::vector<GroundCell> observed;  // ground cells seen after the step
  std::vector<int> prior_visits;     // visit counts of `observed` before the step
  int newly_covered = 0;
  bool redundant = false;  // observed something, none of it new
  bool collision = false;
  bool idle = false;  // position and camera unchanged
  double battery_drain = 0.0;
};

struct EnvConfig {
  GridDims dims{15, 15, 3};

  // Explicit layout; when empty, reset samples `obstacle_count_min..max`
  // obstacles at random cells.
  std::vector<Obstacle> obstacles;
  int obstacle_count_min = 2;
  int obstacle_count_max = 5;

  double wind_probability = 0.1;
  int wind_magnitude = 1;  // cells
  int max_steps = 225;
  double drain_move = 1.0 / 450.0;
  double drain_cam = 1.0 / 900.0;
  std::uint64_t seed = 0;

  std::optional<CameraConfig> start_camera;  // default: tilt 45, pan 0, zoom 1.0

  void validate() const;
};

// Footprint half-width in whole cells: floor(2*zoom) below the steep-tilt
// threshold of 80 degrees, floor(zoom) at or above it.
int footprint_half_width(const CameraConfig& camera);

// Ground cells (z = 0) inside the square view cone centered on the UAV's
// (x, y), clipped to the grid. Pan does not shift the footprint.
std::vector<GroundCell> view_cone(const Vec3i& position, const CameraConfig& camera,
                                  const GridDims& dims);

// Single UAV grid world: discrete movement and camera control, stochastic
// wind on movement, spherical obstacles with revert-on-collision, battery
// drain, and ground coverage bookkeeping. Single-threaded by construction;
// run independent instances for parallel rollouts.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  // Re-seeds the RNG and rebuilds the episode: obstacle layout (sampled
  // unless configured explicitly), obstacle-free start cell, full battery,
  // cleared coverage. Throws ConfigInvalid when no valid start cell exists.
  void reset(std::uint64_t seed);
  void reset() { reset(config_.seed); }

  std::pair<UavState, StepEvents> step(Action action);

  const EnvConfig& config() const { return config_; }
  const GridDims& dims() const { return config_.dims; }
  const UavState& state() const { return state_; }
  const CoverageMap& coverage() const { return coverage_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  int steps_taken() const { return steps_taken_; }
  std::uint64_t episode_seed() const { return episode_seed_; }

  bool battery_exhausted() const { return state_.battery <= 0.0; }
  bool budget_exhausted() const { return steps_taken_ >= config_.max_steps; }
  bool done() const { return battery_exhausted() || budget_exhausted(); }

 private:
  bool inside_any_obstacle(const Vec3i& p) const;

  EnvConfig config_;
  std::vector<Obstacle> obstacles_;
  UavState state_;
  CoverageMap coverage_;
  Rng rng_;
  int steps_taken_ = 0;
  std::uint64_t episode_seed_ = 0;
};

}  // namespace pirl
