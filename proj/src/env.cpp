#include "pirl/env.hpp"

#include <algorithm>
#include <string>

#include "pirl/errors.hpp"

namespace pirl {

Action action_from_name(const std::string& name) {
  for (int i = 0; i < kNumActions; ++i) {
    if (name == action_name(static_cast<Action>(i))) return static_cast<Action>(i);
  }
  throw ConfigInvalid("unknown action name: " + name);
}

void EnvConfig::validate() const {
  if (!dims.valid()) throw ConfigInvalid("grid dimensions must all be >= 1");
  if (wind_probability < 0.0 || wind_probability > 1.0)
    throw ConfigInvalid("wind_probability must lie in [0, 1]");
  if (wind_magnitude < 1) throw ConfigInvalid("wind_magnitude must be >= 1");
  if (max_steps < 1) throw ConfigInvalid("max_steps must be >= 1");
  if (drain_move < 0.0 || drain_cam < 0.0) throw ConfigInvalid("battery drains must be >= 0");
  if (obstacle_count_min < 0 || obstacle_count_max < obstacle_count_min)
    throw ConfigInvalid("obstacle count range is empty");
  for (const auto& o : obstacles) {
    if (o.radius <= 0.0) throw ConfigInvalid("obstacle radius must be positive");
    if (!dims.contains(o.center)) throw ConfigInvalid("obstacle center outside grid");
  }
  if (start_camera) start_camera->check();
}

int footprint_half_width(const CameraConfig& camera) {
  // Half-width h = 2*zoom below tilt 80, 1*zoom otherwise; cells within
  // floor(h) are observed. Integer tenths make the floor exact.
  const int h_tenths = camera.tilt < 80 ? 2 * camera.zoom_tenths : camera.zoom_tenths;
  return h_tenths / 10;
}

std::vector<GroundCell> view_cone(const Vec3i& position, const CameraConfig& camera,
                                  const GridDims& dims) {
  const int h = footprint_half_width(camera);
  const int x_lo = std::max(0, position.x - h);
  const int x_hi = std::min(dims.x_size - 1, position.x + h);
  const int y_lo = std::max(0, position.y - h);
  const int y_hi = std::min(dims.y_size - 1, position.y + h);
  std::vector<GroundCell> cells;
  cells.reserve(static_cast<std::size_t>(x_hi - x_lo + 1) * (y_hi - y_lo + 1));
  for (int x = x_lo; x <= x_hi; ++x)
    for (int y = y_lo; y <= y_hi; ++y) cells.push_back({x, y});
  return cells;
}

Environment::Environment(EnvConfig config) : config_(std::move(config)), coverage_(config_.dims) {
  config_.validate();
  reset(config_.seed);
}

bool Environment::inside_any_obstacle(const Vec3i& p) const {
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [&](const Obstacle& o) { return o.contains(p); });
}

void Environment::reset(std::uint64_t seed) {
  episode_seed_ = seed;
  rng_.seed(seed);
  steps_taken_ = 0;

  if (!config_.obstacles.empty()) {
    obstacles_ = config_.obstacles;
  } else {
    const int count = rng_.uniform_int(config_.obstacle_count_min, config_.obstacle_count_max);
    obstacles_.clear();
    obstacles_.reserve(count);
    static constexpr double kRadii[] = {1.0, 1.5, 2.0};
    for (int i = 0; i < count; ++i) {
      Vec3i center{rng_.uniform_int(0, config_.dims.x_size - 1),
                   rng_.uniform_int(0, config_.dims.y_size - 1),
                   rng_.uniform_int(0, config_.dims.z_size - 1)};
      obstacles_.push_back({center, kRadii[rng_.uniform_int(std::uint64_t{3})]});
    }
  }

  // Start anywhere outside every obstacle sphere.
  std::vector<Vec3i> free_cells;
  for (int x = 0; x < config_.dims.x_size; ++x)
    for (int y = 0; y < config_.dims.y_size; ++y)
      for (int z = 0; z < config_.dims.z_size; ++z) {
        Vec3i p{x, y, z};
        if (!inside_any_obstacle(p)) free_cells.push_back(p);
      }
  if (free_cells.empty())
    throw ConfigInvalid("obstacles cover the entire grid; no valid start cell");
  state_.position = free_cells[rng_.uniform_int(static_cast<std::uint64_t>(free_cells.size()))];
  state_.camera = config_.start_camera.value_or(CameraConfig{45, 0, 10});
  state_.battery = 1.0;
  coverage_ = CoverageMap(config_.dims);
}

std::pair<UavState, StepEvents> Environment::step(Action action) {
  if (battery_exhausted()) throw BatteryExhausted();
  if (budget_exhausted()) throw EpisodeOver();

  const UavState pre = state_;
  StepEvents events;

  if (is_movement(action)) {
    Vec3i candidate = pre.position + action_delta(action);
    if (config_.wind_probability > 0.0 && rng_.uniform() < config_.wind_probability) {
      // One of the eight nonzero (wx, wy) combinations, uniformly.
      static constexpr int kWind[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                          {0, 1},   {1, -1}, {1, 0},  {1, 1}};
      const auto& w = kWind[rng_.uniform_int(std::uint64_t{8})];
      candidate.x += w[0] * config_.wind_magnitude;
      candidate.y += w[1] * config_.wind_magnitude;
    }
    candidate = config_.dims.clamp(candidate);
    if (inside_any_obstacle(candidate)) {
      events.collision = true;
    } else {
      state_.position = candidate;
    }
    events.battery_drain = std::min(config_.drain_move, pre.battery);
  } else {
    state_.camera = apply_camera_action(pre.camera, action);
    events.battery_drain = std::min(config_.drain_cam, pre.battery);
  }

  state_.battery = pre.battery - events.battery_drain;

  events.observed = view_cone(state_.position, state_.camera, config_.dims);
  events.newly_covered = coverage_.observe(events.observed, &events.prior_visits);
  events.redundant = !events.observed.empty() && events.newly_covered == 0;
  events.idle = state_.position == pre.position && state_.camera == pre.camera;

  ++steps_taken_;
  return {state_, events};
}

}  // namespace pirl
