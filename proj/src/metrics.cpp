#include "pirl/metrics.hpp"

#include <cmath>

#include "pirl/errors.hpp"

namespace pirl {

double vcr(const CoverageMap& coverage) {
  return static_cast<double>(coverage.covered_count()) / coverage.total_ground_cells();
}

double battery_efficiency(double vcr, double battery_initial, double battery_final) {
  if (battery_initial <= 0.0)
    throw InvalidBattery("initial battery must be positive");
  if (battery_final < 0.0 || battery_final > battery_initial)
    throw InvalidBattery("final battery must lie in [0, initial]");
  return vcr / (2.0 - battery_final / battery_initial);
}

double rvc(const CoverageMap& coverage) {
  const int covered = coverage.covered_count();
  if (covered == 0) return 0.0;
  return static_cast<double>(coverage.multi_visit_count()) / covered;
}

EpisodeMetrics episode_metrics(const Environment& env) {
  EpisodeMetrics m;
  m.vcr = vcr(env.coverage());
  m.battery_initial = 1.0;
  m.battery_final = env.state().battery;
  m.be = battery_efficiency(m.vcr, m.battery_initial, m.battery_final);
  m.rvc = rvc(env.coverage());
  m.steps_used = env.steps_taken();
  m.seed = env.episode_seed();
  return m;
}

double scale_factor(const GridDims& train, const GridDims& test) {
  return static_cast<double>(test.volume()) / static_cast<double>(train.volume());
}

EnvConfig scale_env(const EnvConfig& train_config, const GridDims& test_dims) {
  const double alpha = scale_factor(train_config.dims, test_dims);
  EnvConfig scaled = train_config;
  scaled.dims = test_dims;
  scaled.obstacles.clear();  // layouts are sampled per episode at test scale
  scaled.max_steps = static_cast<int>(std::lround(alpha * train_config.max_steps));
  scaled.drain_move = train_config.drain_move / alpha;
  scaled.drain_cam = train_config.drain_cam / alpha;
  return scaled;
}

}  // namespace pirl
