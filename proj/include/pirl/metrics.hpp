#pragma once

#include <cstdint>

#include "pirl/coverage.hpp"
#include "pirl/env.hpp"
#include "pirl/types.hpp"

namespace pirl {

struct EpisodeMetrics {
  double vcr = 0.0;
  double be = 0.0;
  double rvc = 0.0;
  int steps_used = 0;
  double battery_initial = 1.0;
  double battery_final = 1.0;
  std::uint64_t seed = 0;
};

// Fraction of ground cells covered.
double vcr(const CoverageMap& coverage);

// VCR per unit battery consumed: vcr / (2 - b_t / b_i). Throws InvalidBattery
// unless b_i > 0 and 0 <= b_t <= b_i.
double battery_efficiency(double vcr, double battery_initial, double battery_final);

// Ground cells observed more than once per covered cell; 0 when nothing is
// covered.
double rvc(const CoverageMap& coverage);

EpisodeMetrics episode_metrics(const Environment& env);

// Test-to-train volume ratio used to scale step and battery budgets.
double scale_factor(const GridDims& train, const GridDims& test);

// Applies the volume scaling to an environment: alpha * max_steps and drains
// divided by alpha, so the normalized battery spans the scaled episode.
EnvConfig scale_env(const EnvConfig& train_config, const GridDims& test_dims);

}  // namespace pirl
