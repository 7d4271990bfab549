#pragma once

#include <atomic>
#include <iosfwd>
#include <string>

#include "pirl/advisor.hpp"
#include "pirl/pare.hpp"
#include "pirl/policy.hpp"
#include "pirl/reward.hpp"
#include "pirl/trajectory.hpp"

namespace pirl {

// PPO-SR: fixed midpoint weights, no shaping. PPO-EWRI: per-episode weight
// draws, no shaping. PIRL: per-episode draws plus per-step advisor shaping.
enum class TrainMode { kStaticReward, kEwri, kPirl };

TrainMode train_mode_from_string(const std::string& name);
std::string to_string(TrainMode mode);

// Serialized engine states of the training streams, kept in checkpoints.
struct RngStateSnapshot {
  std::string action;
  std::string shuffle;
  std::string ewri;
};

struct TrainResult {
  PolicyParams params;
  AdamState adam;
  int episodes = 0;
  std::uint64_t advisor_calls = 0;     // inner backend calls
  std::uint64_t advisor_requests = 0;  // per-step advice requests
  RngStateSnapshot rng_state;
};

// Episode loop with mid-episode PPO updates every rollout_length steps.
// Writes one JSONL line per episode to training_log when given; fully
// deterministic for a fixed config and a deterministic advisor. A set `stop`
// flag ends training at the next episode boundary.
TrainResult train(const EnvConfig& env_config, TrainMode mode, const TrainConfig& cfg,
                  const AlignmentParams& alignment, AdvisorBackend* advisor,
                  std::ostream* training_log = nullptr, TrajectoryWriter* trajectory = nullptr,
                  const std::atomic<bool>* stop = nullptr);

}  // namespace pirl
