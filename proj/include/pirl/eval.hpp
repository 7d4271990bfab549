#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pirl/advisor.hpp"
#include "pirl/metrics.hpp"
#include "pirl/policy.hpp"
#include "pirl/trajectory.hpp"

namespace pirl {

struct EvalReport {
  std::string method;
  GridDims grid;
  std::vector<EpisodeMetrics> episodes;
  double mean_vcr = 0.0;
  double mean_be = 0.0;
  double mean_rvc = 0.0;
};

class Controller {
 public:
  virtual ~Controller() = default;
  virtual void begin_episode(const Environment&) {}
  virtual Action select_action(const Environment& env) = 0;
  // Advice behind the most recent action, when the controller consulted one.
  virtual std::optional<Advice> last_advice() const { return std::nullopt; }
};

// Greedy (argmax) action selection from a trained policy.
class GreedyPolicyController final : public Controller {
 public:
  explicit GreedyPolicyController(PolicyParams params) : params_(std::move(params)) {}
  Action select_action(const Environment& env) override;

 private:
  PolicyParams params_;
};

// Advisor-driven baseline: executes the atomic action closest (L1) to the
// advised target, position first, camera once the position matches.
// Unparseable or failed advice degrades to "hold the current state", which
// resolves to an idle camera action whenever one exists.
class LlmOnlyController final : public Controller {
 public:
  explicit LlmOnlyController(AdvisorBackend& advisor) : advisor_(advisor) {}
  void begin_episode(const Environment&) override { advice_.reset(); }
  Action select_action(const Environment& env) override;
  std::optional<Advice> last_advice() const override { return advice_; }

 private:
  AdvisorBackend& advisor_;
  std::optional<Advice> advice_;
};

// Runs n_episodes with per-episode seeds derived from base_seed, so every
// method sees identical obstacle layouts and start positions per episode
// index. Rewards in the trajectory log use the midpoint weights.
EvalReport evaluate(Controller& controller, const EnvConfig& env_config, int n_episodes,
                    std::uint64_t base_seed, const std::string& method,
                    TrajectoryWriter* trajectory = nullptr);

EvalReport run_llm_only(AdvisorBackend& advisor, const EnvConfig& env_config, int n_episodes,
                        std::uint64_t base_seed, TrajectoryWriter* trajectory = nullptr);

// Per-episode seed shared by all methods for a given base seed.
std::uint64_t evaluation_episode_seed(std::uint64_t base_seed, int episode_index);

// CSV in the shape of the paper's result tables:
// method,grid,mean_vcr,mean_be,mean_rvc.
void write_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace pirl
