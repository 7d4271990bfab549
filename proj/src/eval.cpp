#include "pirl/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "pirl/errors.hpp"
#include "pirl/reward.hpp"

namespace pirl {

Action GreedyPolicyController::select_action(const Environment& env) {
  const auto obs = encode_observation(env.state(), env.coverage(), env.config());
  if (static_cast<int>(obs.size()) != params_.obs_dim)
    throw CheckpointIncompatible("policy expects observation length " +
                                 std::to_string(params_.obs_dim) + ", environment produces " +
                                 std::to_string(obs.size()));
  const auto [logits, value] = policy_forward(params_, obs);
  return static_cast<Action>(argmax_action(logits));
}

Action LlmOnlyController::select_action(const Environment& env) {
  const UavState& state = env.state();
  Vec3i target_position = state.position;
  CameraConfig target_camera = state.camera;

  const std::string prompt = build_prompt_for(state, env.coverage().covered_fraction(),
                                              env.dims(), env.obstacles());
  try {
    AdvisorContext ctx{state, env.coverage(), env.obstacles(), env.dims()};
    const AdviceResult result = advisor_.advise(prompt, ctx);
    advice_ = result.advice;
    target_position = result.advice.target_position;
    target_camera = result.advice.camera_target;
  } catch (const AdviceUnparseable&) {
    advice_.reset();
  } catch (const AdvisorTimeout&) {
    advice_.reset();
  } catch (const AdvisorHttpError&) {
    advice_.reset();
  }

  if (state.position != target_position) {
    int best_gap = -1;
    Action best = Action::kXPlus;
    for (int i = 0; i < 6; ++i) {
      const Action a = static_cast<Action>(i);
      const Vec3i candidate = env.dims().clamp(state.position + action_delta(a));
      const int gap = (candidate - target_position).l1_norm();
      if (best_gap < 0 || gap < best_gap) {
        best_gap = gap;
        best = a;
      }
    }
    return best;
  }

  // Position satisfied: close the camera gap in native units (degrees,
  // degrees, zoom). A clamped action has zero displacement and realizes the
  // idle step when the advice already matches.
  double best_gap = -1.0;
  Action best = Action::kTiltPlus;
  for (int i = 6; i < kNumActions; ++i) {
    const Action a = static_cast<Action>(i);
    const CameraConfig candidate = apply_camera_action(state.camera, a);
    const double gap = std::abs(candidate.tilt - target_camera.tilt) +
                       std::abs(candidate.pan - target_camera.pan) +
                       std::abs(candidate.zoom_tenths - target_camera.zoom_tenths) / 10.0;
    if (best_gap < 0.0 || gap < best_gap) {
      best_gap = gap;
      best = a;
    }
  }
  return best;
}

std::uint64_t evaluation_episode_seed(std::uint64_t base_seed, int episode_index) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(episode_index));
}

EvalReport evaluate(Controller& controller, const EnvConfig& env_config, int n_episodes,
                    std::uint64_t base_seed, const std::string& method,
                    TrajectoryWriter* trajectory) {
  if (n_episodes < 1) throw ConfigInvalid("n_episodes must be >= 1");

  EvalReport report;
  report.method = method;
  report.grid = env_config.dims;

  Environment env(env_config);
  const RewardWeights weights = midpoint_weights();
  const int total_cells = env_config.dims.total_ground_cells();

  for (int k = 0; k < n_episodes; ++k) {
    const std::uint64_t seed = evaluation_episode_seed(base_seed, k);
    env.reset(seed);
    controller.begin_episode(env);
    if (trajectory) trajectory->episode_header(k, seed, method, env, weights);

    while (!env.done()) {
      const UavState pre = env.state();
      const int covered_before = env.coverage().covered_count();
      const int step_index = env.steps_taken();
      const Action action = controller.select_action(env);
      const auto [state, events] = env.step(action);
      if (trajectory) {
        const RewardBreakdown reward =
            compute_reward(weights, events, covered_before, env.coverage().covered_count(),
                           total_cells, events.prior_visits, !is_movement(action), 0.0);
        trajectory->step(step_index, pre, action, events, reward, controller.last_advice());
      }
    }

    const EpisodeMetrics m = episode_metrics(env);
    if (trajectory) trajectory->episode_summary(k, m);
    report.episodes.push_back(m);
  }

  for (const auto& m : report.episodes) {
    report.mean_vcr += m.vcr;
    report.mean_be += m.be;
    report.mean_rvc += m.rvc;
  }
  report.mean_vcr /= report.episodes.size();
  report.mean_be /= report.episodes.size();
  report.mean_rvc /= report.episodes.size();
  return report;
}

EvalReport run_llm_only(AdvisorBackend& advisor, const EnvConfig& env_config, int n_episodes,
                        std::uint64_t base_seed, TrajectoryWriter* trajectory) {
  LlmOnlyController controller(advisor);
  return evaluate(controller, env_config, n_episodes, base_seed, "llm-only", trajectory);
}

void write_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "method,grid,mean_vcr,mean_be,mean_rvc\n";
  char buf[128];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f", r.mean_vcr, r.mean_be, r.mean_rvc);
    out << r.method << "," << r.grid.label() << "," << buf << "\n";
  }
}

}  // namespace pirl
