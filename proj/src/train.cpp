#include "pirl/train.hpp"

#include <ostream>
#include <sstream>

#include "pirl/errors.hpp"
#include "pirl/json_io.hpp"
#include "pirl/metrics.hpp"

namespace pirl {

TrainMode train_mode_from_string(const std::string& name) {
  if (name == "ppo-sr") return TrainMode::kStaticReward;
  if (name == "ppo-ewri") return TrainMode::kEwri;
  if (name == "pirl") return TrainMode::kPirl;
  throw ConfigInvalid("unknown training mode: " + name + " (expected ppo-sr, ppo-ewri or pirl)");
}

std::string to_string(TrainMode mode) {
  switch (mode) {
    case TrainMode::kStaticReward: return "ppo-sr";
    case TrainMode::kEwri: return "ppo-ewri";
    case TrainMode::kPirl: return "pirl";
  }
  return "?";
}

TrainResult train(const EnvConfig& env_config, TrainMode mode, const TrainConfig& cfg,
                  const AlignmentParams& alignment, AdvisorBackend* advisor,
                  std::ostream* training_log, TrajectoryWriter* trajectory,
                  const std::atomic<bool>* stop) {
  env_config.validate();
  cfg.validate();
  if (mode == TrainMode::kPirl && advisor == nullptr)
    throw ConfigInvalid("pirl mode requires an advisor backend");

  AlignmentParams align = alignment;
  if (align.d_max <= 0.0) align.d_max = env_config.dims.max_distance();

  // Independent deterministic streams derived from the master seed.
  Rng init_rng(derive_seed(cfg.seed, 1));
  Rng action_rng(derive_seed(cfg.seed, 2));
  Rng shuffle_rng(derive_seed(cfg.seed, 3));
  Rng ewri_rng(derive_seed(cfg.seed, 4));

  Environment env(env_config);

  TrainResult result;
  {
    const auto probe = encode_observation(env.state(), env.coverage(), env_config);
    result.params = PolicyParams::init(static_cast<int>(probe.size()), cfg.hidden1, cfg.hidden2,
                                       kNumActions, init_rng);
  }
  result.adam.init(result.params.size());

  Rollout rollout;
  rollout.obs_dim = result.params.obs_dim;
  const int total_cells = env_config.dims.total_ground_cells();

  int updates = 0;
  UpdateStats last_update{};
  bool have_update = false;

  auto run_update = [&](bool at_buffer_end) {
    if (rollout.size() < 2) return;
    double bootstrap = 0.0;
    if (at_buffer_end && !env.done()) {
      const auto obs = encode_observation(env.state(), env.coverage(), env_config);
      bootstrap = policy_forward(result.params, obs).second;
    }
    rollout.finish(bootstrap, cfg.gamma, cfg.gae_lambda);
    last_update = ppo_update(result.params, result.adam, rollout, cfg, shuffle_rng);
    have_update = true;
    ++updates;
    rollout.clear();
  };

  for (int episode = 0; episode < cfg.total_episodes; ++episode) {
    if (stop && stop->load()) break;
    const std::uint64_t episode_seed = derive_seed(cfg.seed, 1000 + episode);
    env.reset(episode_seed);

    RewardWeights weights =
        mode == TrainMode::kStaticReward ? midpoint_weights() : sample_ewri_weights(ewri_rng);
    if (mode != TrainMode::kPirl) weights.lambda_llm = 0.0;

    if (trajectory) trajectory->episode_header(episode, episode_seed, to_string(mode), env, weights);

    double reward_sum = 0.0;
    int steps = 0;

    while (!env.done()) {
      const UavState pre = env.state();
      const int covered_before = env.coverage().covered_count();
      const double coverage_fraction = env.coverage().covered_fraction();
      const int step_index = env.steps_taken();

      const auto obs = encode_observation(pre, env.coverage(), env_config);
      ForwardCache cache;
      policy_forward_cached(result.params, obs, cache);
      const int action_index = sample_action(cache.probs, action_rng);
      const Action action = static_cast<Action>(action_index);

      std::optional<Advice> advice;
      if (mode == TrainMode::kPirl) {
        ++result.advisor_requests;
        try {
          const std::string prompt =
              build_prompt_for(pre, coverage_fraction, env.dims(), env.obstacles());
          AdvisorContext ctx{pre, env.coverage(), env.obstacles(), env.dims()};
          advice = advisor->advise(prompt, ctx).advice;
        } catch (const AdviceUnparseable&) {
        } catch (const AdvisorTimeout&) {
        } catch (const AdvisorHttpError&) {
        }
      }

      const auto [state, events] = env.step(action);
      const double shaping = advice ? llm_shaping(align, state, pre, *advice) : 0.0;
      const RewardBreakdown reward =
          compute_reward(weights, events, covered_before, env.coverage().covered_count(),
                         total_cells, events.prior_visits, !is_movement(action), shaping);

      const bool done = env.done();
      rollout.push(obs, action_index, cache.log_probs[action_index], cache.value, reward.total,
                   done);
      reward_sum += reward.total;
      ++steps;

      if (trajectory) trajectory->step(step_index, pre, action, events, reward, advice);
      if (rollout.size() >= static_cast<std::size_t>(cfg.rollout_length)) run_update(true);
    }

    const EpisodeMetrics metrics = episode_metrics(env);
    if (trajectory) trajectory->episode_summary(episode, metrics);
    ++result.episodes;

    if (training_log) {
      json line = {{"episode", episode},
                   {"seed", std::to_string(episode_seed)},
                   {"steps", steps},
                   {"mean_reward", steps > 0 ? reward_sum / steps : 0.0},
                   {"vcr", metrics.vcr},
                   {"be", metrics.be},
                   {"rvc", metrics.rvc},
                   {"weights", weights},
                   {"advisor_calls", advisor ? advisor->calls() : std::uint64_t{0}},
                   {"updates", updates}};
      if (have_update) {
        line["loss"] = {{"policy", last_update.policy_loss},
                        {"value", last_update.value_loss},
                        {"entropy", last_update.entropy},
                        {"approx_kl", last_update.approx_kl}};
      } else {
        line["loss"] = nullptr;
      }
      *training_log << line.dump() << "\n";
    }
  }

  // Flush the trailing partial rollout so late experience still teaches.
  run_update(true);

  if (advisor) result.advisor_calls = advisor->calls();
  auto engine_state = [](Rng& rng) {
    std::ostringstream s;
    s << rng.engine();
    return s.str();
  };
  result.rng_state = {engine_state(action_rng), engine_state(shuffle_rng), engine_state(ewri_rng)};
  return result;
}

}  // namespace pirl
