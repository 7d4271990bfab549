#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pirl/coverage.hpp"
#include "pirl/env.hpp"
#include "pirl/rng.hpp"
#include "pirl/types.hpp"

namespace pirl {

inline constexpr int kObservationSize = 37;

// Fixed-length policy input: normalized position (3), normalized camera (3),
// battery (1), coverage fraction (1), 5x5 ego-centric ground coverage patch
// (25), unit vector and normalized distance to the nearest obstacle (4).
// Every element lies in [-1, 1]; patch cells outside the grid read as covered.
std::vector<double> encode_observation(const UavState& state, const CoverageMap& coverage,
                                       const EnvConfig& env);

// Two-hidden-layer tanh MLP with a categorical action head and a scalar value
// head, stored as one flat parameter vector so optimizer state, clipping and
// finite-difference checks stay trivial.
struct PolicyParams {
  int obs_dim = kObservationSize;
  int hidden1 = 64;
  int hidden2 = 64;
  int num_actions = kNumActions;
  std::vector<double> data;

  static PolicyParams init(int obs_dim, int hidden1, int hidden2, int num_actions, Rng& rng);

  std::size_t size() const { return data.size(); }
  bool finite() const;

  // Flat layout offsets: W1, b1, W2, b2, W_pi, b_pi, W_v, b_v.
  std::size_t off_w1() const { return 0; }
  std::size_t off_b1() const { return off_w1() + std::size_t(hidden1) * obs_dim; }
  std::size_t off_w2() const { return off_b1() + hidden1; }
  std::size_t off_b2() const { return off_w2() + std::size_t(hidden2) * hidden1; }
  std::size_t off_wpi() const { return off_b2() + hidden2; }
  std::size_t off_bpi() const { return off_wpi() + std::size_t(num_actions) * hidden2; }
  std::size_t off_wv() const { return off_bpi() + num_actions; }
  std::size_t off_bv() const { return off_wv() + hidden2; }
  std::size_t expected_size() const { return off_bv() + 1; }
};

struct ForwardCache {
  std::vector<double> h1, h2, logits, probs, log_probs;
  double value = 0.0;
};

void policy_forward_cached(const PolicyParams& params, std::span<const double> obs,
                           ForwardCache& cache);

// Action logits and state value for one observation.
std::pair<std::vector<double>, double> policy_forward(const PolicyParams& params,
                                                      std::span<const double> obs);

// Accumulates dLoss/dparams into `grad` given upstream gradients on the
// logits and the value output.
void policy_backward(const PolicyParams& params, std::span<const double> obs,
                     const ForwardCache& cache, std::span<const double> dlogits, double dvalue,
                     std::vector<double>& grad);

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// delta_t = r_t + gamma * V(s_{t+1}) * (1 - done_t) - V(s_t),
// A_t = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}; the value after
// the last step is `bootstrap_value`.
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
                      double gae_lambda);

struct Rollout {
  int obs_dim = kObservationSize;
  std::vector<double> observations;  // size() * obs_dim, row-major
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> values;
  std::vector<double> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return actions.size(); }
  void clear();
  void push(std::span<const double> obs, int action, double log_prob, double value,
            double reward, bool done);
  void finish(double bootstrap_value, double gamma, double gae_lambda);
  std::span<const double> observation(std::size_t i) const {
    return {observations.data() + i * obs_dim, static_cast<std::size_t>(obs_dim)};
  }
};

struct TrainConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  double learning_rate = 3e-4;
  int epochs_per_update = 4;
  int minibatch_size = 64;
  int rollout_length = 2048;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  int total_episodes = 300;
  int hidden1 = 64;
  int hidden2 = 64;
  bool normalize_advantages = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AdamState {
  std::vector<double> m, v;
  long step = 0;

  void init(std::size_t n) {
    m.assign(n, 0.0);
    v.assign(n, 0.0);
    step = 0;
  }
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  int minibatches = 0;
  // max over minibatches of mean(surrogate) - (1 + eps) * mean(|A|); never
  // positive by construction of the clipped objective.
  double max_clip_violation = 0.0;
};

// Clipped-surrogate PPO update over shuffled minibatches. Restores the
// incoming parameters and throws NonFiniteGradient if any gradient is not
// finite.
UpdateStats ppo_update(PolicyParams& params, AdamState& adam, const Rollout& rollout,
                       const TrainConfig& cfg, Rng& shuffle_rng);

// Loss and flat gradient over one batch of rollout indices; exposed for the
// finite-difference gradient check.
double ppo_loss_and_grad(const PolicyParams& params, const Rollout& rollout,
                         std::span<const std::size_t> indices,
                         std::span<const double> advantages, const TrainConfig& cfg,
                         std::vector<double>* grad, UpdateStats* stats = nullptr);

int sample_action(std::span<const double> probs, Rng& rng);
int argmax_action(std::span<const double> logits);

}  // namespace pirl
