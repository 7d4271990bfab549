#include "pirl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pirl/errors.hpp"

namespace pirl {

std::vector<double> encode_observation(const UavState& state, const CoverageMap& coverage,
                                       const EnvConfig& env) {
  const GridDims& dims = env.dims;
  std::vector<double> obs;
  obs.reserve(kObservationSize);

  auto axis = [](int v, int n) { return n > 1 ? double(v) / (n - 1) : 0.0; };
  obs.push_back(axis(state.position.x, dims.x_size));
  obs.push_back(axis(state.position.y, dims.y_size));
  obs.push_back(axis(state.position.z, dims.z_size));

  obs.push_back(state.camera.tilt / 90.0);
  obs.push_back(state.camera.pan / 90.0);
  obs.push_back(state.camera.zoom() / 2.0);

  obs.push_back(state.battery);
  obs.push_back(coverage.covered_fraction());

  for (int dx = -2; dx <= 2; ++dx)
    for (int dy = -2; dy <= 2; ++dy) {
      const int x = state.position.x + dx;
      const int y = state.position.y + dy;
      const bool outside = x < 0 || x >= dims.x_size || y < 0 || y >= dims.y_size;
      obs.push_back(outside || coverage.covered(x, y) ? 1.0 : 0.0);
    }

  // Unit vector and normalized distance to the nearest obstacle center.
  double best_dist = -1.0;
  Vec3i best_center{};
  for (const auto& o : env.obstacles) {
    const double d = (o.center - state.position).norm();
    if (best_dist < 0.0 || d < best_dist) {
      best_dist = d;
      best_center = o.center;
    }
  }
  if (best_dist <= 0.0) {
    obs.insert(obs.end(), {0.0, 0.0, 0.0, 1.0});
  } else {
    const Vec3i d = best_center - state.position;
    obs.push_back(d.x / best_dist);
    obs.push_back(d.y / best_dist);
    obs.push_back(d.z / best_dist);
    obs.push_back(std::min(1.0, best_dist / dims.max_distance()));
  }
  return obs;
}

PolicyParams PolicyParams::init(int obs_dim, int hidden1, int hidden2, int num_actions,
                                Rng& rng) {
  PolicyParams p;
  p.obs_dim = obs_dim;
  p.hidden1 = hidden1;
  p.hidden2 = hidden2;
  p.num_actions = num_actions;
  p.data.assign(p.expected_size(), 0.0);

  auto fill = [&rng, &p](std::size_t off, int rows, int cols, double scale) {
    const double bound = scale * std::sqrt(6.0 / (rows + cols));
    for (int i = 0; i < rows * cols; ++i) p.data[off + i] = rng.uniform(-bound, bound);
  };
  fill(p.off_w1(), hidden1, obs_dim, 1.0);
  fill(p.off_w2(), hidden2, hidden1, 1.0);
  // Small head weights keep the initial policy near-uniform.
  fill(p.off_wpi(), num_actions, hidden2, 0.01);
  fill(p.off_wv(), 1, hidden2, 1.0);
  return p;
}

bool PolicyParams::finite() const {
  return std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void affine(const double* w, const double* b, std::span<const double> x, std::vector<double>& out,
            int rows, int cols) {
  out.resize(rows);
  for (int r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* wr = w + std::size_t(r) * cols;
    for (int c = 0; c < cols; ++c) acc += wr[c] * x[c];
    out[r] = acc;
  }
}

void softmax_log(const std::vector<double>& logits, std::vector<double>& probs,
                 std::vector<double>& log_probs) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  probs.resize(logits.size());
  log_probs.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - mx);
    sum += probs[i];
  }
  const double log_sum = std::log(sum);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    log_probs[i] = logits[i] - mx - log_sum;
    probs[i] /= sum;
  }
}

}  // namespace

void policy_forward_cached(const PolicyParams& p, std::span<const double> obs,
                           ForwardCache& cache) {
  const double* d = p.data.data();
  affine(d + p.off_w1(), d + p.off_b1(), obs, cache.h1, p.hidden1, p.obs_dim);
  for (double& v : cache.h1) v = std::tanh(v);
  affine(d + p.off_w2(), d + p.off_b2(), cache.h1, cache.h2, p.hidden2, p.hidden1);
  for (double& v : cache.h2) v = std::tanh(v);
  affine(d + p.off_wpi(), d + p.off_bpi(), cache.h2, cache.logits, p.num_actions, p.hidden2);
  const double* wv = d + p.off_wv();
  double value = d[p.off_bv()];
  for (int i = 0; i < p.hidden2; ++i) value += wv[i] * cache.h2[i];
  cache.value = value;
  softmax_log(cache.logits, cache.probs, cache.log_probs);
}

std::pair<std::vector<double>, double> policy_forward(const PolicyParams& p,
                                                      std::span<const double> obs) {
  ForwardCache cache;
  policy_forward_cached(p, obs, cache);
  return {cache.logits, cache.value};
}

void policy_backward(const PolicyParams& p, std::span<const double> obs,
                     const ForwardCache& cache, std::span<const double> dlogits, double dvalue,
                     std::vector<double>& grad) {
  const double* d = p.data.data();
  double* g = grad.data();

  // Heads into dh2.
  std::vector<double> dh2(p.hidden2, 0.0);
  for (int a = 0; a < p.num_actions; ++a) {
    const double da = dlogits[a];
    if (da == 0.0) continue;
    const double* wr = d + p.off_wpi() + std::size_t(a) * p.hidden2;
    double* gr = g + p.off_wpi() + std::size_t(a) * p.hidden2;
    for (int i = 0; i < p.hidden2; ++i) {
      dh2[i] += wr[i] * da;
      gr[i] += da * cache.h2[i];
    }
    g[p.off_bpi() + a] += da;
  }
  if (dvalue != 0.0) {
    const double* wv = d + p.off_wv();
    double* gv = g + p.off_wv();
    for (int i = 0; i < p.hidden2; ++i) {
      dh2[i] += wv[i] * dvalue;
      gv[i] += dvalue * cache.h2[i];
    }
    g[p.off_bv()] += dvalue;
  }

  // Second hidden layer.
  std::vector<double> dh1(p.hidden1, 0.0);
  for (int r = 0; r < p.hidden2; ++r) {
    const double dpre = dh2[r] * (1.0 - cache.h2[r] * cache.h2[r]);
    if (dpre == 0.0) continue;
    const double* wr = d + p.off_w2() + std::size_t(r) * p.hidden1;
    double* gr = g + p.off_w2() + std::size_t(r) * p.hidden1;
    for (int c = 0; c < p.hidden1; ++c) {
      dh1[c] += wr[c] * dpre;
      gr[c] += dpre * cache.h1[c];
    }
    g[p.off_b2() + r] += dpre;
  }

  // First hidden layer.
  for (int r = 0; r < p.hidden1; ++r) {
    const double dpre = dh1[r] * (1.0 - cache.h1[r] * cache.h1[r]);
    if (dpre == 0.0) continue;
    double* gr = g + p.off_w1() + std::size_t(r) * p.obs_dim;
    for (int c = 0; c < p.obs_dim; ++c) gr[c] += dpre * obs[c];
    g[p.off_b1() + r] += dpre;
  }
}

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
                      double gae_lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n)
    throw LengthMismatch("rewards/values/dones must have equal length");

  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double last_gae = 0.0;
  for (std::size_t idx = n; idx-- > 0;) {
    const double not_done = dones[idx] ? 0.0 : 1.0;
    const double next_value = idx + 1 < n ? values[idx + 1] : bootstrap_value;
    const double delta = rewards[idx] + gamma * next_value * not_done - values[idx];
    last_gae = delta + gamma * gae_lambda * not_done * last_gae;
    out.advantages[idx] = last_gae;
    out.returns[idx] = last_gae + values[idx];
  }
  return out;
}

void Rollout::clear() {
  observations.clear();
  actions.clear();
  log_probs.clear();
  values.clear();
  rewards.clear();
  dones.clear();
  advantages.clear();
  returns.clear();
}

void Rollout::push(std::span<const double> obs, int action, double log_prob, double value,
                   double reward, bool done) {
  observations.insert(observations.end(), obs.begin(), obs.end());
  actions.push_back(action);
  log_probs.push_back(log_prob);
  values.push_back(value);
  rewards.push_back(reward);
  dones.push_back(done ? 1 : 0);
}

void Rollout::finish(double bootstrap_value, double gamma, double gae_lambda) {
  auto gae = compute_gae(rewards, values, dones, bootstrap_value, gamma, gae_lambda);
  advantages = std::move(gae.advantages);
  returns = std::move(gae.returns);
}

void TrainConfig::validate() const {
  if (gamma < 0.0 || gamma > 1.0) throw ConfigInvalid("gamma must lie in [0, 1]");
  if (clip_epsilon <= 0.0) throw ConfigInvalid("clip_epsilon must be positive");
  if (epochs_per_update < 1 || minibatch_size < 1 || rollout_length < 1 || total_episodes < 1)
    throw ConfigInvalid("epoch/minibatch/rollout/episode counts must be >= 1");
  if (minibatch_size > rollout_length)
    throw ConfigInvalid("minibatch_size must not exceed rollout_length");
  if (hidden1 < 1 || hidden2 < 1) throw ConfigInvalid("hidden sizes must be >= 1");
}

double ppo_loss_and_grad(const PolicyParams& params, const Rollout& rollout,
                         std::span<const std::size_t> indices,
                         std::span<const double> advantages, const TrainConfig& cfg,
                         std::vector<double>* grad, UpdateStats* stats) {
  const double inv_n = 1.0 / static_cast<double>(indices.size());
  double pg_loss = 0.0, v_loss = 0.0, entropy_sum = 0.0, kl_sum = 0.0, surr_sum = 0.0,
         abs_adv_sum = 0.0, total = 0.0;

  ForwardCache cache;
  std::vector<double> dlogits(params.num_actions);
  for (const std::size_t i : indices) {
    const auto obs = rollout.observation(i);
    policy_forward_cached(params, obs, cache);
    const int a = rollout.actions[i];
    const double adv = advantages[i];
    const double log_ratio = cache.log_probs[a] - rollout.log_probs[i];
    const double ratio = std::exp(log_ratio);
    const double clipped =
        std::clamp(ratio, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon);
    const double u1 = ratio * adv;
    const double u2 = clipped * adv;
    const double surrogate = std::min(u1, u2);

    double entropy = 0.0;
    for (int k = 0; k < params.num_actions; ++k)
      entropy -= cache.probs[k] * cache.log_probs[k];

    const double v_err = cache.value - rollout.returns[i];

    pg_loss += -surrogate;
    v_loss += cfg.value_coef * v_err * v_err;
    entropy_sum += entropy;
    kl_sum += (ratio - 1.0) - log_ratio;
    surr_sum += surrogate;
    abs_adv_sum += std::abs(adv);
    total += (-surrogate - cfg.entropy_coef * entropy + cfg.value_coef * v_err * v_err) * inv_n;

    if (grad) {
      // d(-surrogate)/dlogp_a: the clipped branch is flat outside the band.
      const double dsurr_dlogp = u1 <= u2 ? ratio * adv : 0.0;
      for (int k = 0; k < params.num_actions; ++k) {
        const double indicator = k == a ? 1.0 : 0.0;
        const double dlogp_dlk = indicator - cache.probs[k];
        const double d_pg = -dsurr_dlogp * dlogp_dlk;
        const double d_ent = cfg.entropy_coef * cache.probs[k] * (cache.log_probs[k] + entropy);
        dlogits[k] = (d_pg + d_ent) * inv_n;
      }
      const double dvalue = 2.0 * cfg.value_coef * v_err * inv_n;
      policy_backward(params, obs, cache, dlogits, dvalue, *grad);
    }
  }

  if (stats) {
    stats->policy_loss = pg_loss * inv_n;
    stats->value_loss = v_loss * inv_n;
    stats->entropy = entropy_sum * inv_n;
    stats->approx_kl = kl_sum * inv_n;
    stats->max_clip_violation =
        surr_sum * inv_n - (1.0 + cfg.clip_epsilon) * abs_adv_sum * inv_n;
  }
  return total;
}

namespace {

void adam_step(PolicyParams& params, AdamState& adam, std::vector<double>& grad,
               const TrainConfig& cfg) {
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;

  if (cfg.max_grad_norm > 0.0) {
    double sq = 0.0;
    for (double g : grad) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > cfg.max_grad_norm) {
      const double scale = cfg.max_grad_norm / norm;
      for (double& g : grad) g *= scale;
    }
  }

  ++adam.step;
  const double bc1 = 1.0 - std::pow(kBeta1, adam.step);
  const double bc2 = 1.0 - std::pow(kBeta2, adam.step);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    adam.m[i] = kBeta1 * adam.m[i] + (1.0 - kBeta1) * grad[i];
    adam.v[i] = kBeta2 * adam.v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
    const double m_hat = adam.m[i] / bc1;
    const double v_hat = adam.v[i] / bc2;
    params.data[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + kEps);
  }
}

}  // namespace

UpdateStats ppo_update(PolicyParams& params, AdamState& adam, const Rollout& rollout,
                       const TrainConfig& cfg, Rng& shuffle_rng) {
  const std::size_t n = rollout.size();
  if (rollout.advantages.size() != n || rollout.returns.size() != n)
    throw LengthMismatch("rollout advantages must be computed before ppo_update");
  if (n == 0) return {};

  auto all_finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  // A NaN advantage would silently mask the surrogate branch (NaN compares
  // false), so reject non-finite inputs up front.
  if (!all_finite(rollout.advantages) || !all_finite(rollout.returns) ||
      !all_finite(rollout.log_probs))
    throw NonFiniteGradient();

  // Batch-level advantage normalization.
  std::vector<double> advantages = rollout.advantages;
  if (cfg.normalize_advantages && n >= 2) {
    double mean = std::accumulate(advantages.begin(), advantages.end(), 0.0) / n;
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double stddev = std::sqrt(var / n);
    for (double& a : advantages) a = (a - mean) / (stddev + 1e-8);
  }

  const std::vector<double> snapshot = params.data;
  const AdamState adam_snapshot = adam;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  UpdateStats accum;
  accum.max_clip_violation = -std::numeric_limits<double>::infinity();
  std::vector<double> grad(params.size());
  int batches = 0;
  for (int epoch = 0; epoch < cfg.epochs_per_update; ++epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < n; start += cfg.minibatch_size) {
      const std::size_t stop = std::min(n, start + cfg.minibatch_size);
      std::span<const std::size_t> batch(order.data() + start, stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      UpdateStats stats;
      ppo_loss_and_grad(params, rollout, batch, advantages, cfg, &grad, &stats);

      const bool ok =
          std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); });
      if (!ok) {
        params.data = snapshot;
        adam = adam_snapshot;
        throw NonFiniteGradient();
      }
      adam_step(params, adam, grad, cfg);

      accum.policy_loss += stats.policy_loss;
      accum.value_loss += stats.value_loss;
      accum.entropy += stats.entropy;
      accum.approx_kl = stats.approx_kl;
      accum.max_clip_violation = std::max(accum.max_clip_violation, stats.max_clip_violation);
      ++batches;
    }
  }
  if (batches > 0) {
    accum.policy_loss /= batches;
    accum.value_loss /= batches;
    accum.entropy /= batches;
  }
  accum.minibatches = batches;
  return accum;
}

int sample_action(std::span<const double> probs, Rng& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

int argmax_action(std::span<const double> logits) {
  return static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin());
}

}  // namespace pirl
