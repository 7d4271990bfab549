#include "pirl/config.hpp"

#include <fstream>
#include <sstream>

#include "pirl/errors.hpp"

namespace pirl {

void to_json(json& j, const TrainConfig& c) {
  j = json{{"gamma", c.gamma},
           {"gae_lambda", c.gae_lambda},
           {"clip_epsilon", c.clip_epsilon},
           {"learning_rate", c.learning_rate},
           {"epochs_per_update", c.epochs_per_update},
           {"minibatch_size", c.minibatch_size},
           {"rollout_length", c.rollout_length},
           {"entropy_coef", c.entropy_coef},
           {"value_coef", c.value_coef},
           {"max_grad_norm", c.max_grad_norm},
           {"total_episodes", c.total_episodes},
           {"hidden1", c.hidden1},
           {"hidden2", c.hidden2},
           {"normalize_advantages", c.normalize_advantages},
           {"seed", c.seed}};
}

void from_json(const json& j, TrainConfig& c) {
  TrainConfig d;
  c.gamma = j.value("gamma", d.gamma);
  c.gae_lambda = j.value("gae_lambda", d.gae_lambda);
  c.clip_epsilon = j.value("clip_epsilon", d.clip_epsilon);
  c.learning_rate = j.value("learning_rate", d.learning_rate);
  c.epochs_per_update = j.value("epochs_per_update", d.epochs_per_update);
  c.minibatch_size = j.value("minibatch_size", d.minibatch_size);
  c.rollout_length = j.value("rollout_length", d.rollout_length);
  c.entropy_coef = j.value("entropy_coef", d.entropy_coef);
  c.value_coef = j.value("value_coef", d.value_coef);
  c.max_grad_norm = j.value("max_grad_norm", d.max_grad_norm);
  c.total_episodes = j.value("total_episodes", d.total_episodes);
  c.hidden1 = j.value("hidden1", d.hidden1);
  c.hidden2 = j.value("hidden2", d.hidden2);
  c.normalize_advantages = j.value("normalize_advantages", d.normalize_advantages);
  c.seed = j.value("seed", d.seed);
}

void to_json(json& j, const AdvisorSpec& s) {
  j = json{{"backend", s.backend},
           {"interval", s.interval},
           {"url", s.http.url},
           {"model", s.http.model},
           {"temperature", s.http.temperature},
           {"timeout_ms", s.http.timeout_ms},
           {"replay_file", s.replay_file},
           {"record_file", s.record_file}};
}

void from_json(const json& j, AdvisorSpec& s) {
  AdvisorSpec d;
  s.backend = j.value("backend", d.backend);
  s.interval = j.value("interval", d.interval);
  s.http.url = j.value("url", d.http.url);
  s.http.model = j.value("model", d.http.model);
  s.http.temperature = j.value("temperature", d.http.temperature);
  s.http.timeout_ms = j.value("timeout_ms", d.http.timeout_ms);
  s.replay_file = j.value("replay_file", d.replay_file);
  s.record_file = j.value("record_file", d.record_file);
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"method", c.method}, {"seed", c.seed},           {"out_dir", c.out_dir},
           {"env", c.env},       {"train", c.train},         {"alignment", c.alignment},
           {"advisor", c.advisor}};
}

void from_json(const json& j, RunConfig& c) {
  RunConfig d;
  c.method = j.value("method", d.method);
  c.seed = j.value("seed", d.seed);
  c.out_dir = j.value("out_dir", d.out_dir);
  c.env = j.value("env", d.env);
  c.train = j.value("train", d.train);
  c.alignment = j.value("alignment", d.alignment);
  c.advisor = j.value("advisor", d.advisor);
}

void normalize(RunConfig& config) {
  config.train.seed = config.seed;
  config.env.seed = config.seed;
  if (config.alignment.d_max <= 0.0) config.alignment.d_max = config.env.dims.max_distance();
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigInvalid("malformed config JSON in " + path + ": " + e.what());
  }
  RunConfig config = j.get<RunConfig>();
  normalize(config);
  return config;
}

std::shared_ptr<AdvisorBackend> make_advisor(const AdvisorSpec& spec) {
  std::shared_ptr<AdvisorBackend> inner;
  if (spec.backend == "scripted") {
    inner = std::make_shared<ScriptedAdvisor>();
  } else if (spec.backend == "http") {
    inner = std::make_shared<HttpAdvisor>(spec.http);
  } else if (spec.backend == "replay") {
    if (spec.replay_file.empty())
      throw ConfigInvalid("advisor backend 'replay' requires replay_file");
    inner = std::make_shared<ReplayAdvisor>(spec.replay_file);
  } else {
    throw ConfigInvalid("unknown advisor backend: " + spec.backend);
  }
  if (spec.interval > 1 || !spec.record_file.empty())
    return std::make_shared<CachedAdvisor>(inner, spec.interval, spec.record_file);
  return inner;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  json j = {{"version", ck.version},
            {"method", ck.method},
            {"episode", ck.episode},
            {"train_config", ck.train},
            {"env_config", ck.env},
            {"alignment", ck.alignment},
            {"network",
             {{"obs_dim", ck.params.obs_dim},
              {"hidden1", ck.params.hidden1},
              {"hidden2", ck.params.hidden2},
              {"num_actions", ck.params.num_actions}}},
            {"params", ck.params.data},
            {"adam", {{"m", ck.adam.m}, {"v", ck.adam.v}, {"step", ck.adam.step}}},
            {"rng_state", ck.rng_state}};
  std::ofstream out(path);
  if (!out) throw ConfigInvalid("cannot write checkpoint: " + path);
  out << j.dump(2) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open checkpoint: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigInvalid("malformed checkpoint JSON in " + path + ": " + e.what());
  }

  Checkpoint ck;
  ck.version = j.value("version", 1);
  if (ck.version != 1)
    throw CheckpointIncompatible("unsupported checkpoint version " + std::to_string(ck.version));
  ck.method = j.value("method", "pirl");
  ck.episode = j.value("episode", 0);
  if (j.contains("train_config")) j.at("train_config").get_to(ck.train);
  if (j.contains("env_config")) j.at("env_config").get_to(ck.env);
  if (j.contains("alignment")) j.at("alignment").get_to(ck.alignment);

  const auto& net = j.at("network");
  ck.params.obs_dim = net.at("obs_dim").get<int>();
  ck.params.hidden1 = net.at("hidden1").get<int>();
  ck.params.hidden2 = net.at("hidden2").get<int>();
  ck.params.num_actions = net.at("num_actions").get<int>();
  j.at("params").get_to(ck.params.data);
  if (ck.params.data.size() != ck.params.expected_size())
    throw CheckpointIncompatible("parameter count does not match the declared network shape");
  if (j.contains("adam")) {
    j.at("adam").at("m").get_to(ck.adam.m);
    j.at("adam").at("v").get_to(ck.adam.v);
    ck.adam.step = j.at("adam").at("step").get<long>();
  }
  if (j.contains("rng_state")) ck.rng_state = j.at("rng_state");
  return ck;
}

GridDims parse_grid(const std::string& spec) {
  GridDims dims;
  char sep1 = 0, sep2 = 0;
  std::istringstream s(spec);
  if (!(s >> dims.x_size >> sep1 >> dims.y_size >> sep2 >> dims.z_size) ||
      (sep1 != 'x' && sep1 != 'X') || (sep2 != 'x' && sep2 != 'X') || !dims.valid())
    throw ConfigInvalid("grid spec must look like 30x30x3, got: " + spec);
  return dims;
}

}  // namespace pirl
