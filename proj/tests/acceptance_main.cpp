// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 trains PIRL against both PPO baselines at desk scale
// and dominates the runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pirl/cli.hpp"
#include "pirl/config.hpp"
#include "pirl/errors.hpp"
#include "pirl/eval.hpp"
#include "pirl/json_io.hpp"
#include "pirl/train.hpp"

using namespace pirl;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

void expect_near(double actual, double wanted, double tol, const std::string& what) {
  if (!(std::abs(actual - wanted) <= tol)) {
    std::ostringstream s;
    s << what << ": got " << actual << ", wanted " << wanted << " (tol " << tol << ")";
    throw Failure(s.str());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  expect(static_cast<bool>(in), "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::vector<const char*> argv{"pirl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  if (out) *out = captured.str();
  return code;
}

// ---------------------------------------------------------------- criterion 1

void criterion_prompt_fidelity() {
  const auto start = std::chrono::steady_clock::now();
  std::string out;
  const std::string state = std::string(PIRL_GOLDEN_DIR) + "/sample_state.json";
  expect(run_cli({"prompt", "--state", state}, &out) == 0, "prompt command failed");
  const std::string golden = read_file(std::string(PIRL_GOLDEN_DIR) + "/sample_prompt.txt");
  expect(out == golden, "prompt text deviates from the frozen sample");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 1.0, "prompt rendering took " + std::to_string(secs) + "s");
}

// ---------------------------------------------------------------- criterion 2

void criterion_parser_fidelity() {
  const GridDims dims{15, 15, 3};
  UavState current;
  current.position = {14, 0, 2};

  const Advice expected =
      parse_advice("pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0", current, dims);
  expect(expected.delta_position == Vec3i{-1, 0, 0}, "sample delta");
  expect(expected.camera_target == CameraConfig{45, 75, 10}, "sample camera");

  // 200 well-formed permutations: shuffled keys, varied case/whitespace.
  Rng rng(20240);
  const std::string keys[6] = {"pan", "tilt", "zoom", "X", "Y", "Z"};
  const std::string values[6] = {"75", "45", "1", "-1", "0", "0"};
  const std::string separators[4] = {", ", "\n", " ,  ", ";  "};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    std::string text = trial % 3 == 0 ? "Recommendation => " : "";
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::string key = keys[order[i]];
      if (trial % 2 == 0)
        for (char& c : key) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      text += key;
      if (rng.uniform() < 0.5) text += " ";
      text += ":";
      if (rng.uniform() < 0.7) text += "  ";
      text += values[order[i]];
      if (i + 1 < order.size()) text += separators[rng.uniform_int(std::uint64_t{4})];
    }
    const Advice parsed = parse_advice(text, current, dims);
    expect(parsed == expected, "permutation parses differently: " + text);
  }

  const char* malformed[] = {
      "I recommend moving left",
      "",
      "pan 75 tilt 45",
      "pan: , tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0",
      "pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0",
      "pan: up, tilt: down, zoom: wide, X: left, Y: none, Z: none",
      "{\"pan\": }",
      "pan:1e999x",
  };
  for (const char* text : malformed) {
    try {
      parse_advice(text, current, dims);
      throw Failure(std::string("malformed input parsed: ") + text);
    } catch (const AdviceUnparseable&) {
    }
  }
}

// ---------------------------------------------------------------- criterion 3

long double oracle_dir(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  long double nu = 0, nv = 0, dot = 0;
  for (int i = 0; i < 3; ++i) {
    nu += static_cast<long double>(u[i]) * u[i];
    nv += static_cast<long double>(v[i]) * v[i];
    dot += static_cast<long double>(u[i]) * v[i];
  }
  if (nu == 0 || nv == 0) return 0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

void criterion_pare_oracle() {
  const GridDims dims{15, 15, 3};
  const long double d_max = std::sqrt(static_cast<long double>(14 * 14 + 14 * 14 + 2 * 2));
  AlignmentParams params = AlignmentParams::for_grid(dims);

  Rng rng(555);
  for (int i = 0; i < 1000; ++i) {
    UavState prev, next;
    prev.position = {rng.uniform_int(0, 14), rng.uniform_int(0, 14), rng.uniform_int(0, 2)};
    next.position = {rng.uniform_int(0, 14), rng.uniform_int(0, 14), rng.uniform_int(0, 2)};
    prev.camera = CameraConfig{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                               rng.uniform_int(5, 20)};
    next.camera = CameraConfig{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                               rng.uniform_int(5, 20)};
    Advice advice;
    advice.delta_position = {rng.uniform_int(-1, 1), rng.uniform_int(-1, 1), rng.uniform_int(-1, 1)};
    advice.target_position = dims.clamp(prev.position + advice.delta_position);
    advice.camera_target = CameraConfig{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                                        rng.uniform_int(5, 20)};

    const Vec3i am = next.position - prev.position;
    const Vec3i lm = advice.target_position - prev.position;
    const std::array<double, 3> u{double(am.x), double(am.y), double(am.z)};
    const std::array<double, 3> v{double(lm.x), double(lm.y), double(lm.z)};

    const double dir = dir_align(u, v);
    expect_near(dir, static_cast<double>(oracle_dir(u, v)), 1e-9, "dir_align");
    expect(dir >= -1.0 - 1e-12 && dir <= 1.0 + 1e-12, "dir_align bounds");

    const Vec3i diff = next.position - advice.target_position;
    const long double dist = std::sqrt(static_cast<long double>(diff.x) * diff.x +
                                       static_cast<long double>(diff.y) * diff.y +
                                       static_cast<long double>(diff.z) * diff.z);
    const double pos = pos_align(next.position, advice.target_position, params.d_max);
    expect_near(pos, static_cast<double>(1.0L - dist / d_max), 1e-9, "pos_align");
    expect(pos >= 0.0 && pos <= 1.0, "pos_align bounds");

    const double alpha = rng.uniform();
    expect_near(move_reward(alpha, dir, pos),
                static_cast<double>(static_cast<long double>(alpha) * dir +
                                    (1.0L - static_cast<long double>(alpha)) * pos),
                1e-9, "move_reward");

    const long double pen_oracle =
        -(std::abs(static_cast<long double>(next.camera.tilt - advice.camera_target.tilt)) +
          std::abs(static_cast<long double>(next.camera.pan - advice.camera_target.pan)) +
          std::abs(static_cast<long double>(next.camera.zoom_tenths -
                                            advice.camera_target.zoom_tenths)) /
              10.0L);
    const double pen = cam_align_penalty(next.camera, advice.camera_target);
    expect_near(pen, static_cast<double>(pen_oracle), 1e-9, "cam_align_penalty");
    expect(pen <= 0.0, "cam_align_penalty sign");

    const double shaped = llm_shaping(params, next, prev, advice);
    const long double shaped_oracle =
        static_cast<long double>(params.w_cam_align) * pen_oracle +
        static_cast<long double>(params.w_move_align) *
            (static_cast<long double>(params.alpha) * oracle_dir(u, v) +
             (1.0L - static_cast<long double>(params.alpha)) * (1.0L - dist / d_max));
    expect_near(shaped, static_cast<double>(shaped_oracle), 1e-9, "llm_shaping");
  }
}

// ---------------------------------------------------------------- criterion 4

void criterion_metric_oracle() {
  EnvConfig cfg;  // 15x15x3 defaults with sampled obstacles and wind
  const fs::path dir = fresh_dir("pirl_acc_metrics");
  const fs::path log_path = dir / "traj.jsonl";

  ScriptedAdvisor advisor;
  EvalReport report;
  {
    std::ofstream log(log_path);
    TrajectoryWriter writer(log);
    report = run_llm_only(advisor, cfg, 20, 20250811, &writer);
  }

  // Independent recount straight from the JSONL bytes.
  std::ifstream in(log_path);
  std::string line;
  int episode = -1;
  std::map<std::pair<int, int>, int> visits;
  double battery_after = 1.0;
  std::vector<std::array<double, 3>> recounted;  // vcr, be, rvc
  auto flush_episode = [&]() {
    if (episode < 0) return;
    int covered = 0, multi = 0;
    for (const auto& [cell, count] : visits) {
      covered += count > 0;
      multi += count > 1;
    }
    const double v = covered / 225.0;
    const double be = v / (2.0 - battery_after / 1.0);
    const double r = covered > 0 ? static_cast<double>(multi) / covered : 0.0;
    recounted.push_back({v, be, r});
  };
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "episode") {
      flush_episode();
      ++episode;
      visits.clear();
      battery_after = 1.0;
    } else if (type == "step") {
      for (const auto& cell : j.at("events").at("observed"))
        ++visits[{cell.at(0).get<int>(), cell.at(1).get<int>()}];
      battery_after =
          j.at("state").at("battery").get<double>() - j.at("events").at("battery_drain").get<double>();
    }
  }
  flush_episode();

  expect(recounted.size() == report.episodes.size(), "episode count mismatch");
  for (std::size_t i = 0; i < recounted.size(); ++i) {
    expect(recounted[i][0] == report.episodes[i].vcr, "vcr recount differs");
    expect(recounted[i][2] == report.episodes[i].rvc, "rvc recount differs");
    expect_near(recounted[i][1], report.episodes[i].be, 1e-12, "be recount");
  }
}

// ---------------------------------------------------------------- criterion 5

void criterion_reward_decomposition() {
  Rng rng(606);
  for (int i = 0; i < 1000; ++i) {
    const RewardWeights w = sample_ewri_weights(rng);
    StepEvents events;
    events.newly_covered = static_cast<int>(rng.uniform_int(std::uint64_t{30}));
    events.redundant = rng.uniform() < 0.3;
    events.collision = rng.uniform() < 0.2;
    events.idle = rng.uniform() < 0.2;
    events.battery_drain = rng.uniform() * 0.01;
    const int before = static_cast<int>(rng.uniform_int(std::uint64_t{200}));
    const int after = before + events.newly_covered;
    std::vector<int> prior(rng.uniform_int(std::uint64_t{50}));
    for (int& v : prior) v = static_cast<int>(rng.uniform_int(std::uint64_t{40}));
    const bool camera_action = rng.uniform() < 0.5;
    const double shaping = rng.uniform(-30.0, 1.0);

    const RewardBreakdown b =
        compute_reward(w, events, before, after, 225, prior, camera_action, shaping);
    const double reassembled =
        w.lambda_c * b.delta_coverage + w.lambda_r * b.redundant + w.lambda_b * b.battery_pen +
        w.lambda_cam_usage * b.cam_usage + w.lambda_cur * b.curiosity +
        w.lambda_collision * b.collision + w.lambda_idle * b.idle + w.lambda_llm * b.llm_shaping;
    expect_near(b.total, reassembled, 1e-9, "reward decomposition");
  }

  Rng ewri(607);
  for (int i = 0; i < 10000; ++i) {
    const RewardWeights w = sample_ewri_weights(ewri);
    expect(w.lambda_c >= 0.5 && w.lambda_c <= 1.5, "lambda_c range");
    expect(w.lambda_r >= -1.0 && w.lambda_r <= -0.2, "lambda_r range");
    expect(w.lambda_b >= -0.5 && w.lambda_b <= -0.1, "lambda_b range");
    expect(w.lambda_cam_usage >= 0.2 && w.lambda_cam_usage <= 0.6, "lambda_cam range");
    expect(w.lambda_cur >= 0.2 && w.lambda_cur <= 0.5, "lambda_cur range");
    expect(w.lambda_collision >= -1.5 && w.lambda_collision <= -0.8, "lambda_collision range");
    expect(w.lambda_idle >= -0.8 && w.lambda_idle <= -0.3, "lambda_idle range");
    expect(w.lambda_llm >= 0.2 && w.lambda_llm <= 0.6, "lambda_llm range");
  }
}

// ---------------------------------------------------------------- criterion 6

void criterion_gradient_check() {
  const auto start = std::chrono::steady_clock::now();
  TrainConfig cfg;
  cfg.clip_epsilon = 0.2;
  cfg.entropy_coef = 0.01;
  cfg.value_coef = 0.5;

  Rng rng(707);
  for (int draw = 0; draw < 50; ++draw) {
    PolicyParams params = PolicyParams::init(4, 8, 8, 5, rng);
    Rollout rollout;
    rollout.obs_dim = 4;
    std::vector<double> obs(4);
    for (int i = 0; i < 12; ++i) {
      for (double& v : obs) v = rng.uniform(-1.0, 1.0);
      const int action = static_cast<int>(rng.uniform_int(std::uint64_t{5}));
      ForwardCache cache;
      policy_forward_cached(params, obs, cache);
      rollout.push(obs, action, cache.log_probs[action] + rng.uniform(-0.4, 0.4), cache.value,
                   rng.uniform(-1.0, 1.0), rng.uniform() < 0.15);
    }
    rollout.finish(rng.uniform(-1.0, 1.0), 0.99, 0.95);

    std::vector<std::size_t> idx(rollout.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<double> grad(params.size(), 0.0);
    ppo_loss_and_grad(params, rollout, idx, rollout.advantages, cfg, &grad);

    const double h = 1e-5;
    PolicyParams probe = params;
    double diff = 0.0, na = 0.0, nf = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
      probe.data[i] = params.data[i] + h;
      const double up = ppo_loss_and_grad(probe, rollout, idx, rollout.advantages, cfg, nullptr);
      probe.data[i] = params.data[i] - h;
      const double down = ppo_loss_and_grad(probe, rollout, idx, rollout.advantages, cfg, nullptr);
      probe.data[i] = params.data[i];
      const double fd = (up - down) / (2.0 * h);
      diff += (grad[i] - fd) * (grad[i] - fd);
      na += grad[i] * grad[i];
      nf += fd * fd;
    }
    const double rel = std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nf), 1e-12});
    expect(rel < 1e-4, "gradient relative error " + std::to_string(rel) + " at draw " +
                           std::to_string(draw));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 30.0, "gradient check took " + std::to_string(secs) + "s");
}

// ---------------------------------------------------------------- criterion 7

void criterion_clip_points() {
  Rng rng(808);
  PolicyParams params = PolicyParams::init(3, 4, 4, 3, rng);
  std::vector<double> obs{0.3, -0.2, 0.8};
  ForwardCache cache;
  policy_forward_cached(params, obs, cache);

  TrainConfig cfg;
  cfg.clip_epsilon = 0.2;
  cfg.entropy_coef = 0.0;
  cfg.value_coef = 0.0;

  auto surrogate = [&](double ratio, double advantage) {
    Rollout r;
    r.obs_dim = 3;
    r.push(obs, 0, cache.log_probs[0] - std::log(ratio), cache.value, 0.0, true);
    r.advantages = {advantage};
    r.returns = {0.0};
    const std::size_t idx[] = {0};
    return -ppo_loss_and_grad(params, r, idx, r.advantages, cfg, nullptr);
  };

  expect_near(surrogate(1.5, 2.0), 2.4, 1e-9, "clip point (1.5, 0.2, 2)");
  expect_near(surrogate(0.5, -1.0), -0.8, 1e-9, "clip point (0.5, 0.2, -1)");
}

// ---------------------------------------------------------------- criterion 8

void criterion_scaling() {
  const GridDims train{15, 15, 3};
  expect(scale_factor(train, {30, 30, 3}) == 4.0, "alpha(30x30x3) != 4");
  expect(scale_factor(train, {60, 60, 3}) == 16.0, "alpha(60x60x3) != 16");

  EnvConfig base;
  const EnvConfig scaled = scale_env(base, {30, 30, 3});
  expect(scaled.max_steps == 4 * base.max_steps, "scaled step budget");

  // A scaled episode really runs alpha * T_base steps.
  ScriptedAdvisor advisor;
  EvalReport report = run_llm_only(advisor, scaled, 1, 5, nullptr);
  expect(report.episodes[0].steps_used == scaled.max_steps,
         "scaled episode used " + std::to_string(report.episodes[0].steps_used) + " steps");
  expect(report.episodes[0].battery_final > 0.0, "scaled battery exhausted early");
}

// ---------------------------------------------------------------- criterion 9

struct MethodOutcome {
  double vcr = 0.0;
  double rvc = 0.0;
};

MethodOutcome train_and_eval(TrainMode mode, std::uint64_t seed) {
  EnvConfig env;  // 15x15x3 training defaults

  TrainConfig cfg;
  cfg.total_episodes = 300;
  cfg.rollout_length = 450;
  cfg.minibatch_size = 90;
  cfg.epochs_per_update = 4;
  cfg.seed = seed;

  AlignmentParams align = AlignmentParams::for_grid(env.dims);
  align.normalized = true;  // keep camera deviations on the coverage scale

  std::shared_ptr<AdvisorBackend> advisor;
  if (mode == TrainMode::kPirl)
    advisor = std::make_shared<CachedAdvisor>(std::make_shared<ScriptedAdvisor>(), 5);

  TrainResult result = train(env, mode, cfg, align, advisor.get());

  GreedyPolicyController controller(std::move(result.params));
  const EvalReport report = evaluate(controller, env, 20, 90000 + seed, to_string(mode));
  return {report.mean_vcr, report.mean_rvc};
}

void criterion_directional_training() {
  const auto start = std::chrono::steady_clock::now();
  double pirl_vcr = 0, pirl_rvc = 0, sr_vcr = 0, sr_rvc = 0, ewri_vcr = 0;
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    const MethodOutcome pirl = train_and_eval(TrainMode::kPirl, seed);
    const MethodOutcome sr = train_and_eval(TrainMode::kStaticReward, seed);
    const MethodOutcome ewri = train_and_eval(TrainMode::kEwri, seed);
    std::printf("    seed %llu: VCR pirl %.4f | ppo-sr %.4f | ppo-ewri %.4f ; RVC pirl %.4f | ppo-sr %.4f\n",
                static_cast<unsigned long long>(seed), pirl.vcr, sr.vcr, ewri.vcr, pirl.rvc,
                sr.rvc);
    pirl_vcr += pirl.vcr / 3;
    pirl_rvc += pirl.rvc / 3;
    sr_vcr += sr.vcr / 3;
    sr_rvc += sr.rvc / 3;
    ewri_vcr += ewri.vcr / 3;
  }
  std::printf("    3-seed means: VCR pirl %.4f | ppo-sr %.4f | ppo-ewri %.4f ; RVC pirl %.4f | ppo-sr %.4f\n",
              pirl_vcr, sr_vcr, ewri_vcr, pirl_rvc, sr_rvc);
  expect(pirl_vcr >= sr_vcr, "mean VCR: pirl below ppo-sr");
  expect(pirl_vcr >= ewri_vcr, "mean VCR: pirl below ppo-ewri");
  expect(pirl_rvc <= sr_rvc, "mean RVC: pirl above ppo-sr");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 1200.0, "directional training took " + std::to_string(secs) + "s");
}

// --------------------------------------------------------------- criterion 10

void criterion_train_determinism() {
  const fs::path dir = fresh_dir("pirl_acc_determinism");
  RunConfig config;
  config.method = "pirl";
  config.seed = 17;
  config.out_dir = (dir / "out").string();
  config.env.max_steps = 40;
  config.train.total_episodes = 6;
  config.train.rollout_length = 80;
  config.train.minibatch_size = 40;
  config.train.hidden1 = 16;
  config.train.hidden2 = 16;
  const fs::path cfg_path = dir / "config.json";
  {
    std::ofstream out(cfg_path);
    out << json(config).dump(2) << "\n";
  }

  expect(run_cli({"train", "--config", cfg_path.string()}) == 0, "first train run failed");
  const std::string checkpoint = read_file(dir / "out" / "checkpoint.json");
  const std::string log = read_file(dir / "out" / "training_log.jsonl");

  expect(run_cli({"train", "--config", cfg_path.string()}) == 0, "second train run failed");
  expect(read_file(dir / "out" / "checkpoint.json") == checkpoint,
         "checkpoint bytes differ between identical runs");
  expect(read_file(dir / "out" / "training_log.jsonl") == log,
         "training log bytes differ between identical runs");
}

// --------------------------------------------------------------- criterion 11

void criterion_fairness() {
  const fs::path dir = fresh_dir("pirl_acc_fairness");

  // Tiny checkpoints for the three policy methods.
  std::map<std::string, std::string> checkpoints;
  for (const std::string method : {"pirl", "ppo-sr", "ppo-ewri"}) {
    RunConfig config;
    config.method = method;
    config.seed = 23;
    config.out_dir = (dir / ("train_" + method)).string();
    config.env.max_steps = 30;
    config.train.total_episodes = 2;
    config.train.rollout_length = 60;
    config.train.minibatch_size = 30;
    config.train.hidden1 = 16;
    config.train.hidden2 = 16;
    const fs::path cfg_path = dir / ("cfg_" + method + ".json");
    {
      std::ofstream out(cfg_path);
      out << json(config).dump(2) << "\n";
    }
    expect(run_cli({"train", "--config", cfg_path.string()}) == 0, "training " + method);
    checkpoints[method] = config.out_dir + "/checkpoint.json";
  }

  const std::string base_seed = "31415";
  std::map<std::string, std::vector<TrajectoryEpisode>> logs;
  for (const std::string method : {"pirl", "ppo-sr", "ppo-ewri", "llm-only"}) {
    const std::string out_dir = (dir / ("eval_" + method)).string();
    std::vector<std::string> args{"eval",       "--method", method,    "--episodes", "6",
                                  "--seed",     base_seed,  "--out",   out_dir};
    if (method != "llm-only") {
      args.push_back("--checkpoint");
      args.push_back(checkpoints[method]);
    }
    expect(run_cli(args) == 0, "evaluating " + method);
    logs[method] = read_trajectory_file(out_dir + "/trajectory.jsonl");
    expect(logs[method].size() == 6, method + " episode count");
  }

  const auto& reference = logs["pirl"];
  for (const auto& [method, episodes] : logs) {
    for (std::size_t k = 0; k < episodes.size(); ++k) {
      expect(episodes[k].start.position == reference[k].start.position,
             method + " start position differs at episode " + std::to_string(k));
      expect(episodes[k].obstacles.size() == reference[k].obstacles.size(),
             method + " obstacle count differs at episode " + std::to_string(k));
      for (std::size_t i = 0; i < episodes[k].obstacles.size(); ++i)
        expect(episodes[k].obstacles[i] == reference[k].obstacles[i],
               method + " obstacle layout differs at episode " + std::to_string(k));
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "prompt fidelity (byte-exact sample prompt, < 1 s)", criterion_prompt_fidelity},
      {2, "parser fidelity (sample, 200 permutations, malformed)", criterion_parser_fidelity},
      {3, "pare oracle equivalence (1000 pairs, 1e-9)", criterion_pare_oracle},
      {4, "metric oracle equivalence (20 episodes, recount)", criterion_metric_oracle},
      {5, "reward decomposition and ewri ranges", criterion_reward_decomposition},
      {6, "gradient check vs central differences (< 30 s)", criterion_gradient_check},
      {7, "clip-formula point checks", criterion_clip_points},
      {8, "volume scaling of steps and battery", criterion_scaling},
      {9, "directional training: pirl vs baselines (< 20 min)", criterion_directional_training},
      {10, "end-to-end training determinism", criterion_train_determinism},
      {11, "paired-seed fairness across methods", criterion_fairness},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d. %s (%.1fs)%s%s\n", verdict.c_str(), c.id, c.name, secs,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("all %d acceptance criteria passed\n",
                static_cast<int>(std::size(criteria)));
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
