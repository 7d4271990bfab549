#include "pirl/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pirl/config.hpp"
#include "pirl/errors.hpp"
#include "pirl/eval.hpp"
#include "pirl/train.hpp"

namespace pirl::cli {

namespace {

namespace fs = std::filesystem;

std::atomic<bool> g_stop{false};

void handle_signal(int) { g_stop.store(true); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigInvalid("cannot write " + path.string());
  out << text;
}

void write_effective_config(const RunConfig& config, const fs::path& out_dir) {
  write_text(out_dir / "effective_config.json", json(config).dump(2) + "\n");
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string method;
  std::string grid;
  std::string advisor;
  int advisor_interval = 0;
  int episodes = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

// Flags override config-file values.
RunConfig resolve_config(const CommonFlags& flags, bool require_file) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    config = load_run_config(flags.config_path);
  } else if (require_file) {
    throw ConfigInvalid("a --config file is required");
  }
  if (flags.seed_set) config.seed = flags.seed;
  if (!flags.method.empty()) config.method = flags.method;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (!flags.advisor.empty()) config.advisor.backend = flags.advisor;
  if (flags.advisor_interval > 0) config.advisor.interval = flags.advisor_interval;
  if (flags.episodes > 0) config.train.total_episodes = flags.episodes;
  if (!flags.grid.empty()) config.env.dims = parse_grid(flags.grid);
  normalize(config);
  return config;
}

int cmd_train(const CommonFlags& flags, bool log_trajectory) {
  RunConfig config = resolve_config(flags, true);
  if (config.method == "llm-only")
    throw ConfigInvalid("llm-only is an inference baseline; use `pirl eval --method llm-only`");
  const TrainMode mode = train_mode_from_string(config.method);

  fs::create_directories(config.out_dir);
  const fs::path out_dir(config.out_dir);
  write_effective_config(config, out_dir);

  std::shared_ptr<AdvisorBackend> advisor;
  if (mode == TrainMode::kPirl) advisor = make_advisor(config.advisor);

  std::ofstream log_stream(out_dir / "training_log.jsonl");
  if (!log_stream) throw ConfigInvalid("cannot write training log in " + config.out_dir);
  std::ofstream trajectory_stream;
  std::unique_ptr<TrajectoryWriter> trajectory;
  if (log_trajectory) {
    trajectory_stream.open(out_dir / "trajectory.jsonl");
    trajectory = std::make_unique<TrajectoryWriter>(trajectory_stream);
  }

  std::signal(SIGINT, handle_signal);
  TrainResult result = train(config.env, mode, config.train, config.alignment, advisor.get(),
                             &log_stream, trajectory.get(), &g_stop);
  std::signal(SIGINT, SIG_DFL);

  Checkpoint ck;
  ck.method = config.method;
  ck.episode = result.episodes;
  ck.train = config.train;
  ck.env = config.env;
  ck.alignment = config.alignment;
  ck.params = std::move(result.params);
  ck.adam = std::move(result.adam);
  ck.rng_state = json{{"action", result.rng_state.action},
                      {"shuffle", result.rng_state.shuffle},
                      {"ewri", result.rng_state.ewri}};
  save_checkpoint((out_dir / "checkpoint.json").string(), ck);

  std::cout << "trained " << result.episodes << " episodes (" << config.method << "), advisor calls "
            << result.advisor_calls << "\n"
            << "checkpoint: " << (out_dir / "checkpoint.json").string() << "\n";
  return result.episodes == config.train.total_episodes ? 0 : 1;
}

int cmd_eval(const CommonFlags& flags, const std::string& checkpoint_path) {
  RunConfig config = resolve_config(flags, false);
  const std::string method = config.method;
  const int episodes = flags.episodes > 0 ? flags.episodes : 20;

  EnvConfig env_config = config.env;
  Checkpoint ck;
  if (method != "llm-only") {
    if (checkpoint_path.empty()) throw ConfigInvalid("--checkpoint is required for method " + method);
    ck = load_checkpoint(checkpoint_path);
    env_config = ck.env;
  }

  // Zero-shot scaling: step and battery budgets follow the volume ratio.
  if (!flags.grid.empty()) {
    const GridDims test_dims = parse_grid(flags.grid);
    if (!(test_dims == env_config.dims)) env_config = scale_env(env_config, test_dims);
  }
  env_config.seed = config.seed;

  fs::create_directories(config.out_dir);
  const fs::path out_dir(config.out_dir);
  config.env = env_config;
  write_effective_config(config, out_dir);

  std::ofstream trajectory_stream(out_dir / "trajectory.jsonl");
  TrajectoryWriter trajectory(trajectory_stream);

  EvalReport report;
  if (method == "llm-only") {
    auto advisor = make_advisor(config.advisor);
    report = run_llm_only(*advisor, env_config, episodes, config.seed, &trajectory);
  } else {
    // Fail fast on an observation-length mismatch before running episodes.
    Environment probe_env(env_config);
    const auto probe = encode_observation(probe_env.state(), probe_env.coverage(), env_config);
    if (static_cast<int>(probe.size()) != ck.params.obs_dim)
      throw CheckpointIncompatible(
          "checkpoint expects observation length " + std::to_string(ck.params.obs_dim) +
          ", environment produces " + std::to_string(probe.size()));
    GreedyPolicyController controller(std::move(ck.params));
    report = evaluate(controller, env_config, episodes, config.seed, method, &trajectory);
  }

  std::ofstream csv(out_dir / "metrics.csv");
  write_csv(csv, std::span<const EvalReport>(&report, 1));

  std::cout << "method " << report.method << " on " << report.grid.label() << ": mean VCR "
            << report.mean_vcr << ", mean BE " << report.mean_be << ", mean RVC "
            << report.mean_rvc << " over " << report.episodes.size() << " episodes\n"
            << "outputs in " << out_dir.string() << "\n";
  return 0;
}

int cmd_prompt(const std::string& state_path) {
  std::ifstream in(state_path);
  if (!in) throw ConfigInvalid("cannot open state file: " + state_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigInvalid("malformed state JSON in " + state_path + ": " + e.what());
  }

  UavState state = j.get<UavState>();
  state.camera.check();
  const double coverage = j.value("coverage", 0.0);
  GridDims dims = j.value("dims", GridDims{});
  std::vector<Obstacle> obstacles = j.value("obstacles", std::vector<Obstacle>{});
  if (!dims.contains(state.position))
    throw ConfigInvalid("position lies outside the grid");

  std::cout << build_prompt_for(state, coverage, dims, obstacles) << "\n";
  return 0;
}

int cmd_replay(const std::string& trajectory_path, const std::string& csv_path) {
  const auto episodes = read_trajectory_file(trajectory_path);
  if (episodes.empty()) throw ConfigInvalid("trajectory contains no episodes: " + trajectory_path);
  const auto metrics = recount_metrics(episodes);

  double mean_vcr = 0.0, mean_be = 0.0, mean_rvc = 0.0;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto& m = metrics[i];
    std::cout << "episode " << episodes[i].episode << ": vcr " << m.vcr << ", be " << m.be
              << ", rvc " << m.rvc << ", steps " << m.steps_used << "\n";
    mean_vcr += m.vcr;
    mean_be += m.be;
    mean_rvc += m.rvc;
  }
  mean_vcr /= metrics.size();
  mean_be /= metrics.size();
  mean_rvc /= metrics.size();
  std::cout << "mean: vcr " << mean_vcr << ", be " << mean_be << ", rvc " << mean_rvc << "\n";

  if (!csv_path.empty()) {
    EvalReport report;
    report.method = episodes.front().method;
    report.grid = episodes.front().dims;
    report.episodes = metrics;
    report.mean_vcr = mean_vcr;
    report.mean_be = mean_be;
    report.mean_rvc = mean_rvc;
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigInvalid("cannot write csv: " + csv_path);
    write_csv(csv, std::span<const EvalReport>(&report, 1));
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"PIRL: prompt-informed reinforcement learning for UAV visual coverage"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string checkpoint_path, state_path, trajectory_path, csv_path;
  bool log_trajectory = false;

  auto add_common = [&](CLI::App* cmd, bool with_train_flags) {
    cmd->add_option("--config", flags.config_path, "run configuration JSON");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "master seed")->each([&](const std::string&) {
      flags.seed_set = true;
    });
    cmd->add_option("--method", flags.method, "pirl | ppo-sr | ppo-ewri | llm-only");
    cmd->add_option("--grid", flags.grid, "grid dims, e.g. 30x30x3");
    cmd->add_option("--episodes", flags.episodes, "episode count");
    cmd->add_option("--advisor", flags.advisor, "scripted | http | replay");
    cmd->add_option("--advisor-interval", flags.advisor_interval, "advisor cache refresh period");
    (void)with_train_flags;
  };

  CLI::App* train_cmd = app.add_subcommand("train", "train a policy");
  add_common(train_cmd, true);
  train_cmd->add_flag("--trajectory", log_trajectory, "also log per-step trajectory JSONL");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint or the llm-only baseline");
  add_common(eval_cmd, false);
  eval_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint JSON path");

  CLI::App* prompt_cmd = app.add_subcommand("prompt", "print the structured prompt for a state");
  prompt_cmd->add_option("--state", state_path, "state JSON path")->required();

  CLI::App* replay_cmd = app.add_subcommand("replay", "recompute metrics from a trajectory log");
  replay_cmd->add_option("--trajectory", trajectory_path, "trajectory JSONL path")->required();
  replay_cmd->add_option("--csv", csv_path, "also write a metrics CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train_cmd->parsed()) return cmd_train(flags, log_trajectory);
    if (eval_cmd->parsed()) return cmd_eval(flags, checkpoint_path);
    if (prompt_cmd->parsed()) return cmd_prompt(state_path);
    if (replay_cmd->parsed()) return cmd_replay(trajectory_path, csv_path);
  } catch (const ConfigInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Unreadable inputs (missing config/state/checkpoint files) exit with 2.
    const std::string what = e.what();
    return what.find("cannot open") != std::string::npos ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pirl::cli
