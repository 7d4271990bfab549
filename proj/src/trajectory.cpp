#include "pirl/trajectory.hpp"

#include <fstream>
#include <ostream>

#include "pirl/errors.hpp"
#include "pirl/json_io.hpp"

namespace pirl {

void TrajectoryWriter::episode_header(int episode, std::uint64_t seed, const std::string& method,
                                      const Environment& env, const RewardWeights& weights) {
  json j = {{"type", "episode"},
            {"episode", episode},
            {"seed", std::to_string(seed)},
            {"method", method},
            {"dims", env.dims()},
            {"obstacles", env.obstacles()},
            {"start", env.state()},
            {"max_steps", env.config().max_steps},
            {"weights", weights}};
  out_ << j.dump() << "\n";
}

void TrajectoryWriter::step(int step_index, const UavState& pre_state, Action action,
                            const StepEvents& events, const RewardBreakdown& reward,
                            const std::optional<Advice>& advice) {
  json j = {{"type", "step"},
            {"step", step_index},
            {"state", pre_state},
            {"action", action_name(action)},
            {"events", events},
            {"reward", reward}};
  j["advice"] = advice ? json(*advice) : json(nullptr);
  out_ << j.dump() << "\n";
}

void TrajectoryWriter::episode_summary(int episode, const EpisodeMetrics& m) {
  json j = {{"type", "summary"},
            {"episode", episode},
            {"vcr", m.vcr},
            {"be", m.be},
            {"rvc", m.rvc},
            {"steps_used", m.steps_used},
            {"battery_initial", m.battery_initial},
            {"battery_final", m.battery_final},
            {"seed", std::to_string(m.seed)}};
  out_ << j.dump() << "\n";
}

std::vector<TrajectoryEpisode> read_trajectory(std::istream& in) {
  std::vector<TrajectoryEpisode> episodes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.value("type", "");
    if (type == "episode") {
      TrajectoryEpisode ep;
      ep.episode = j.at("episode").get<int>();
      ep.seed = std::stoull(j.at("seed").get<std::string>());
      ep.method = j.value("method", "");
      j.at("dims").get_to(ep.dims);
      j.at("obstacles").get_to(ep.obstacles);
      j.at("start").get_to(ep.start);
      if (j.contains("weights")) j.at("weights").get_to(ep.weights);
      episodes.push_back(std::move(ep));
    } else if (type == "step") {
      if (episodes.empty()) throw ConfigInvalid("trajectory step before episode header");
      TrajectoryStep s;
      s.step = j.at("step").get<int>();
      j.at("state").get_to(s.state);
      s.action = j.at("action").get<std::string>();
      j.at("events").get_to(s.events);
      j.at("reward").get_to(s.reward);
      if (j.contains("advice") && !j.at("advice").is_null())
        s.advice = j.at("advice").get<Advice>();
      episodes.back().steps.push_back(std::move(s));
    } else if (type == "summary") {
      if (episodes.empty()) throw ConfigInvalid("trajectory summary before episode header");
      EpisodeMetrics m;
      m.vcr = j.at("vcr").get<double>();
      m.be = j.at("be").get<double>();
      m.rvc = j.at("rvc").get<double>();
      m.steps_used = j.at("steps_used").get<int>();
      m.battery_initial = j.at("battery_initial").get<double>();
      m.battery_final = j.at("battery_final").get<double>();
      m.seed = std::stoull(j.at("seed").get<std::string>());
      episodes.back().summary = m;
    }
  }
  return episodes;
}

std::vector<TrajectoryEpisode> read_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open trajectory file: " + path);
  return read_trajectory(in);
}

std::vector<EpisodeMetrics> recount_metrics(const std::vector<TrajectoryEpisode>& episodes) {
  std::vector<EpisodeMetrics> out;
  out.reserve(episodes.size());
  for (const auto& ep : episodes) {
    CoverageMap coverage(ep.dims);
    double battery = ep.start.battery;
    for (const auto& s : ep.steps) {
      coverage.observe(s.events.observed);
      battery = s.state.battery - s.events.battery_drain;
    }
    EpisodeMetrics m;
    m.vcr = vcr(coverage);
    m.rvc = rvc(coverage);
    m.battery_initial = ep.start.battery;
    m.battery_final = battery;
    m.be = battery_efficiency(m.vcr, m.battery_initial, m.battery_final);
    m.steps_used = static_cast<int>(ep.steps.size());
    m.seed = ep.seed;
    out.push_back(m);
  }
  return out;
}

}  // namespace pirl
