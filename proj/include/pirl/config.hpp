#pragma once

#include <memory>
#include <string>

#include "pirl/advisor.hpp"
#include "pirl/json_io.hpp"
#include "pirl/policy.hpp"

namespace pirl {

struct AdvisorSpec {
  std::string backend = "scripted";  // scripted | http | replay
  int interval = 1;                  // cache refresh period, in steps
  HttpAdvisorConfig http;
  std::string replay_file;  // input for backend=replay
  std::string record_file;  // when set, inner responses are recorded here
};

struct RunConfig {
  std::string method = "pirl";  // pirl | ppo-sr | ppo-ewri | llm-only
  std::uint64_t seed = 0;
  std::string out_dir = "runs/out";
  EnvConfig env;
  TrainConfig train;
  AlignmentParams alignment;
  AdvisorSpec advisor;
};

void to_json(json& j, const TrainConfig& c);
void from_json(const json& j, TrainConfig& c);
void to_json(json& j, const AdvisorSpec& s);
void from_json(const json& j, AdvisorSpec& s);
void to_json(json& j, const RunConfig& c);
void from_json(const json& j, RunConfig& c);

// Reads and normalizes a run configuration: the top-level seed is the master
// seed for training, environment and evaluation streams.
RunConfig load_run_config(const std::string& path);
void normalize(RunConfig& config);

// Builds the configured backend chain (inner backend plus cache wrapper when
// interval > 1 or recording is requested).
std::shared_ptr<AdvisorBackend> make_advisor(const AdvisorSpec& spec);

struct Checkpoint {
  int version = 1;
  std::string method = "pirl";
  int episode = 0;
  TrainConfig train;
  EnvConfig env;
  AlignmentParams alignment;
  PolicyParams params;
  AdamState adam;
  json rng_state;  // final stream states, for provenance
};

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

GridDims parse_grid(const std::string& spec);

}  // namespace pirl
