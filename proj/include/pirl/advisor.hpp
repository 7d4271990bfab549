#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pirl/coverage.hpp"
#include "pirl/pare.hpp"
#include "pirl/types.hpp"

namespace pirl {

// Everything a backend may inspect when producing advice.
struct AdvisorContext {
  const UavState& state;
  const CoverageMap& coverage;
  const std::vector<Obstacle>& obstacles;
  const GridDims& dims;
};

struct AdviceResult {
  Advice advice;
  std::string raw_response;
  double latency_ms = 0.0;
};

class AdvisorBackend {
 public:
  virtual ~AdvisorBackend() = default;

  // Produces advice for the given prompt/state. Throws AdvisorTimeout,
  // AdvisorHttpError or AdviceUnparseable; callers treat any of these as
  // "no shaping this step".
  virtual AdviceResult advise(const std::string& prompt, const AdvisorContext& ctx) = 0;

  virtual std::uint64_t calls() const = 0;
};

// Deterministic greedy one-step-lookahead advisor. Scores every collision-free
// unit move combined with a small camera sweep by the number of ground cells
// it would newly cover.
Advice scripted_oracle(const UavState& state, const CoverageMap& coverage,
                       const std::vector<Obstacle>& obstacles, const GridDims& dims);

class ScriptedAdvisor final : public AdvisorBackend {
 public:
  AdviceResult advise(const std::string& prompt, const AdvisorContext& ctx) override;
  std::uint64_t calls() const override { return calls_; }

 private:
  std::uint64_t calls_ = 0;
};

struct HttpAdvisorConfig {
  std::string url = "http://localhost:8080/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  int timeout_ms = 30000;
  std::string api_key_env = "PIRL_API_KEY";
};

// Chat-completions client: POSTs {model, messages, temperature} and parses
// the first choice's content with parse_advice.
class HttpAdvisor final : public AdvisorBackend {
 public:
  explicit HttpAdvisor(HttpAdvisorConfig config);
  AdviceResult advise(const std::string& prompt, const AdvisorContext& ctx) override;
  std::uint64_t calls() const override { return calls_; }

 private:
  HttpAdvisorConfig config_;
  std::uint64_t calls_ = 0;
};

// Pure function of the advice-relevant state: position, camera, battery
// bucketed to prompt precision (2 decimals), coverage bucketed likewise
// (4 decimals). Stable across runs and platforms (FNV-1a).
std::uint64_t advisor_state_key(const UavState& state, double coverage_fraction);

struct AdvisorRecord {
  std::uint64_t state_key = 0;
  std::string raw_response;
  Advice advice;
  double latency_ms = 0.0;
};

// Wraps a backend with interval-based refresh plus a per-key memo: a state
// key seen before replays its recorded advice, otherwise the inner backend
// is queried every `interval`-th call and the last advice reused in between.
// Optionally appends every inner response to a JSONL replay file.
class CachedAdvisor final : public AdvisorBackend {
 public:
  CachedAdvisor(std::shared_ptr<AdvisorBackend> inner, int interval,
                std::string replay_path = {});
  ~CachedAdvisor() override;

  AdviceResult advise(const std::string& prompt, const AdvisorContext& ctx) override;
  std::uint64_t calls() const override;  // inner backend calls
  std::uint64_t requests() const;        // calls received by the wrapper

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Replays a prior run's responses by state key; no network. A key miss is
// reported as AdviceUnparseable so callers fall back to zero shaping.
class ReplayAdvisor final : public AdvisorBackend {
 public:
  explicit ReplayAdvisor(const std::string& replay_path);
  AdviceResult advise(const std::string& prompt, const AdvisorContext& ctx) override;
  std::uint64_t calls() const override { return calls_; }
  std::size_t records() const { return records_.size(); }

 private:
  std::unordered_map<std::uint64_t, AdvisorRecord> records_;
  std::uint64_t calls_ = 0;
};

std::vector<AdvisorRecord> read_replay_file(const std::string& path);

}  // namespace pirl
