#pragma once

#include <stdexcept>
#include <string>

namespace pirl {

struct ConfigInvalid : std::runtime_error {
  explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

struct BatteryExhausted : std::runtime_error {
  BatteryExhausted() : std::runtime_error("battery exhausted") {}
};

struct EpisodeOver : std::runtime_error {
  EpisodeOver() : std::runtime_error("episode step budget consumed") {}
};

struct AdviceUnparseable : std::runtime_error {
  explicit AdviceUnparseable(const std::string& what) : std::runtime_error(what) {}
};

struct AdvisorTimeout : std::runtime_error {
  explicit AdvisorTimeout(const std::string& what) : std::runtime_error(what) {}
};

struct AdvisorHttpError : std::runtime_error {
  AdvisorHttpError(int status, const std::string& body)
      : std::runtime_error("advisor http error, status " + std::to_string(status) + ": " + body),
        status(status),
        body(body) {}
  int status;
  std::string body;
};

struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteGradient : std::runtime_error {
  NonFiniteGradient() : std::runtime_error("non-finite gradient, update aborted") {}
};

struct InvalidBattery : std::runtime_error {
  explicit InvalidBattery(const std::string& what) : std::runtime_error(what) {}
};

struct CheckpointIncompatible : std::runtime_error {
  explicit CheckpointIncompatible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pirl
