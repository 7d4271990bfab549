#include "pirl/pare.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <regex>
#include <sstream>

#include "pirl/errors.hpp"

namespace pirl {

namespace {

constexpr const char* kTaskSection =
    "[Task Description]\n"
    "You are a drone controller fitted with a gimbal-mounted camera tasked with maximizing "
    "visual ground coverage within a 3D environment. Suggest movements in the 3D space "
    "(X, Y, Z) and camera adjustments (pan, tilt, zoom) that enhance visual ground coverage "
    "while minimizing battery consumption, avoiding obstacles, and reducing redundant "
    "observations.";

constexpr const char* kQuerySection =
    "[Request Template]\n"
    "1. You can adjust tilt, pan, zoom, and movement along the X, Y, and Z axes.\n"
    "2. The battery ranges from 0 to 1 where 1 and 0 are the maximum and minimum battery "
    "levels respectively. The drone will be unable to move once battery level reaches 0.\n"
    "3. The values should be in the range: pan: [-90, 90] degrees, tilt: [0, 90] degrees, "
    "zoom: [0.5, 2.0], X:[-1, 1], Y:[-1, 1], Z:[-1, 1].";

// Prompt constants that are not part of the MDP state; emitted verbatim.
constexpr double kFieldOfView = 90.0;
constexpr double kResolution = 1.0;

std::string fixed_decimals(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// Shortest decimal form: "1" for 1.0, "1.5", "0.5". Used where the sample
// prompt prints bare numbers.
std::string minimal_number(double v) {
  std::string s = fixed_decimals(v, 6);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string one_decimal(double v) { return fixed_decimals(v, 1); }

std::string count_words(int n) {
  static constexpr const char* kWords[] = {"no",  "one", "two",   "three", "four",
                                           "five", "six", "seven", "eight", "nine",
                                           "ten",  "eleven", "twelve"};
  return n >= 0 && n <= 12 ? kWords[n] : std::to_string(n);
}

double clampd(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

int snap_to_step(double v, int step) {
  return static_cast<int>(std::llround(v / step)) * step;
}

}  // namespace

PromptParts build_prompt_parts(const UavState& state, double coverage, const GridDims& dims,
                               const std::vector<Obstacle>& obstacles) {
  std::ostringstream s;
  s << "[Environment Summary]\n"
    << "Drone state: {'drone_position': [" << state.position.x << ", " << state.position.y
    << ", " << state.position.z << "], 'camera_params': [" << one_decimal(kFieldOfView) << ", "
    << one_decimal(kResolution) << ", " << one_decimal(state.camera.tilt) << ", "
    << one_decimal(state.camera.pan) << ", " << minimal_number(state.camera.zoom())
    << "], 'battery': " << fixed_decimals(state.battery, 2)
    << ", 'coverage': " << fixed_decimals(coverage, 4) << "}. "
    << "The drone is currently operating in a " << dims.label()
    << " grid environment and has visually covered a portion of the ground-level cells using "
       "its camera. The camera params in the drone state are listed in order as: field of view "
       "(degrees), resolution, tilt (degrees), pan (degrees), and zoom. The camera emits a "
       "downward-facing square view cone projected onto the ground level (z=0), centered on "
       "the drone's current (x, y) location. The size of the view cone is determined by the "
       "zoom level and tilt angle. If tilt < 80, the cone has a half-width of approximately "
       "2*zoom units in both x and y directions; otherwise, it is 1*zoom. ";

  if (obstacles.empty()) {
    s << "There are no spherical obstacles in the environment.";
  } else {
    if (obstacles.size() == 1) {
      s << "There is one spherical obstacle in the environment:";
    } else {
      s << "There are " << count_words(static_cast<int>(obstacles.size()))
        << " spherical obstacles in the environment:";
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      const auto& o = obstacles[i];
      s << "\n" << (i + 1) << ". Location: [" << o.center.x << ", " << o.center.y << ", "
        << o.center.z << "] with radius: " << minimal_number(o.radius) << " units";
    }
  }

  return PromptParts{kTaskSection, s.str(), kQuerySection};
}

PromptParts build_prompt_parts(const UavState& state, double coverage, const EnvConfig& env) {
  return build_prompt_parts(state, coverage, env.dims, env.obstacles);
}

std::string build_prompt(const UavState& state, double coverage, const EnvConfig& env) {
  return build_prompt_parts(state, coverage, env).full();
}

std::string build_prompt_for(const UavState& state, double coverage, const GridDims& dims,
                             const std::vector<Obstacle>& obstacles) {
  return build_prompt_parts(state, coverage, dims, obstacles).full();
}

Advice parse_advice(const std::string& response, const UavState& current, const GridDims& dims) {
  // "key: value" pairs in any order; longer key names first so "zoom" is not
  // consumed as "z".
  static const std::regex kPair(
      R"((?:^|[^a-zA-Z])(zoom|tilt|pan|x|y|z)\s*[:=]\s*([-+]?(?:\d+\.?\d*|\.\d+)))",
      std::regex::icase);

  std::optional<double> pan, tilt, zoom, dx, dy, dz;
  auto begin = std::sregex_iterator(response.begin(), response.end(), kPair);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    std::string key = (*it)[1].str();
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const double value = std::stod((*it)[2].str());
    auto assign = [&](std::optional<double>& slot) {
      if (!slot) slot = value;  // first occurrence wins
    };
    if (key == "pan") assign(pan);
    else if (key == "tilt") assign(tilt);
    else if (key == "zoom") assign(zoom);
    else if (key == "x") assign(dx);
    else if (key == "y") assign(dy);
    else if (key == "z") assign(dz);
  }

  if (!pan || !tilt || !zoom || !dx || !dy || !dz) {
    std::string missing;
    auto note = [&](const char* name, const std::optional<double>& slot) {
      if (!slot) missing += missing.empty() ? name : std::string(", ") + name;
    };
    note("pan", pan); note("tilt", tilt); note("zoom", zoom);
    note("X", dx); note("Y", dy); note("Z", dz);
    throw AdviceUnparseable("missing keys: " + missing);
  }

  Advice advice;
  advice.camera_target.pan = snap_to_step(clampd(*pan, -90.0, 90.0), kPanStep);
  advice.camera_target.tilt = snap_to_step(clampd(*tilt, 0.0, 90.0), kTiltStep);
  advice.camera_target.zoom_tenths =
      static_cast<int>(std::llround(clampd(*zoom, 0.5, 2.0) * 10.0));
  auto unit = [](double v) { return static_cast<int>(std::llround(clampd(v, -1.0, 1.0))); };
  advice.delta_position = {unit(*dx), unit(*dy), unit(*dz)};
  advice.target_position = dims.clamp(current.position + advice.delta_position);
  return advice;
}

std::string render_advice(const Advice& advice) {
  std::ostringstream s;
  s << "pan: " << advice.camera_target.pan << ", tilt: " << advice.camera_target.tilt
    << ", zoom: " << minimal_number(advice.camera_target.zoom()) << ", X: "
    << advice.delta_position.x << ", Y: " << advice.delta_position.y << ", Z: "
    << advice.delta_position.z;
  return s.str();
}

double dir_align(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  const double nu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / (nu * nv);
}

double pos_align(const Vec3i& p, const Vec3i& p_llm, double d_max) {
  return 1.0 - (p - p_llm).norm() / d_max;
}

double move_reward(double alpha, double dir, double pos) {
  return alpha * dir + (1.0 - alpha) * pos;
}

double cam_align_penalty(const CameraConfig& camera, const CameraConfig& camera_llm,
                         bool normalized) {
  const double d_tilt = std::abs(camera.tilt - camera_llm.tilt);
  const double d_pan = std::abs(camera.pan - camera_llm.pan);
  const double d_zoom = std::abs(camera.zoom_tenths - camera_llm.zoom_tenths) / 10.0;
  if (normalized) return -(d_tilt / 90.0 + d_pan / 180.0 + d_zoom / 1.5);
  return -(d_tilt + d_pan + d_zoom);
}

double llm_shaping(const AlignmentParams& params, const UavState& state_next,
                   const UavState& state_prev, const Advice& advice) {
  const Vec3i agent_move = state_next.position - state_prev.position;
  const Vec3i advised_move = advice.target_position - state_prev.position;
  const double dir = dir_align({double(agent_move.x), double(agent_move.y), double(agent_move.z)},
                               {double(advised_move.x), double(advised_move.y), double(advised_move.z)});
  const double pos = pos_align(state_next.position, advice.target_position, params.d_max);
  const double pen = cam_align_penalty(state_next.camera, advice.camera_target, params.normalized);
  return params.w_cam_align * pen + params.w_move_align * move_reward(params.alpha, dir, pos);
}

}  // namespace pirl
