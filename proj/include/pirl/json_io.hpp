#pragma once

#include <json.hpp>

#include "pirl/env.hpp"
#include "pirl/pare.hpp"
#include "pirl/reward.hpp"
#include "pirl/types.hpp"

// nlohmann-json ADL serializers for the domain types used in configs,
// trajectory logs and checkpoints.
namespace pirl {

using json = nlohmann::json;

inline void to_json(json& j, const Vec3i& v) { j = json::array({v.x, v.y, v.z}); }
inline void from_json(const json& j, Vec3i& v) {
  v.x = j.at(0).get<int>();
  v.y = j.at(1).get<int>();
  v.z = j.at(2).get<int>();
}

inline void to_json(json& j, const GridDims& d) { j = json::array({d.x_size, d.y_size, d.z_size}); }
inline void from_json(const json& j, GridDims& d) {
  d.x_size = j.at(0).get<int>();
  d.y_size = j.at(1).get<int>();
  d.z_size = j.at(2).get<int>();
}

inline void to_json(json& j, const CameraConfig& c) {
  j = json{{"tilt", c.tilt}, {"pan", c.pan}, {"zoom", c.zoom()}};
}
inline void from_json(const json& j, CameraConfig& c) {
  c = CameraConfig::make(j.at("tilt").get<int>(), j.at("pan").get<int>(),
                         j.at("zoom").get<double>());
}

inline void to_json(json& j, const UavState& s) {
  j = json{{"position", s.position}, {"camera", s.camera}, {"battery", s.battery}};
}
inline void from_json(const json& j, UavState& s) {
  j.at("position").get_to(s.position);
  j.at("camera").get_to(s.camera);
  s.battery = j.value("battery", 1.0);
}

inline void to_json(json& j, const Obstacle& o) {
  j = json{{"center", o.center}, {"radius", o.radius}};
}
inline void from_json(const json& j, Obstacle& o) {
  j.at("center").get_to(o.center);
  o.radius = j.at("radius").get<double>();
}

inline void to_json(json& j, const GroundCell& c) { j = json::array({c.x, c.y}); }
inline void from_json(const json& j, GroundCell& c) {
  c.x = j.at(0).get<int>();
  c.y = j.at(1).get<int>();
}

inline void to_json(json& j, const Advice& a) {
  j = json{{"delta", a.delta_position}, {"target", a.target_position},
           {"camera", a.camera_target}};
}
inline void from_json(const json& j, Advice& a) {
  j.at("delta").get_to(a.delta_position);
  j.at("target").get_to(a.target_position);
  j.at("camera").get_to(a.camera_target);
}

inline void to_json(json& j, const RewardWeights& w) {
  j = json{{"lambda_c", w.lambda_c},
           {"lambda_r", w.lambda_r},
           {"lambda_b", w.lambda_b},
           {"lambda_cam_usage", w.lambda_cam_usage},
           {"lambda_cur", w.lambda_cur},
           {"lambda_collision", w.lambda_collision},
           {"lambda_idle", w.lambda_idle},
           {"lambda_llm", w.lambda_llm}};
}
inline void from_json(const json& j, RewardWeights& w) {
  RewardWeights defaults;
  w.lambda_c = j.value("lambda_c", defaults.lambda_c);
  w.lambda_r = j.value("lambda_r", defaults.lambda_r);
  w.lambda_b = j.value("lambda_b", defaults.lambda_b);
  w.lambda_cam_usage = j.value("lambda_cam_usage", defaults.lambda_cam_usage);
  w.lambda_cur = j.value("lambda_cur", defaults.lambda_cur);
  w.lambda_collision = j.value("lambda_collision", defaults.lambda_collision);
  w.lambda_idle = j.value("lambda_idle", defaults.lambda_idle);
  w.lambda_llm = j.value("lambda_llm", defaults.lambda_llm);
}

inline void to_json(json& j, const RewardBreakdown& b) {
  j = json{{"delta_coverage", b.delta_coverage},
           {"redundant", b.redundant},
           {"battery_pen", b.battery_pen},
           {"cam_usage", b.cam_usage},
           {"curiosity", b.curiosity},
           {"collision", b.collision},
           {"idle", b.idle},
           {"llm_shaping", b.llm_shaping},
           {"total", b.total}};
}
inline void from_json(const json& j, RewardBreakdown& b) {
  b.delta_coverage = j.value("delta_coverage", 0.0);
  b.redundant = j.value("redundant", 0.0);
  b.battery_pen = j.value("battery_pen", 0.0);
  b.cam_usage = j.value("cam_usage", 0.0);
  b.curiosity = j.value("curiosity", 0.0);
  b.collision = j.value("collision", 0.0);
  b.idle = j.value("idle", 0.0);
  b.llm_shaping = j.value("llm_shaping", 0.0);
  b.total = j.value("total", 0.0);
}

inline void to_json(json& j, const StepEvents& e) {
  j = json{{"observed", e.observed},       {"newly_covered", e.newly_covered},
           {"redundant", e.redundant},     {"collision", e.collision},
           {"idle", e.idle},               {"battery_drain", e.battery_drain}};
}
inline void from_json(const json& j, StepEvents& e) {
  j.at("observed").get_to(e.observed);
  e.newly_covered = j.at("newly_covered").get<int>();
  e.redundant = j.at("redundant").get<bool>();
  e.collision = j.at("collision").get<bool>();
  e.idle = j.at("idle").get<bool>();
  e.battery_drain = j.at("battery_drain").get<double>();
}

inline void to_json(json& j, const EnvConfig& c) {
  j = json{{"dims", c.dims},
           {"obstacles", c.obstacles},
           {"obstacle_count_min", c.obstacle_count_min},
           {"obstacle_count_max", c.obstacle_count_max},
           {"wind_probability", c.wind_probability},
           {"wind_magnitude", c.wind_magnitude},
           {"max_steps", c.max_steps},
           {"drain_move", c.drain_move},
           {"drain_cam", c.drain_cam},
           {"seed", c.seed}};
  if (c.start_camera) j["start_camera"] = *c.start_camera;
}
inline void from_json(const json& j, EnvConfig& c) {
  EnvConfig defaults;
  c.dims = j.value("dims", defaults.dims);
  c.obstacles = j.value("obstacles", defaults.obstacles);
  c.obstacle_count_min = j.value("obstacle_count_min", defaults.obstacle_count_min);
  c.obstacle_count_max = j.value("obstacle_count_max", defaults.obstacle_count_max);
  c.wind_probability = j.value("wind_probability", defaults.wind_probability);
  c.wind_magnitude = j.value("wind_magnitude", defaults.wind_magnitude);
  c.max_steps = j.value("max_steps", defaults.max_steps);
  c.drain_move = j.value("drain_move", defaults.drain_move);
  c.drain_cam = j.value("drain_cam", defaults.drain_cam);
  c.seed = j.value("seed", defaults.seed);
  if (j.contains("start_camera")) c.start_camera = j.at("start_camera").get<CameraConfig>();
}

inline void to_json(json& j, const AlignmentParams& p) {
  j = json{{"alpha", p.alpha},
           {"w_move_align", p.w_move_align},
           {"w_cam_align", p.w_cam_align},
           {"d_max", p.d_max},
           {"normalized", p.normalized}};
}
inline void from_json(const json& j, AlignmentParams& p) {
  AlignmentParams defaults;
  p.alpha = j.value("alpha", defaults.alpha);
  p.w_move_align = j.value("w_move_align", defaults.w_move_align);
  p.w_cam_align = j.value("w_cam_align", defaults.w_cam_align);
  p.d_max = j.value("d_max", 0.0);
  p.normalized = j.value("normalized", defaults.normalized);
}

}  // namespace pirl
