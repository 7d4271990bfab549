#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "pirl/errors.hpp"

namespace pirl {

struct Vec3i {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const Vec3i&, const Vec3i&) = default;
  Vec3i operator+(const Vec3i& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3i operator-(const Vec3i& o) const { return {x - o.x, y - o.y, z - o.z}; }
  double norm() const { return std::sqrt(double(x) * x + double(y) * y + double(z) * z); }
  int l1_norm() const { return std::abs(x) + std::abs(y) + std::abs(z); }
};

struct GridDims {
  int x_size = 15;
  int y_size = 15;
  int z_size = 3;

  friend bool operator==(const GridDims&, const GridDims&) = default;

  bool valid() const { return x_size >= 1 && y_size >= 1 && z_size >= 1; }
  long volume() const { return long(x_size) * y_size * z_size; }
  int total_ground_cells() const { return x_size * y_size; }

  bool contains(const Vec3i& p) const {
    return p.x >= 0 && p.x < x_size && p.y >= 0 && p.y < y_size && p.z >= 0 && p.z < z_size;
  }

  Vec3i clamp(const Vec3i& p) const {
    auto c = [](int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
    return {c(p.x, x_size), c(p.y, y_size), c(p.z, z_size)};
  }

  // Corner-to-corner Euclidean distance, the d_max of positional alignment.
  double max_distance() const {
    return Vec3i{x_size - 1, y_size - 1, z_size - 1}.norm();
  }

  std::string label() const {
    return std::to_string(x_size) + "x" + std::to_string(y_size) + "x" + std::to_string(z_size);
  }
};

// Pan-tilt-zoom configuration. Zoom is kept in integer tenths so snapping,
// equality and L1 distances stay exact.
struct CameraConfig {
  int tilt = 45;        // degrees, in [0, 90], multiple of 5
  int pan = 0;          // degrees, in [-90, 90], multiple of 15
  int zoom_tenths = 10; // zoom * 10, in [5, 20]

  friend bool operator==(const CameraConfig&, const CameraConfig&) = default;

  double zoom() const { return zoom_tenths / 10.0; }

  static CameraConfig make(int tilt, int pan, double zoom) {
    CameraConfig c{tilt, pan, static_cast<int>(std::llround(zoom * 10.0))};
    c.check();
    return c;
  }

  bool valid() const {
    return tilt >= 0 && tilt <= 90 && tilt % 5 == 0 && pan >= -90 && pan <= 90 &&
           pan % 15 == 0 && zoom_tenths >= 5 && zoom_tenths <= 20;
  }

  void check() const {
    if (tilt < 0 || tilt > 90 || tilt % 5 != 0)
      throw ConfigInvalid("camera tilt must be a multiple of 5 in [0, 90], got " + std::to_string(tilt));
    if (pan < -90 || pan > 90 || pan % 15 != 0)
      throw ConfigInvalid("camera pan must be a multiple of 15 in [-90, 90], got " + std::to_string(pan));
    if (zoom_tenths < 5 || zoom_tenths > 20)
      throw ConfigInvalid("camera zoom must be a multiple of 0.1 in [0.5, 2.0], got " +
                          std::to_string(zoom_tenths / 10.0));
  }
};

struct UavState {
  Vec3i position;
  CameraConfig camera;
  double battery = 1.0;
};

// The twelve atomic actions, ordered as the movement tuple followed by the
// camera tuple.
enum class Action : int {
  kXPlus = 0,
  kXMinus,
  kYPlus,
  kYMinus,
  kZPlus,
  kZMinus,
  kTiltPlus,
  kTiltMinus,
  kPanPlus,
  kPanMinus,
  kZoomPlus,
  kZoomMinus,
};

inline constexpr int kNumActions = 12;
inline constexpr int kTiltStep = 5;
inline constexpr int kPanStep = 15;
inline constexpr int kZoomStepTenths = 1;

inline bool is_movement(Action a) { return static_cast<int>(a) < 6; }

inline const char* action_name(Action a) {
  static constexpr std::array<const char*, kNumActions> names = {
      "x+", "x-", "y+", "y-", "z+", "z-", "tilt+", "tilt-", "pan+", "pan-", "zoom+", "zoom-"};
  return names[static_cast<int>(a)];
}

Action action_from_name(const std::string& name);

// Unit translation of a movement action; zero vector for camera actions.
inline Vec3i action_delta(Action a) {
  switch (a) {
    case Action::kXPlus: return {1, 0, 0};
    case Action::kXMinus: return {-1, 0, 0};
    case Action::kYPlus: return {0, 1, 0};
    case Action::kYMinus: return {0, -1, 0};
    case Action::kZPlus: return {0, 0, 1};
    case Action::kZMinus: return {0, 0, -1};
    default: return {0, 0, 0};
  }
}

// Applies a camera action with clamping at the Θ bounds.
inline CameraConfig apply_camera_action(CameraConfig camera, Action a) {
  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  switch (a) {
    case Action::kTiltPlus: camera.tilt = clampi(camera.tilt + kTiltStep, 0, 90); break;
    case Action::kTiltMinus: camera.tilt = clampi(camera.tilt - kTiltStep, 0, 90); break;
    case Action::kPanPlus: camera.pan = clampi(camera.pan + kPanStep, -90, 90); break;
    case Action::kPanMinus: camera.pan = clampi(camera.pan - kPanStep, -90, 90); break;
    case Action::kZoomPlus: camera.zoom_tenths = clampi(camera.zoom_tenths + kZoomStepTenths, 5, 20); break;
    case Action::kZoomMinus: camera.zoom_tenths = clampi(camera.zoom_tenths - kZoomStepTenths, 5, 20); break;
    default: break;
  }
  return camera;
}

struct Obstacle {
  Vec3i center;
  double radius = 1.0;

  friend bool operator==(const Obstacle&, const Obstacle&) = default;

  bool contains(const Vec3i& p) const { return (p - center).norm() <= radius; }
};

struct GroundCell {
  int x = 0;
  int y = 0;

  friend bool operator==(const GroundCell&, const GroundCell&) = default;
  friend auto operator<=>(const GroundCell&, const GroundCell&) = default;
};

}  // namespace pirl
