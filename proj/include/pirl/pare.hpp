#pragma once

#include <array>
#include <string>

#include "pirl/env.hpp"
#include "pirl/types.hpp"

namespace pirl {

// A parsed advisor recommendation: a relative movement in {-1,0,1}^3 and an
// absolute camera target. The absolute position target is resolved against
// the state the advice was requested from.
struct Advice {
  Vec3i delta_position;
  Vec3i target_position;
  CameraConfig camera_target;

  friend bool operator==(const Advice&, const Advice&) = default;
};

// The three prompt sections, each carrying its literal header line.
struct PromptParts {
  std::string task;
  std::string env_summary;
  std::string query;

  std::string full() const { return task + "\n\n" + env_summary + "\n\n" + query; }
};

struct AlignmentParams {
  double alpha = 0.5;         // direction-vs-position balance
  double w_move_align = 0.5;  // soft movement alignment weight
  double w_cam_align = 0.5;   // hard camera deviation weight
  double d_max = 0.0;         // corner-to-corner grid distance
  bool normalized = false;    // divide camera L1 terms by their range widths

  static AlignmentParams for_grid(const GridDims& dims) {
    AlignmentParams p;
    p.d_max = dims.max_distance();
    return p;
  }
};

PromptParts build_prompt_parts(const UavState& state, double coverage, const GridDims& dims,
                               const std::vector<Obstacle>& obstacles);
PromptParts build_prompt_parts(const UavState& state, double coverage, const EnvConfig& env);
std::string build_prompt(const UavState& state, double coverage, const EnvConfig& env);

// Prompt against a live episode's obstacle layout (which may differ from the
// configured one when layouts are sampled per episode).
std::string build_prompt_for(const UavState& state, double coverage, const GridDims& dims,
                             const std::vector<Obstacle>& obstacles);

// Extracts pan/tilt/zoom/X/Y/Z from a free-form response, clamps each value
// to its declared range and snaps it onto the discrete state lattice.
// Throws AdviceUnparseable when any key is missing or non-numeric.
Advice parse_advice(const std::string& response, const UavState& current, const GridDims& dims);

// Canonical one-line response form; parse_advice(render_advice(a)) == a.
std::string render_advice(const Advice& advice);

// Cosine similarity of the two movement vectors; 0 when either is zero.
double dir_align(const std::array<double, 3>& delta_p, const std::array<double, 3>& delta_p_llm);

// Inverse normalized Euclidean distance, in [0, 1] for in-grid pairs.
double pos_align(const Vec3i& p, const Vec3i& p_llm, double d_max);

// Convex combination of the two alignment terms.
double move_reward(double alpha, double dir, double pos);

// Negative L1 deviation over (tilt, pan, zoom) in native units; zero only on
// an exact match, never positive.
double cam_align_penalty(const CameraConfig& camera, const CameraConfig& camera_llm,
                         bool normalized = false);

// Full PARE shaping term: w_cam * camera penalty + w_move * movement reward,
// with movement vectors taken relative to the pre-step position.
double llm_shaping(const AlignmentParams& params, const UavState& state_next,
                   const UavState& state_prev, const Advice& advice);

}  // namespace pirl
