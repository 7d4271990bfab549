#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pirl/advisor.hpp"
#include "pirl/env.hpp"
#include "pirl/eval.hpp"
#include "pirl/metrics.hpp"
#include "pirl/pare.hpp"
#include "pirl/policy.hpp"
#include "pirl/reward.hpp"
#include "pirl/rng.hpp"
#include "pirl/train.hpp"

namespace py = pybind11;
using namespace pirl;

namespace {

std::vector<std::pair<int, int>> cells_to_pairs(const std::vector<GroundCell>& cells) {
  std::vector<std::pair<int, int>> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.emplace_back(c.x, c.y);
  return out;
}

}  // namespace

PYBIND11_MODULE(_pirl, m) {
  m.doc() = "UAV visual coverage path planning with prompt-informed reinforcement learning";

  py::register_exception<ConfigInvalid>(m, "ConfigInvalid");
  py::register_exception<AdviceUnparseable>(m, "AdviceUnparseable");
  py::register_exception<BatteryExhausted>(m, "BatteryExhausted");
  py::register_exception<EpisodeOver>(m, "EpisodeOver");
  py::register_exception<InvalidBattery>(m, "InvalidBattery");

  py::class_<Vec3i>(m, "Vec3i")
      .def(py::init<int, int, int>(), py::arg("x") = 0, py::arg("y") = 0, py::arg("z") = 0)
      .def_readwrite("x", &Vec3i::x)
      .def_readwrite("y", &Vec3i::y)
      .def_readwrite("z", &Vec3i::z)
      .def("__eq__", [](const Vec3i& a, const Vec3i& b) { return a == b; })
      .def("__repr__", [](const Vec3i& v) {
        std::ostringstream s;
        s << "Vec3i(" << v.x << ", " << v.y << ", " << v.z << ")";
        return s.str();
      });

  py::class_<GridDims>(m, "GridDims")
      .def(py::init<int, int, int>(), py::arg("x_size") = 15, py::arg("y_size") = 15,
           py::arg("z_size") = 3)
      .def_readwrite("x_size", &GridDims::x_size)
      .def_readwrite("y_size", &GridDims::y_size)
      .def_readwrite("z_size", &GridDims::z_size)
      .def("label", &GridDims::label)
      .def("max_distance", &GridDims::max_distance)
      .def("total_ground_cells", &GridDims::total_ground_cells);

  py::class_<CameraConfig>(m, "CameraConfig")
      .def(py::init([](int tilt, int pan, double zoom) {
             return CameraConfig::make(tilt, pan, zoom);
           }),
           py::arg("tilt") = 45, py::arg("pan") = 0, py::arg("zoom") = 1.0)
      .def_readwrite("tilt", &CameraConfig::tilt)
      .def_readwrite("pan", &CameraConfig::pan)
      .def_property(
          "zoom", [](const CameraConfig& c) { return c.zoom(); },
          [](CameraConfig& c, double z) { c.zoom_tenths = static_cast<int>(std::llround(z * 10)); })
      .def("__eq__", [](const CameraConfig& a, const CameraConfig& b) { return a == b; });

  py::class_<UavState>(m, "UavState")
      .def(py::init<>())
      .def_readwrite("position", &UavState::position)
      .def_readwrite("camera", &UavState::camera)
      .def_readwrite("battery", &UavState::battery);

  py::class_<Obstacle>(m, "Obstacle")
      .def(py::init<Vec3i, double>(), py::arg("center"), py::arg("radius"))
      .def_readwrite("center", &Obstacle::center)
      .def_readwrite("radius", &Obstacle::radius)
      .def("contains", &Obstacle::contains);

  py::enum_<Action>(m, "Action")
      .value("X_PLUS", Action::kXPlus)
      .value("X_MINUS", Action::kXMinus)
      .value("Y_PLUS", Action::kYPlus)
      .value("Y_MINUS", Action::kYMinus)
      .value("Z_PLUS", Action::kZPlus)
      .value("Z_MINUS", Action::kZMinus)
      .value("TILT_PLUS", Action::kTiltPlus)
      .value("TILT_MINUS", Action::kTiltMinus)
      .value("PAN_PLUS", Action::kPanPlus)
      .value("PAN_MINUS", Action::kPanMinus)
      .value("ZOOM_PLUS", Action::kZoomPlus)
      .value("ZOOM_MINUS", Action::kZoomMinus);

  py::class_<StepEvents>(m, "StepEvents")
      .def_property_readonly("observed",
                             [](const StepEvents& e) { return cells_to_pairs(e.observed); })
      .def_readonly("newly_covered", &StepEvents::newly_covered)
      .def_readonly("redundant", &StepEvents::redundant)
      .def_readonly("collision", &StepEvents::collision)
      .def_readonly("idle", &StepEvents::idle)
      .def_readonly("battery_drain", &StepEvents::battery_drain);

  py::class_<EnvConfig>(m, "EnvConfig")
      .def(py::init<>())
      .def_readwrite("dims", &EnvConfig::dims)
      .def_readwrite("obstacles", &EnvConfig::obstacles)
      .def_readwrite("wind_probability", &EnvConfig::wind_probability)
      .def_readwrite("wind_magnitude", &EnvConfig::wind_magnitude)
      .def_readwrite("max_steps", &EnvConfig::max_steps)
      .def_readwrite("drain_move", &EnvConfig::drain_move)
      .def_readwrite("drain_cam", &EnvConfig::drain_cam)
      .def_readwrite("seed", &EnvConfig::seed);

  py::class_<CoverageMap>(m, "CoverageMap")
      .def("covered", &CoverageMap::covered)
      .def("visit_count", &CoverageMap::visit_count)
      .def("covered_count", &CoverageMap::covered_count)
      .def("covered_fraction", &CoverageMap::covered_fraction)
      .def("multi_visit_count", &CoverageMap::multi_visit_count);

  py::class_<Environment>(m, "Environment")
      .def(py::init<EnvConfig>())
      .def("reset", py::overload_cast<std::uint64_t>(&Environment::reset))
      .def("step", &Environment::step)
      .def_property_readonly("state", &Environment::state)
      .def_property_readonly("coverage", &Environment::coverage,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("obstacles", &Environment::obstacles)
      .def("steps_taken", &Environment::steps_taken)
      .def("done", &Environment::done);

  m.def("view_cone", [](const Vec3i& p, const CameraConfig& c, const GridDims& d) {
    return cells_to_pairs(view_cone(p, c, d));
  });

  py::class_<RewardWeights>(m, "RewardWeights")
      .def(py::init<>())
      .def_readwrite("lambda_c", &RewardWeights::lambda_c)
      .def_readwrite("lambda_r", &RewardWeights::lambda_r)
      .def_readwrite("lambda_b", &RewardWeights::lambda_b)
      .def_readwrite("lambda_cam_usage", &RewardWeights::lambda_cam_usage)
      .def_readwrite("lambda_cur", &RewardWeights::lambda_cur)
      .def_readwrite("lambda_collision", &RewardWeights::lambda_collision)
      .def_readwrite("lambda_idle", &RewardWeights::lambda_idle)
      .def_readwrite("lambda_llm", &RewardWeights::lambda_llm);

  py::class_<RewardBreakdown>(m, "RewardBreakdown")
      .def_readonly("delta_coverage", &RewardBreakdown::delta_coverage)
      .def_readonly("redundant", &RewardBreakdown::redundant)
      .def_readonly("battery_pen", &RewardBreakdown::battery_pen)
      .def_readonly("cam_usage", &RewardBreakdown::cam_usage)
      .def_readonly("curiosity", &RewardBreakdown::curiosity)
      .def_readonly("collision", &RewardBreakdown::collision)
      .def_readonly("idle", &RewardBreakdown::idle)
      .def_readonly("llm_shaping", &RewardBreakdown::llm_shaping)
      .def_readonly("total", &RewardBreakdown::total);

  m.def("sample_ewri_weights", [](std::uint64_t seed) {
    Rng rng(seed);
    return sample_ewri_weights(rng);
  });
  m.def("midpoint_weights", &midpoint_weights);
  m.def("compute_reward",
        [](const RewardWeights& w, const StepEvents& e, int before, int after, int total,
           std::vector<int> prior, bool camera_action, double llm) {
          return compute_reward(w, e, before, after, total, prior, camera_action, llm);
        });

  py::class_<Advice>(m, "Advice")
      .def(py::init<>())
      .def_readwrite("delta_position", &Advice::delta_position)
      .def_readwrite("target_position", &Advice::target_position)
      .def_readwrite("camera_target", &Advice::camera_target);

  py::class_<AlignmentParams>(m, "AlignmentParams")
      .def(py::init<>())
      .def_readwrite("alpha", &AlignmentParams::alpha)
      .def_readwrite("w_move_align", &AlignmentParams::w_move_align)
      .def_readwrite("w_cam_align", &AlignmentParams::w_cam_align)
      .def_readwrite("d_max", &AlignmentParams::d_max)
      .def_readwrite("normalized", &AlignmentParams::normalized);

  m.def("build_prompt", [](const UavState& s, double coverage, const GridDims& dims,
                           const std::vector<Obstacle>& obstacles) {
    return build_prompt_for(s, coverage, dims, obstacles);
  });
  m.def("parse_advice", &parse_advice);
  m.def("render_advice", &render_advice);
  m.def("dir_align", &dir_align);
  m.def("pos_align", &pos_align);
  m.def("move_reward", &move_reward);
  m.def("cam_align_penalty", &cam_align_penalty, py::arg("camera"), py::arg("camera_llm"),
        py::arg("normalized") = false);
  m.def("llm_shaping", &llm_shaping);
  m.def("scripted_oracle", &scripted_oracle);

  m.def("encode_observation", &encode_observation);
  m.def("compute_gae", [](std::vector<double> rewards, std::vector<double> values,
                          std::vector<int> dones, double bootstrap, double gamma, double lam) {
    std::vector<std::uint8_t> d(dones.begin(), dones.end());
    auto r = compute_gae(rewards, values, d, bootstrap, gamma, lam);
    return std::make_pair(r.advantages, r.returns);
  });

  m.def("vcr", &vcr);
  m.def("battery_efficiency", &battery_efficiency);
  m.def("rvc", &rvc);
  m.def("scale_factor", &scale_factor);
}
