#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "pirl/env.hpp"
#include "pirl/errors.hpp"
#include "pirl/pare.hpp"
#include "pirl/rng.hpp"

using namespace pirl;

namespace {

UavState sample_state() {
  UavState s;
  s.position = {14, 0, 2};
  s.camera = CameraConfig{60, 90, 10};
  s.battery = 0.24;
  return s;
}

EnvConfig sample_env() {
  EnvConfig cfg;
  cfg.obstacles = {{{5, 5, 1}, 1.5}, {{10, 10, 2}, 2.0}};
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Advice random_advice(Rng& rng, const GridDims& dims) {
  Advice a;
  a.delta_position = {rng.uniform_int(-1, 1), rng.uniform_int(-1, 1), rng.uniform_int(-1, 1)};
  Vec3i p{rng.uniform_int(0, dims.x_size - 1), rng.uniform_int(0, dims.y_size - 1),
          rng.uniform_int(0, dims.z_size - 1)};
  a.target_position = dims.clamp(p + a.delta_position);
  a.camera_target = CameraConfig{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                                 rng.uniform_int(5, 20)};
  return a;
}

}  // namespace

TEST_CASE("prompt for the sample state matches the frozen snapshot byte for byte") {
  const std::string prompt = build_prompt(sample_state(), 0.7837, sample_env());
  const std::string golden = read_file(std::string(PIRL_GOLDEN_DIR) + "/sample_prompt.txt");
  CHECK(prompt + "\n" == golden);
}

TEST_CASE("prompt structure: headers once, in order; only the summary varies") {
  const PromptParts parts = build_prompt_parts(sample_state(), 0.7837, sample_env());
  const std::string full = parts.full();

  auto count = [&full](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = full.find(needle); pos != std::string::npos;
         pos = full.find(needle, pos + 1))
      ++n;
    return n;
  };
  CHECK(count("[Task Description]") == 1);
  CHECK(count("[Environment Summary]") == 1);
  CHECK(count("[Request Template]") == 1);
  CHECK(full.find("[Task Description]") < full.find("[Environment Summary]"));
  CHECK(full.find("[Environment Summary]") < full.find("[Request Template]"));

  UavState other = sample_state();
  other.position = {3, 9, 0};
  other.battery = 0.91;
  const PromptParts other_parts = build_prompt_parts(other, 0.1234, sample_env());
  CHECK(parts.task == other_parts.task);
  CHECK(parts.query == other_parts.query);
  CHECK(parts.env_summary != other_parts.env_summary);
}

TEST_CASE("sample response parses to the documented advice") {
  const UavState current = sample_state();
  const Advice advice =
      parse_advice("pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0", current, GridDims{15, 15, 3});
  CHECK(advice.delta_position == Vec3i{-1, 0, 0});
  CHECK(advice.target_position == Vec3i{13, 0, 2});
  CHECK(advice.camera_target == CameraConfig{45, 75, 10});
}

TEST_CASE("out-of-range values are clamped and snapped onto the lattice") {
  const UavState current = sample_state();
  const Advice advice = parse_advice("tilt: 47, pan: 100, zoom: 2.5, X: 0.4, Y: 0, Z: 0",
                                     current, GridDims{15, 15, 3});
  CHECK(advice.camera_target.tilt == 45);
  CHECK(advice.camera_target.pan == 90);
  CHECK(advice.camera_target.zoom_tenths == 20);
  CHECK(advice.delta_position == Vec3i{0, 0, 0});
}

TEST_CASE("responses missing keys raise AdviceUnparseable") {
  const UavState current = sample_state();
  CHECK_THROWS_AS(parse_advice("I recommend moving left", current, GridDims{}),
                  AdviceUnparseable);
  CHECK_THROWS_AS(parse_advice("", current, GridDims{}), AdviceUnparseable);
  CHECK_THROWS_AS(parse_advice("pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0", current, GridDims{}),
                  AdviceUnparseable);
  CHECK_THROWS_AS(parse_advice("pan: high, tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0", current,
                               GridDims{}),
                  AdviceUnparseable);
}

TEST_CASE("key order, case and whitespace do not change the parse") {
  const UavState current = sample_state();
  const GridDims dims{15, 15, 3};
  const Advice expected =
      parse_advice("pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0", current, dims);

  const char* variants[] = {
      "tilt: 45, pan: 75, zoom: 1, X: -1, Y: 0, Z: 0",
      "Z: 0\nY: 0\nX: -1\nzoom: 1\ntilt: 45\npan: 75",
      "PAN:75,TILT:45,ZOOM:1,x:-1,y:0,z:0",
      "pan :  75 ,  tilt:45,zoom: 1.0, X: -1.0, Y: 0.0, Z: 0",
      "Here you go: pan: 75, tilt: 45, zoom: 1, X: -1, Y: 0, Z: 0. Good luck!",
  };
  for (const char* v : variants) CHECK(parse_advice(v, current, dims) == expected);
}

TEST_CASE("parsing the canonical rendering returns the same advice") {
  Rng rng(21);
  const GridDims dims{15, 15, 3};
  for (int i = 0; i < 300; ++i) {
    UavState current;
    current.position = {rng.uniform_int(0, 14), rng.uniform_int(0, 14), rng.uniform_int(0, 2)};
    Advice advice = random_advice(rng, dims);
    advice.target_position = dims.clamp(current.position + advice.delta_position);
    const Advice reparsed = parse_advice(render_advice(advice), current, dims);
    CHECK(reparsed == advice);
  }
}

TEST_CASE("dir_align basics and scale invariance") {
  CHECK(dir_align({1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
  CHECK(dir_align({1, 0, 0}, {0, 1, 0}) == doctest::Approx(0.0));
  CHECK(dir_align({1, 1, 0}, {1, 0, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(dir_align({0, 0, 0}, {1, 0, 0}) == 0.0);
  CHECK(dir_align({1, 2, 3}, {0, 0, 0}) == 0.0);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::array<double, 3> u{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    std::array<double, 3> v{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double k = rng.uniform(0.1, 7.0), m = rng.uniform(0.1, 7.0);
    std::array<double, 3> ku{k * u[0], k * u[1], k * u[2]};
    std::array<double, 3> mv{m * v[0], m * v[1], m * v[2]};
    CHECK(dir_align(ku, mv) == doctest::Approx(dir_align(u, v)).epsilon(1e-9));
    CHECK(dir_align(u, v) >= -1.0 - 1e-12);
    CHECK(dir_align(u, v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("pos_align examples and monotonicity") {
  const GridDims dims{15, 15, 3};
  const double d_max = dims.max_distance();
  CHECK(d_max == doctest::Approx(std::sqrt(396.0)));

  CHECK(pos_align({3, 4, 0}, {3, 4, 0}, d_max) == doctest::Approx(1.0));
  CHECK(pos_align({0, 0, 0}, {14, 14, 2}, d_max) == doctest::Approx(0.0));
  CHECK(pos_align({5, 6, 1}, {8, 10, 1}, d_max) == doctest::Approx(1.0 - 5.0 / std::sqrt(396.0)));

  double previous = 1.1;
  for (int offset = 0; offset <= 14; ++offset) {
    const double v = pos_align({0, 0, 0}, {offset, 0, 0}, d_max);
    CHECK(v < previous);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    previous = v;
  }
}

TEST_CASE("move_reward is the convex combination") {
  CHECK(move_reward(1.0, 0.5, 0.9) == doctest::Approx(0.5));
  CHECK(move_reward(0.0, -1.0, 0.3) == doctest::Approx(0.3));
  CHECK(move_reward(0.5, 1.0, 0.74874) == doctest::Approx(0.87437));
}

TEST_CASE("camera penalty is a non-positive native-unit L1 distance") {
  CHECK(cam_align_penalty(CameraConfig{45, 75, 10}, CameraConfig{45, 75, 10}) == 0.0);
  CHECK(cam_align_penalty(CameraConfig{40, 60, 12}, CameraConfig{45, 75, 10}) ==
        doctest::Approx(-20.2));
  CHECK(cam_align_penalty(CameraConfig{0, -90, 5}, CameraConfig{90, 90, 20}) ==
        doctest::Approx(-271.5));

  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const CameraConfig a{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                         rng.uniform_int(5, 20)};
    const CameraConfig b{5 * rng.uniform_int(0, 18), 15 * rng.uniform_int(-6, 6),
                         rng.uniform_int(5, 20)};
    const double pen = cam_align_penalty(a, b);
    CHECK(pen <= 0.0);
    CHECK((pen == 0.0) == (a == b));
    const double norm_pen = cam_align_penalty(a, b, true);
    CHECK(norm_pen <= 0.0);
    CHECK(norm_pen >= -3.0);
  }
}

TEST_CASE("llm_shaping composes penalty and movement alignment") {
  AlignmentParams params = AlignmentParams::for_grid(GridDims{15, 15, 3});

  SUBCASE("following the advice exactly earns the full movement weight") {
    UavState prev;
    prev.position = {5, 5, 1};
    prev.camera = CameraConfig{45, 0, 10};
    Advice advice;
    advice.delta_position = {1, 0, 0};
    advice.target_position = {6, 5, 1};
    advice.camera_target = prev.camera;
    UavState next = prev;
    next.position = advice.target_position;
    CHECK(llm_shaping(params, next, prev, advice) ==
          doctest::Approx(params.w_move_align * 1.0));
  }

  SUBCASE("a stationary agent gets the zero-vector convention plus distance") {
    UavState prev;
    prev.position = {5, 5, 1};
    prev.camera = CameraConfig{45, 0, 10};
    Advice advice;
    advice.delta_position = {1, 0, 0};
    advice.target_position = {6, 5, 1};
    advice.camera_target = prev.camera;
    const UavState next = prev;  // did not move
    const double expected_move =
        params.alpha * 0.0 + (1.0 - params.alpha) * (1.0 - 1.0 / params.d_max);
    CHECK(llm_shaping(params, next, prev, advice) ==
          doctest::Approx(params.w_move_align * expected_move));
  }

  SUBCASE("arithmetic matches the documented composite example") {
    // dir 1, pos 1 - 5/sqrt(396), penalty -20.2 with both weights 0.5.
    UavState prev;
    prev.position = {0, 0, 0};
    prev.camera = CameraConfig{45, 0, 10};
    UavState next = prev;
    next.position = {1, 0, 0};
    next.camera = CameraConfig{40, 60, 12};
    Advice advice;
    advice.delta_position = {1, 0, 0};
    advice.target_position = {6, 0, 0};
    advice.camera_target = CameraConfig{45, 75, 10};
    CHECK(llm_shaping(params, next, prev, advice) == doctest::Approx(-9.66281).epsilon(1e-5));
  }
}
