#include "pirl/advisor.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "pirl/errors.hpp"
#include "pirl/json_io.hpp"

namespace pirl {

namespace {

// New ground cells a footprint of half-width h centered at (x, y) would add.
int count_new_cells(const Vec3i& p, int h, const CoverageMap& coverage, const GridDims& dims) {
  const int x_lo = std::max(0, p.x - h);
  const int x_hi = std::min(dims.x_size - 1, p.x + h);
  const int y_lo = std::max(0, p.y - h);
  const int y_hi = std::min(dims.y_size - 1, p.y + h);
  int n = 0;
  for (int x = x_lo; x <= x_hi; ++x)
    for (int y = y_lo; y <= y_hi; ++y) n += !coverage.covered(x, y);
  return n;
}

// Pan aimed at the diagonal quadrant (relative to p) holding the most
// uncovered cells; ties resolve in quadrant order.
int pan_toward_uncovered(const Vec3i& p, const CoverageMap& coverage) {
  int counts[4] = {0, 0, 0, 0};  // (+x,+y), (-x,+y), (-x,-y), (+x,-y)
  for (int x = 0; x < coverage.x_size(); ++x)
    for (int y = 0; y < coverage.y_size(); ++y) {
      if (coverage.covered(x, y)) continue;
      const bool east = x >= p.x;
      const bool north = y >= p.y;
      ++counts[east ? (north ? 0 : 3) : (north ? 1 : 2)];
    }
  static constexpr int kPan[4] = {45, 90, -90, -45};
  int best = 0;
  for (int q = 1; q < 4; ++q)
    if (counts[q] > counts[best]) best = q;
  return kPan[best];
}

bool inside_any(const std::vector<Obstacle>& obstacles, const Vec3i& p) {
  for (const auto& o : obstacles)
    if (o.contains(p)) return true;
  return false;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Advice scripted_oracle(const UavState& state, const CoverageMap& coverage,
                       const std::vector<Obstacle>& obstacles, const GridDims& dims) {
  // Footprint candidates from narrowest to widest; near borders the narrowest
  // one that still captures the local frontier wins.
  struct CamOption { int tilt; int zoom_tenths; };
  static constexpr CamOption kSweep[] = {{85, 5}, {85, 10}, {85, 20}, {45, 15}, {45, 20}};

  int best_score = 0;
  bool have_best = false;
  Vec3i best_delta{};
  Vec3i best_target{};
  CameraConfig best_camera = state.camera;
  Vec3i first_valid_delta{};
  Vec3i first_valid_target{};
  bool have_valid = false;

  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dz = -1; dz <= 1; ++dz) {
        const Vec3i delta{dx, dy, dz};
        const Vec3i target = state.position + delta;
        if (!dims.contains(target) || inside_any(obstacles, target)) continue;
        if (!have_valid) {
          have_valid = true;
          first_valid_delta = delta;
          first_valid_target = target;
        }

        const bool far_from_borders = target.x - 4 >= 0 && target.x + 4 <= dims.x_size - 1 &&
                                      target.y - 4 >= 0 && target.y + 4 <= dims.y_size - 1;
        CameraConfig camera{45, 0, 20};
        int score;
        if (far_from_borders) {
          score = count_new_cells(target, 4, coverage, dims);
        } else {
          score = -1;
          for (const auto& opt : kSweep) {
            CameraConfig c{opt.tilt, 0, opt.zoom_tenths};
            const int s = count_new_cells(target, footprint_half_width(c), coverage, dims);
            if (s > score) {
              score = s;
              camera = c;
            }
          }
        }
        if (score > best_score) {
          best_score = score;
          have_best = true;
          best_delta = delta;
          best_target = target;
          camera.pan = pan_toward_uncovered(target, coverage);
          best_camera = camera;
        }
      }

  if (!have_best) {
    // Nothing left to gain: keep the camera, drift toward the first valid
    // candidate (lexicographic tie-break).
    Advice advice;
    advice.delta_position = have_valid ? first_valid_delta : Vec3i{};
    advice.target_position = have_valid ? first_valid_target : state.position;
    advice.camera_target = state.camera;
    return advice;
  }
  return Advice{best_delta, best_target, best_camera};
}

AdviceResult ScriptedAdvisor::advise(const std::string&, const AdvisorContext& ctx) {
  ++calls_;
  Advice advice = scripted_oracle(ctx.state, ctx.coverage, ctx.obstacles, ctx.dims);
  return AdviceResult{advice, render_advice(advice), 0.0};
}

std::uint64_t advisor_state_key(const UavState& state, double coverage_fraction) {
  const long battery_cents = std::lround(state.battery * 100.0);
  const long coverage_bp = std::lround(coverage_fraction * 10000.0);
  std::string key = std::to_string(state.position.x) + "," + std::to_string(state.position.y) +
                    "," + std::to_string(state.position.z) + "|" +
                    std::to_string(state.camera.tilt) + "," + std::to_string(state.camera.pan) +
                    "," + std::to_string(state.camera.zoom_tenths) + "|" +
                    std::to_string(battery_cents) + "|" + std::to_string(coverage_bp);
  return fnv1a(key);
}

HttpAdvisor::HttpAdvisor(HttpAdvisorConfig config) : config_(std::move(config)) {}

AdviceResult HttpAdvisor::advise(const std::string& prompt, const AdvisorContext& ctx) {
  ++calls_;

  // Split "scheme://host[:port]" from the request path.
  const auto scheme_end = config_.url.find("://");
  if (scheme_end == std::string::npos) throw ConfigInvalid("advisor url missing scheme: " + config_.url);
  const auto path_start = config_.url.find('/', scheme_end + 3);
  const std::string origin = path_start == std::string::npos ? config_.url : config_.url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : config_.url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(0, config_.timeout_ms * 1000LL);
  client.set_read_timeout(0, config_.timeout_ms * 1000LL);
  client.set_write_timeout(0, config_.timeout_ms * 1000LL);

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  const json body = {{"model", config_.model},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                     {"temperature", config_.temperature}};

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(path, headers, body.dump(), "application/json");
  const double latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
        err == httplib::Error::Write)
      throw AdvisorTimeout(httplib::to_string(err));
    throw AdvisorHttpError(0, httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) throw AdvisorHttpError(res->status, res->body);

  std::string content;
  try {
    const json reply = json::parse(res->body);
    const auto& choice = reply.at("choices").at(0);
    content = choice.contains("message") ? choice.at("message").at("content").get<std::string>()
                                         : choice.at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw AdviceUnparseable(std::string("malformed completion payload: ") + e.what());
  }

  Advice advice = parse_advice(content, ctx.state, ctx.dims);
  return AdviceResult{advice, content, latency_ms};
}

struct CachedAdvisor::Impl {
  std::shared_ptr<AdvisorBackend> inner;
  int interval = 1;
  std::mutex mu;
  std::unordered_map<std::uint64_t, AdviceResult> memo;
  AdviceResult last;
  bool have_last = false;
  int since_refresh = 0;
  std::uint64_t requests = 0;
  std::ofstream replay;
};

CachedAdvisor::CachedAdvisor(std::shared_ptr<AdvisorBackend> inner, int interval,
                             std::string replay_path)
    : impl_(new Impl) {
  if (interval < 1) throw ConfigInvalid("advisor interval must be >= 1");
  impl_->inner = std::move(inner);
  impl_->interval = interval;
  if (!replay_path.empty()) {
    impl_->replay.open(replay_path, std::ios::out | std::ios::trunc);
    if (!impl_->replay) throw ConfigInvalid("cannot open replay file for writing: " + replay_path);
  }
}

CachedAdvisor::~CachedAdvisor() = default;

AdviceResult CachedAdvisor::advise(const std::string& prompt, const AdvisorContext& ctx) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  ++impl_->requests;

  const std::uint64_t key = advisor_state_key(ctx.state, ctx.coverage.covered_fraction());
  if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;

  if (impl_->have_last && impl_->since_refresh < impl_->interval) {
    ++impl_->since_refresh;
    return impl_->last;
  }

  AdviceResult result = impl_->inner->advise(prompt, ctx);
  impl_->memo.emplace(key, result);
  impl_->last = result;
  impl_->have_last = true;
  impl_->since_refresh = 1;
  if (impl_->replay.is_open()) {
    const json record = {{"state_key", std::to_string(key)},
                         {"raw_response", result.raw_response},
                         {"advice", result.advice},
                         {"latency_ms", result.latency_ms}};
    impl_->replay << record.dump() << "\n";
    impl_->replay.flush();
  }
  return result;
}

std::uint64_t CachedAdvisor::calls() const { return impl_->inner->calls(); }
std::uint64_t CachedAdvisor::requests() const { return impl_->requests; }

std::vector<AdvisorRecord> read_replay_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open replay file: " + path);
  std::vector<AdvisorRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    AdvisorRecord r;
    r.state_key = std::stoull(j.at("state_key").get<std::string>());
    r.raw_response = j.at("raw_response").get<std::string>();
    j.at("advice").get_to(r.advice);
    r.latency_ms = j.value("latency_ms", 0.0);
    records.push_back(std::move(r));
  }
  return records;
}

ReplayAdvisor::ReplayAdvisor(const std::string& replay_path) {
  for (auto& r : read_replay_file(replay_path)) records_.emplace(r.state_key, std::move(r));
}

AdviceResult ReplayAdvisor::advise(const std::string&, const AdvisorContext& ctx) {
  ++calls_;
  const std::uint64_t key = advisor_state_key(ctx.state, ctx.coverage.covered_fraction());
  auto it = records_.find(key);
  if (it == records_.end())
    throw AdviceUnparseable("no replay record for state key " + std::to_string(key));
  return AdviceResult{it->second.advice, it->second.raw_response, it->second.latency_ms};
}

}  // namespace pirl
