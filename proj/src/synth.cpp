// Copyright 2026 The tinytrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tinytrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"

#include "tinytrack/errors.hpp"
#include "tinytrack/rng.hpp"

namespace tinytrack {
namespace synth {

namespace {

using nlohmann::json;

// Texture values are doubles on an enlarged lattice so drift sampling never
// leaves the data.
struct Texture {
  int width = 0;
  int height = 0;
  int margin = 0;
  std::vector<double> values;

  double at(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return values[static_cast<std::size_t>(y) * width + x];
  }

  double sample(double x, double y) const {
    const double fx = x + margin;
    const double fy = y + margin;
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const double ax = fx - x0;
    const double ay = fy - y0;
    return (1.0 - ax) * (1.0 - ay) * at(x0, y0) +
           ax * (1.0 - ay) * at(x0 + 1, y0) +
           (1.0 - ax) * ay * at(x0, y0 + 1) + ax * ay * at(x0 + 1, y0 + 1);
  }
};

Texture build_texture(const ScenarioConfig& config) {
  Texture tex;
  const double max_shift =
      std::max(std::abs(config.drift.x), std::abs(config.drift.y)) *
      config.num_frames;
  tex.margin = static_cast<int>(std::ceil(max_shift)) + 2;
  tex.width = config.width + 2 * tex.margin;
  tex.height = config.height + 2 * tex.margin;
  tex.values.assign(static_cast<std::size_t>(tex.width) * tex.height, 110.0);

  std::mt19937_64 rng(mix_seed(config.seed, 1));

  // Intensity blocks: crisp edges and corners.
  const int blocks = config.block_count >= 0
                         ? config.block_count
                         : std::max(6, tex.width * tex.height / 8000);
  for (int b = 0; b < blocks; ++b) {
    const int bw = uniform_int(rng, 12, std::max(13, tex.width / 4));
    const int bh = uniform_int(rng, 12, std::max(13, tex.height / 4));
    const int bx = uniform_int(rng, 0, std::max(0, tex.width - bw));
    const int by = uniform_int(rng, 0, std::max(0, tex.height - bh));
    const double delta =
        uniform_range(rng, -config.block_contrast, config.block_contrast);
    for (int y = by; y < std::min(by + bh, tex.height); ++y) {
      for (int x = bx; x < std::min(bx + bw, tex.width); ++x) {
        tex.values[static_cast<std::size_t>(y) * tex.width + x] = 110.0 + delta;
      }
    }
  }

  // Smooth value noise on a coarse lattice, bilinearly upsampled.
  constexpr int kCell = 16;
  const int lat_w = tex.width / kCell + 2;
  const int lat_h = tex.height / kCell + 2;
  std::vector<double> lattice(static_cast<std::size_t>(lat_w) * lat_h);
  for (double& v : lattice) {
    v = uniform_range(rng, -config.texture_amplitude, config.texture_amplitude);
  }
  for (int y = 0; y < tex.height; ++y) {
    const int cy = y / kCell;
    const double ay = static_cast<double>(y % kCell) / kCell;
    for (int x = 0; x < tex.width; ++x) {
      const int cx = x / kCell;
      const double ax = static_cast<double>(x % kCell) / kCell;
      const auto lat = [&](int ix, int iy) {
        return lattice[static_cast<std::size_t>(iy) * lat_w + ix];
      };
      const double v = (1.0 - ax) * (1.0 - ay) * lat(cx, cy) +
                       ax * (1.0 - ay) * lat(cx + 1, cy) +
                       (1.0 - ax) * ay * lat(cx, cy + 1) +
                       ax * ay * lat(cx + 1, cy + 1);
      tex.values[static_cast<std::size_t>(y) * tex.width + x] += v;
    }
  }
  return tex;
}

// Pixel (px,py) occupies the unit square centered on it.
double pixel_coverage(int px, int py, double left, double top, double right,
                      double bottom) {
  const double ox = std::min(px + 0.5, right) - std::max(px - 0.5, left);
  const double oy = std::min(py + 0.5, bottom) - std::max(py - 0.5, top);
  if (ox <= 0.0 || oy <= 0.0) return 0.0;
  return ox * oy;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("scenario dimensions must be positive");
  }
  if (num_frames <= 0) throw ArgumentError("num_frames must be positive");
  if (!(noise_lambda > 0.0)) throw ArgumentError("noise_lambda must be positive");
  for (const VehicleSpec& v : vehicles) {
    if (v.width < 1 || v.height < 1) {
      throw ArgumentError("vehicle size must be at least 1x1");
    }
    if (v.end_frame < v.start_frame) {
      throw ArgumentError("vehicle end_frame must be >= start_frame");
    }
  }
}

Point2d vehicle_position(const VehicleSpec& vehicle, int frame_index) {
  const double t = frame_index - vehicle.start_frame;
  switch (vehicle.path) {
    case PathKind::kLine:
      return Point2d{vehicle.start.x + vehicle.velocity.x * t,
                     vehicle.start.y + vehicle.velocity.y * t};
    case PathKind::kArc:
    case PathKind::kRoundabout: {
      const double angle = vehicle.start_angle + vehicle.angular_rate * t;
      return Point2d{vehicle.start.x + vehicle.radius * std::cos(angle),
                     vehicle.start.y + vehicle.radius * std::sin(angle)};
    }
  }
  return vehicle.start;
}

Point2d drift_displacement(const ScenarioConfig& config, int frame_index) {
  if (frame_index < 0 || frame_index >= config.num_frames) {
    throw ArgumentError("frame_index outside scenario");
  }
  return Point2d{config.drift.x * frame_index, config.drift.y * frame_index};
}

Scenario generate(const ScenarioConfig& config) {
  config.validate();
  const Texture tex = build_texture(config);

  Scenario scenario;
  scenario.annotations.keyframe_stride = 1;
  scenario.frames.reserve(static_cast<std::size_t>(config.num_frames));

  std::vector<double> canvas(
      static_cast<std::size_t>(config.width) * config.height);

  for (int f = 0; f < config.num_frames; ++f) {
    const Point2d shift = drift_displacement(config, f);
    for (int y = 0; y < config.height; ++y) {
      for (int x = 0; x < config.width; ++x) {
        canvas[static_cast<std::size_t>(y) * config.width + x] =
            tex.sample(x + shift.x, y + shift.y);
      }
    }

    int vehicle_id = 0;
    for (const VehicleSpec& v : config.vehicles) {
      const int gt_id = vehicle_id++;
      if (f < v.start_frame || f > v.end_frame) continue;
      const Point2d c = vehicle_position(v, f);
      const double left = c.x - 0.5 * v.width;
      const double right = c.x + 0.5 * v.width;
      const double top = c.y - 0.5 * v.height;
      const double bottom = c.y + 0.5 * v.height;

      const int px0 = static_cast<int>(std::floor(left - 0.5));
      const int px1 = static_cast<int>(std::ceil(right + 0.5));
      const int py0 = static_cast<int>(std::floor(top - 0.5));
      const int py1 = static_cast<int>(std::ceil(bottom + 0.5));
      int cov_min_x = config.width, cov_max_x = -1;
      int cov_min_y = config.height, cov_max_y = -1;
      for (int py = std::max(py0, 0); py <= std::min(py1, config.height - 1); ++py) {
        for (int px = std::max(px0, 0); px <= std::min(px1, config.width - 1); ++px) {
          const double cov = pixel_coverage(px, py, left, top, right, bottom);
          if (cov <= 0.0) continue;
          canvas[static_cast<std::size_t>(py) * config.width + px] +=
              cov * v.intensity;
          cov_min_x = std::min(cov_min_x, px);
          cov_max_x = std::max(cov_max_x, px);
          cov_min_y = std::min(cov_min_y, py);
          cov_max_y = std::max(cov_max_y, py);
        }
      }
      if (cov_max_x >= cov_min_x && cov_max_y >= cov_min_y) {
        scenario.annotations.entries.push_back(Annotation{
            f, gt_id,
            Rect{cov_min_x, cov_min_y, cov_max_x - cov_min_x + 1,
                 cov_max_y - cov_min_y + 1}});
      }
    }

    std::mt19937_64 noise_rng(mix_seed(config.seed, 1000 + static_cast<std::uint64_t>(f)));
    Frame frame = make_frame(config.width, config.height, f);
    for (std::size_t i = 0; i < canvas.size(); ++i) {
      const double magnitude = exponential_draw(noise_rng, config.noise_lambda);
      const double sign = (noise_rng() & 1) != 0 ? 1.0 : -1.0;
      const double value = std::round(canvas[i] + sign * magnitude);
      frame.pixels[i] = static_cast<std::uint8_t>(std::clamp(value, 0.0, 255.0));
    }
    scenario.frames.push_back(std::move(frame));
  }
  return scenario;
}

ScenarioConfig scenario_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("scenario JSON parse failure: ") + e.what());
  }
  ScenarioConfig config;
  try {
    config.width = doc.at("width").get<int>();
    config.height = doc.at("height").get<int>();
    config.num_frames = doc.at("num_frames").get<int>();
    config.noise_lambda = doc.value("noise_lambda", config.noise_lambda);
    if (doc.contains("drift")) {
      config.drift.x = doc["drift"].value("dx", 0.0);
      config.drift.y = doc["drift"].value("dy", 0.0);
    }
    config.seed = doc.value("seed", static_cast<std::uint64_t>(0));
    config.block_count = doc.value("block_count", -1);
    config.block_contrast = doc.value("block_contrast", 60.0);
    config.texture_amplitude = doc.value("texture_amplitude", 8.0);
    for (const json& jv : doc.value("vehicles", json::array())) {
      VehicleSpec v;
      const auto size = jv.at("size");
      v.width = size.at(0).get<int>();
      v.height = size.at(1).get<int>();
      v.intensity = jv.value("intensity", 50.0);
      const std::string kind = jv.value("path", "line");
      if (kind == "line") {
        v.path = PathKind::kLine;
        v.start = Point2d{jv.at("start").at(0).get<double>(),
                          jv.at("start").at(1).get<double>()};
        v.velocity = Point2d{jv.at("velocity").at(0).get<double>(),
                             jv.at("velocity").at(1).get<double>()};
      } else if (kind == "arc" || kind == "roundabout") {
        v.path = kind == "arc" ? PathKind::kArc : PathKind::kRoundabout;
        v.start = Point2d{jv.at("center").at(0).get<double>(),
                          jv.at("center").at(1).get<double>()};
        v.radius = jv.at("radius").get<double>();
        v.angular_rate = jv.at("angular_rate").get<double>();
        v.start_angle = jv.value("start_angle", 0.0);
      } else {
        throw ArgumentError("unknown vehicle path kind: " + kind);
      }
      v.start_frame = jv.value("start_frame", 0);
      v.end_frame = jv.value("end_frame", config.num_frames - 1);
      config.vehicles.push_back(v);
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("scenario JSON field error: ") + e.what());
  }
  config.validate();
  return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
  json doc;
  doc["width"] = config.width;
  doc["height"] = config.height;
  doc["num_frames"] = config.num_frames;
  doc["noise_lambda"] = config.noise_lambda;
  doc["drift"] = {{"dx", config.drift.x}, {"dy", config.drift.y}};
  doc["seed"] = config.seed;
  doc["block_count"] = config.block_count;
  doc["block_contrast"] = config.block_contrast;
  doc["texture_amplitude"] = config.texture_amplitude;
  doc["vehicles"] = json::array();
  for (const VehicleSpec& v : config.vehicles) {
    json jv;
    jv["size"] = {v.width, v.height};
    jv["intensity"] = v.intensity;
    jv["start_frame"] = v.start_frame;
    jv["end_frame"] = v.end_frame;
    switch (v.path) {
      case PathKind::kLine:
        jv["path"] = "line";
        jv["start"] = {v.start.x, v.start.y};
        jv["velocity"] = {v.velocity.x, v.velocity.y};
        break;
      case PathKind::kArc:
      case PathKind::kRoundabout:
        jv["path"] = v.path == PathKind::kArc ? "arc" : "roundabout";
        jv["center"] = {v.start.x, v.start.y};
        jv["radius"] = v.radius;
        jv["angular_rate"] = v.angular_rate;
        jv["start_angle"] = v.start_angle;
        break;
    }
    doc["vehicles"].push_back(jv);
  }
  return doc.dump(2);
}

}  // namespace synth
}  // namespace tinytrack
