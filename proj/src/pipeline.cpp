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

#include "tinytrack/pipeline.hpp"

#include <charconv>
#include <cmath>

#include "tinytrack/errors.hpp"

namespace tinytrack {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse value for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) {
    throw ArgumentError(key + " needs an integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

long long parse_ll(const std::string& key, const std::string& value) {
  return parse_int(key, value);
}

}  // namespace

void PipelineConfig::validate() const {
  detector.validate();
  grow.validate();
  rules.validate();
  tracker.validate();
  eval.validate();
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (key == "detector.p_fa") detector.p_fa = parse_double(key, value);
  else if (key == "detector.tile_size") detector.tile_size = parse_int(key, value);
  else if (key == "detector.frame_interval") detector.frame_interval = parse_int(key, value);
  else if (key == "detector.connectivity") detector.connectivity = parse_int(key, value);
  else if (key == "grow.window") grow.window = parse_int(key, value);
  else if (key == "grow.p_low") grow.p_low = parse_double(key, value);
  else if (key == "grow.p_high") grow.p_high = parse_double(key, value);
  else if (key == "grow.sigma_floor") grow.sigma_floor = parse_double(key, value);
  else if (key == "grow.connectivity") grow.connectivity = parse_int(key, value);
  else if (key == "rules.area_min") rules.area_min = parse_ll(key, value);
  else if (key == "rules.area_max") rules.area_max = parse_ll(key, value);
  else if (key == "rules.extent_min") rules.extent_min = parse_double(key, value);
  else if (key == "rules.major_axis_max") rules.major_axis_max = parse_double(key, value);
  else if (key == "rules.eccentricity_max") rules.eccentricity_max = parse_double(key, value);
  else if (key == "tracker.tau") tracker.tau = parse_double(key, value);
  else if (key == "tracker.gate_distance") tracker.gate_distance = parse_double(key, value);
  else if (key == "tracker.ssim_threshold") tracker.ssim_threshold = parse_double(key, value);
  else if (key == "tracker.search_radius") tracker.search_radius = parse_int(key, value);
  else if (key == "tracker.process_noise_scale") tracker.process_noise_scale = parse_double(key, value);
  else if (key == "tracker.measurement_noise_scale") tracker.measurement_noise_scale = parse_double(key, value);
  else if (key == "tracker.miss_grace") tracker.miss_grace = parse_int(key, value);
  else if (key == "tracker.patch_inflation") tracker.patch_inflation = parse_int(key, value);
  else if (key == "eval.window") eval.window = parse_int(key, value);
  else if (key == "eval.distance_threshold") eval.distance_threshold = parse_double(key, value);
  else if (key == "eval.iou_epsilon") eval.iou_epsilon = parse_double(key, value);
  else throw ArgumentError("unknown config key: " + key);
}

std::vector<std::string> PipelineConfig::known_keys() {
  return {
      "detector.p_fa", "detector.tile_size", "detector.frame_interval",
      "detector.connectivity", "grow.window", "grow.p_low", "grow.p_high",
      "grow.sigma_floor", "grow.connectivity", "rules.area_min",
      "rules.area_max", "rules.extent_min", "rules.major_axis_max",
      "rules.eccentricity_max", "tracker.tau", "tracker.gate_distance",
      "tracker.ssim_threshold", "tracker.search_radius",
      "tracker.process_noise_scale", "tracker.measurement_noise_scale",
      "tracker.miss_grace", "tracker.patch_inflation", "eval.window",
      "eval.distance_threshold", "eval.iou_epsilon",
  };
}

static void check_frame_count(const FrameSequence& frames,
                              const PipelineConfig& config) {
  const int i0 = config.detector.frame_interval;
  const int minimum = 2 * i0 + 1;
  if (static_cast<int>(frames.size()) < minimum) {
    throw ArgumentError("pipeline needs at least " + std::to_string(minimum) +
                        " frames for frame_interval " + std::to_string(i0) +
                        ", got " + std::to_string(frames.size()));
  }
}

std::vector<FrameLog> run_detection(const FrameSequence& frames,
                                    const PipelineConfig& config) {
  config.validate();
  check_frame_count(frames, config);
  const int i0 = config.detector.frame_interval;
  const int last = static_cast<int>(frames.size()) - 1 - i0;

  std::vector<FrameLog> logs;
  for (int i = i0; i <= last; ++i) {
    const std::vector<CandidateBlob> candidates =
        detect(frames[i - i0], frames[i], frames[i + i0], config.detector);
    FrameLog log;
    log.frame = i;
    log.candidate_count = static_cast<int>(candidates.size());
    log.hypotheses =
        discriminate(candidates, frames[i], config.grow, config.rules);
    logs.push_back(std::move(log));
  }
  return logs;
}

PipelineResult run_pipeline(const FrameSequence& frames,
                            const PipelineConfig& config) {
  config.validate();
  check_frame_count(frames, config);
  const int i0 = config.detector.frame_interval;
  const int last = static_cast<int>(frames.size()) - 1 - i0;

  PipelineResult result;
  Tracker tracker(config.tracker);
  for (int i = i0; i <= last; ++i) {
    const std::vector<CandidateBlob> candidates =
        detect(frames[i - i0], frames[i], frames[i + i0], config.detector);
    FrameLog log;
    log.frame = i;
    log.candidate_count = static_cast<int>(candidates.size());
    log.hypotheses =
        discriminate(candidates, frames[i], config.grow, config.rules);
    tracker.step(log.hypotheses, frames[i]);
    result.frame_logs.push_back(std::move(log));
  }

  result.tracks_started = static_cast<int>(tracker.tracks().size());
  for (const Track& track : tracker.tracks()) {
    for (const TrackPoint& point : track.history) {
      TrackRecord record;
      record.frame = point.frame_index;
      record.track_id = track.id;
      record.bbox = point.bbox;
      record.vx = point.state.vx;
      record.vy = point.state.vy;
      record.ax = point.state.ax;
      record.ay = point.state.ay;
      result.records.push_back(record);
    }
  }
  return result;
}

}  // namespace tinytrack
