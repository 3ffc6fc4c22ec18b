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

#ifndef TINYTRACK_SYNTH_HPP_
#define TINYTRACK_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tinytrack/evaluator.hpp"
#include "tinytrack/frame.hpp"

namespace tinytrack {
namespace synth {

enum class PathKind { kLine, kArc, kRoundabout };

// A tiny rectangular mover. Line paths translate at constant velocity from
// `start`; arc and roundabout paths circulate around `center` at
// `angular_rate` starting from `start_angle` (an arc is a partial sweep, a
// roundabout keeps circulating; the position law is the same).
struct VehicleSpec {
  int width = 3;
  int height = 2;
  double intensity = 50.0;  // amplitude offset over the background
  PathKind path = PathKind::kLine;
  Point2d start;            // line: start position; arc: circle center
  Point2d velocity;         // line only, pixels/frame
  double radius = 0.0;      // arc/roundabout
  double angular_rate = 0.0;// radians/frame
  double start_angle = 0.0; // radians
  int start_frame = 0;
  int end_frame = 0;
};

struct ScenarioConfig {
  int width = 0;
  int height = 0;
  int num_frames = 0;
  double noise_lambda = 0.25;  // rate of the per-frame noise magnitude
  Point2d drift;               // background pixels/frame, may be sub-pixel
  std::vector<VehicleSpec> vehicles;
  std::uint64_t seed = 0;

  // Background texture: smooth value-noise plus high-contrast blocks whose
  // edges become regular-noise sites under drift.
  int block_count = -1;        // -1: scaled to frame area
  double block_contrast = 60.0;
  double texture_amplitude = 8.0;  // value-noise half-range within surfaces

  void validate() const;
};

// Center position of a vehicle at a frame.
Point2d vehicle_position(const VehicleSpec& vehicle, int frame_index);

// Cumulative background displacement at a frame: frame_index * drift.
Point2d drift_displacement(const ScenarioConfig& config, int frame_index);

struct Scenario {
  FrameSequence frames;
  AnnotationSet annotations;  // exact per-frame boxes, keyframe_stride == 1
};

// Deterministic render: drifted base texture (bilinear sub-pixel resampling),
// anti-aliased vehicle rectangles, signed-exponential per-frame noise.
// Identical seed => bit-identical frames and annotations.
Scenario generate(const ScenarioConfig& config);

ScenarioConfig scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace synth
}  // namespace tinytrack

#endif  // TINYTRACK_SYNTH_HPP_
