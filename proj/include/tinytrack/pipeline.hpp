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

#ifndef TINYTRACK_PIPELINE_HPP_
#define TINYTRACK_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "tinytrack/detector.hpp"
#include "tinytrack/discriminator.hpp"
#include "tinytrack/evaluator.hpp"
#include "tinytrack/io.hpp"
#include "tinytrack/tracker.hpp"

namespace tinytrack {

// Everything the batch pipeline needs, with every knob overridable through
// set() using dotted keys ("detector.p_fa", "tracker.gate_distance", ...).
struct PipelineConfig {
  DetectorConfig detector;
  GrowConfig grow;
  DiscriminatorRules rules;
  TrackerConfig tracker;
  EvalConfig eval;

  void validate() const;
  void set(const std::string& key, const std::string& value);
  static std::vector<std::string> known_keys();
};

// Per-frame record of what the detector and discriminator produced.
struct FrameLog {
  int frame = 0;
  int candidate_count = 0;
  std::vector<Hypothesis> hypotheses;
};

struct PipelineResult {
  std::vector<TrackRecord> records;
  std::vector<FrameLog> frame_logs;
  int tracks_started = 0;
};

// Runs detect -> discriminate -> track over every frame i in
// [i0, N-1-i0] where i0 = config.detector.frame_interval. Needs at least
// 2*i0 + 1 frames. Deterministic in (frames, config).
PipelineResult run_pipeline(const FrameSequence& frames,
                            const PipelineConfig& config);

// Detector + discriminator only, same frame range, no tracking.
std::vector<FrameLog> run_detection(const FrameSequence& frames,
                                    const PipelineConfig& config);

// Burns boxes, id labels and history polylines into RGB PNG frames, one
// output image per input frame ("NNNNNN.png").
void render_overlays(const FrameSequence& frames,
                     const std::vector<TrackRecord>& records,
                     const std::filesystem::path& out_dir);

}  // namespace tinytrack

#endif  // TINYTRACK_PIPELINE_HPP_
