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

#ifndef TINYTRACK_IO_HPP_
#define TINYTRACK_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "tinytrack/evaluator.hpp"
#include "tinytrack/frame.hpp"
#include "tinytrack/kalman.hpp"

namespace tinytrack {

// One exported row of a track's history.
struct TrackRecord {
  int frame = 0;
  int track_id = 0;
  Rect bbox;
  double vx = 0.0, vy = 0.0;
  double ax = 0.0, ay = 0.0;
};

// Loads every .pgm/.png in the directory, sorted lexicographically by
// filename, decoded to 8-bit grayscale. Frame indices are assigned 0..N-1.
// Throws ArgumentError on an empty directory, IoError naming an unreadable
// file, DimensionError listing both sizes on a mismatch.
FrameSequence load_frames(const std::filesystem::path& dir);

Frame read_frame(const std::filesystem::path& file);

// PGM: binary P5, maxval 255 — the bit-exact golden format.
Frame read_pgm(const std::filesystem::path& file);
void write_pgm(const std::filesystem::path& file, const Frame& frame);

// PNG: 8-bit grayscale in; grayscale or RGB (interleaved) out.
Frame read_png(const std::filesystem::path& file);
void write_png_gray(const std::filesystem::path& file, const Frame& frame);
void write_png_rgb(const std::filesystem::path& file, int width, int height,
                   const std::vector<std::uint8_t>& interleaved_rgb);

// Annotation CSV: header "frame,id,x,y,w,h", integer pixels, top-left
// origin. Round-trips exactly.
void write_annotations_csv(const std::filesystem::path& file,
                           const AnnotationSet& annotations);
AnnotationSet read_annotations_csv(const std::filesystem::path& file);

// Track CSV: header "frame,track_id,x,y,w,h,vx,vy,ax,ay", ordered by frame
// then track_id; reals printed with 3 decimals.
void write_tracks_csv(const std::filesystem::path& file,
                      const std::vector<TrackRecord>& records);
std::vector<TrackRecord> read_tracks_csv(const std::filesystem::path& file);
std::string tracks_csv_text(const std::vector<TrackRecord>& records);

// Metrics JSON: totals, the six metrics, and the per-frame event series.
// MOTA's minus-infinity sentinel is serialized as the string "-inf".
std::string metrics_json_text(const EvaluationResult& result,
                              const EvalConfig& config);
void write_metrics_json(const std::filesystem::path& file,
                        const EvaluationResult& result,
                        const EvalConfig& config);

// Track records grouped per frame as evaluator hypotheses.
BoxSeries records_to_boxes(const std::vector<TrackRecord>& records);

// Exact (stride-1) or keyframed annotations as evaluator ground truth.
BoxSeries annotations_to_boxes(const AnnotationSet& annotations);

}  // namespace tinytrack

#endif  // TINYTRACK_IO_HPP_
