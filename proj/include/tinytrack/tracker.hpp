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

#ifndef TINYTRACK_TRACKER_HPP_
#define TINYTRACK_TRACKER_HPP_

#include <optional>
#include <vector>

#include "tinytrack/discriminator.hpp"
#include "tinytrack/frame.hpp"
#include "tinytrack/kalman.hpp"

namespace tinytrack {

struct TrackerConfig {
  double tau = 1.0;                    // frame period; all kinematics per frame
  double gate_distance = 15.0;         // px, association gate for active tracks
  double init_gate_distance = 5.0;     // px, pending-pair gate at track birth
  double init_min_displacement = 0.75; // px, a new track must actually move
  double ssim_threshold = 0.5;         // nearest-search acceptance
  int search_radius = 8;               // px, half-width of the search square
  double process_noise_scale = 0.01;   // white-jerk intensity
  double measurement_noise_scale = 4.0;// px^2, R = scale * I2
  int miss_grace = 0;                  // recoveries failures tolerated before termination
  int patch_inflation = 2;             // px added around the bbox for SSIM patches

  void validate() const;
};

enum class TrackStatus { kActive, kTerminated };

struct TrackPoint {
  int frame_index = 0;
  Rect bbox;
  KinematicState state;
};

struct Track {
  int id = -1;
  FilterState filter;
  TrackStatus status = TrackStatus::kActive;
  std::vector<TrackPoint> history;  // frame indices strictly increasing
  Patch last_patch;                 // grayscale crop at last confirmed position
  Rect last_patch_rect;             // where last_patch was cropped
  Rect last_bbox;                   // last confirmed bounding box
  int misses = 0;                   // consecutive recovery failures
};

struct Association {
  std::vector<std::pair<int, int>> assignments;  // (hypothesis, track) indices
  std::vector<int> unassigned_tracks;
  std::vector<int> unassigned_hypotheses;
};

// Euclidean-distance Hungarian association between hypothesis centroids and
// predicted track positions; matched pairs farther than `gate` are demoted
// to unassigned on both sides.
Association associate(const std::vector<Hypothesis>& hypotheses,
                      const std::vector<Point2d>& predictions, double gate);

// SSIM template search: slides the track's last patch over a square region
// of half-width config.search_radius around the last confirmed position of
// the track in `current`. Returns the best placement's bbox when its SSIM
// reaches config.ssim_threshold, otherwise nullopt.
std::optional<Rect> nearest_search(const Track& track, const Frame& current,
                                   const TrackerConfig& config);

// The tracking loop: predict, associate, update, recover-or-terminate,
// initialize. One instance per sequence; step() must be called once per
// frame in order.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config);

  // Advances the tracker by one frame. `hypotheses` must belong to `frame`.
  void step(const std::vector<Hypothesis>& hypotheses, const Frame& frame);

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }

 private:
  struct PendingHypothesis {
    Point2d centroid;
    Rect bbox;
    int frame_index = 0;
  };

  void spawn_track(const PendingHypothesis& previous, const Hypothesis& current,
                   const Frame& frame);
  void confirm(Track& track, const Rect& bbox, const Frame& frame);

  TrackerConfig config_;
  std::vector<Track> tracks_;  // active and terminated, in id order
  std::vector<PendingHypothesis> pending_;
  int next_id_ = 0;
  int last_frame_index_ = -1;
};

}  // namespace tinytrack

#endif  // TINYTRACK_TRACKER_HPP_
