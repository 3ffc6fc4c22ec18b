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

#include "tinytrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tinytrack/errors.hpp"
#include "tinytrack/hungarian.hpp"

namespace tinytrack {

void TrackerConfig::validate() const {
  if (!(tau > 0.0)) throw ArgumentError("tau must be positive");
  if (!(gate_distance > 0.0)) throw ArgumentError("gate_distance must be positive");
  if (!(ssim_threshold > 0.0 && ssim_threshold < 1.0)) {
    throw ArgumentError("ssim_threshold must be in (0,1)");
  }
  if (search_radius < 1) throw ArgumentError("search_radius must be >= 1");
  if (!(process_noise_scale >= 0.0)) {
    throw ArgumentError("process_noise_scale must be non-negative");
  }
  if (!(measurement_noise_scale > 0.0)) {
    throw ArgumentError("measurement_noise_scale must be positive");
  }
  if (miss_grace < 0) throw ArgumentError("miss_grace must be >= 0");
  if (patch_inflation < 0) throw ArgumentError("patch_inflation must be >= 0");
}

Association associate(const std::vector<Hypothesis>& hypotheses,
                      const std::vector<Point2d>& predictions, double gate) {
  const int n_hyp = static_cast<int>(hypotheses.size());
  const int n_trk = static_cast<int>(predictions.size());
  Eigen::MatrixXd cost(n_hyp, n_trk);
  for (int i = 0; i < n_hyp; ++i) {
    const Point2d c = hypotheses[i].blob.centroid;
    for (int j = 0; j < n_trk; ++j) {
      const double dx = c.x - predictions[j].x;
      const double dy = c.y - predictions[j].y;
      cost(i, j) = std::hypot(dx, dy);
    }
  }
  const AssignmentResult solved = hungarian(cost);

  Association out;
  out.unassigned_hypotheses = solved.unmatched_rows;
  out.unassigned_tracks = solved.unmatched_cols;
  for (const auto& [hyp, trk] : solved.pairs) {
    if (cost(hyp, trk) > gate) {
      out.unassigned_hypotheses.push_back(hyp);
      out.unassigned_tracks.push_back(trk);
    } else {
      out.assignments.emplace_back(hyp, trk);
    }
  }
  std::sort(out.unassigned_hypotheses.begin(), out.unassigned_hypotheses.end());
  std::sort(out.unassigned_tracks.begin(), out.unassigned_tracks.end());
  return out;
}

std::optional<Rect> nearest_search(const Track& track, const Frame& current,
                                   const TrackerConfig& config) {
  const Patch& tmpl = track.last_patch;
  if (tmpl.width < 3 || tmpl.height < 3) return std::nullopt;

  // Candidate placements: the previous patch position displaced by at most
  // search_radius in each direction, restricted to fully-inside positions.
  const int min_x = std::max(track.last_patch_rect.x - config.search_radius, 0);
  const int max_x = std::min(track.last_patch_rect.x + config.search_radius,
                             current.width - tmpl.width);
  const int min_y = std::max(track.last_patch_rect.y - config.search_radius, 0);
  const int max_y = std::min(track.last_patch_rect.y + config.search_radius,
                             current.height - tmpl.height);
  if (min_x > max_x || min_y > max_y) return std::nullopt;

  double best = -2.0;
  int best_x = 0, best_y = 0;
  for (int y = min_y; y <= max_y; ++y) {
    for (int x = min_x; x <= max_x; ++x) {
      const Patch window =
          extract_patch(current, Rect{x, y, tmpl.width, tmpl.height});
      const double score = ssim(tmpl, window);
      if (score > best) {
        best = score;
        best_x = x;
        best_y = y;
      }
    }
  }
  if (best < config.ssim_threshold) return std::nullopt;

  // Translate the confirmed bbox by the patch displacement.
  const int dx = best_x - track.last_patch_rect.x;
  const int dy = best_y - track.last_patch_rect.y;
  return Rect{track.last_bbox.x + dx, track.last_bbox.y + dy,
              track.last_bbox.w, track.last_bbox.h};
}

Tracker::Tracker(TrackerConfig config) : config_(config) {
  config_.validate();
}

void Tracker::confirm(Track& track, const Rect& bbox, const Frame& frame) {
  track.misses = 0;
  track.last_bbox = bbox;
  Rect clipped;
  track.last_patch = extract_patch_clipped(
      frame, bbox.inflate(config_.patch_inflation), &clipped);
  track.last_patch_rect = clipped;
  track.history.push_back(TrackPoint{
      frame.index, bbox, KinematicState::from_vector(track.filter.mean)});
}

void Tracker::spawn_track(const PendingHypothesis& previous,
                          const Hypothesis& current, const Frame& frame) {
  Track track;
  track.id = next_id_++;
  const Point2d cur = current.blob.centroid;
  KinematicState state;
  state.x = cur.x;
  state.y = cur.y;
  state.vx = (cur.x - previous.centroid.x) / config_.tau;
  state.vy = (cur.y - previous.centroid.y) / config_.tau;
  track.filter.mean = state.to_vector();

  // Both observations carry measurement noise; the velocity difference
  // doubles it. Acceleration is unobserved at birth.
  const double r = config_.measurement_noise_scale;
  Vector6d diag;
  diag << r, r, 2.0 * r / (config_.tau * config_.tau),
      2.0 * r / (config_.tau * config_.tau), 1.0, 1.0;
  track.filter.covariance = diag.asDiagonal();

  KinematicState birth = state;
  birth.x = previous.centroid.x;
  birth.y = previous.centroid.y;
  track.history.push_back(
      TrackPoint{previous.frame_index, previous.bbox, birth});

  tracks_.push_back(std::move(track));
  confirm(tracks_.back(), current.blob.bbox, frame);
}

void Tracker::step(const std::vector<Hypothesis>& hypotheses,
                   const Frame& frame) {
  if (frame.index <= last_frame_index_) {
    throw ArgumentError("step frames must have strictly increasing indices");
  }
  for (const Hypothesis& h : hypotheses) {
    if (h.frame_index != frame.index) {
      throw ArgumentError("hypothesis frame index " +
                          std::to_string(h.frame_index) +
                          " does not match frame " + std::to_string(frame.index));
    }
  }

  std::vector<int> active;
  for (int i = 0; i < static_cast<int>(tracks_.size()); ++i) {
    if (tracks_[i].status == TrackStatus::kActive) active.push_back(i);
  }

  // (a) Predict every active track to the current frame.
  std::vector<Point2d> predictions;
  predictions.reserve(active.size());
  for (int idx : active) {
    Track& track = tracks_[idx];
    track.filter =
        kf_predict(track.filter, config_.tau, config_.process_noise_scale);
    predictions.push_back(Point2d{track.filter.mean(0), track.filter.mean(1)});
  }

  // (b) Hypothesis-to-track association.
  const Association assoc =
      associate(hypotheses, predictions, config_.gate_distance);

  // (c) Assignments update their filters and confirm positions.
  for (const auto& [hyp_idx, trk_slot] : assoc.assignments) {
    Track& track = tracks_[active[trk_slot]];
    const Hypothesis& hyp = hypotheses[hyp_idx];
    track.filter = kf_update(track.filter, hyp.blob.centroid,
                             config_.measurement_noise_scale);
    confirm(track, hyp.blob.bbox, frame);
  }

  // (d) Unassigned tracks try SSIM recovery around their last confirmed
  // position; failure terminates (after the configured grace).
  for (int trk_slot : assoc.unassigned_tracks) {
    Track& track = tracks_[active[trk_slot]];
    const std::optional<Rect> found = nearest_search(track, frame, config_);
    if (found.has_value()) {
      const Point2d center{found->x + 0.5 * (found->w - 1),
                           found->y + 0.5 * (found->h - 1)};
      track.filter =
          kf_update(track.filter, center, config_.measurement_noise_scale);
      confirm(track, *found, frame);
    } else {
      track.misses += 1;
      if (track.misses > config_.miss_grace) {
        track.status = TrackStatus::kTerminated;
      }
    }
  }

  // (e) Unassigned hypotheses confirm last frame's pending pool into new
  // tracks; the rest become the next pending pool.
  std::vector<PendingHypothesis> expiring;
  for (const PendingHypothesis& p : pending_) {
    if (p.frame_index == frame.index - 1) expiring.push_back(p);
  }
  std::vector<char> consumed(assoc.unassigned_hypotheses.size(), 0);
  if (!expiring.empty() && !assoc.unassigned_hypotheses.empty()) {
    Eigen::MatrixXd cost(expiring.size(), assoc.unassigned_hypotheses.size());
    for (std::size_t i = 0; i < expiring.size(); ++i) {
      for (std::size_t j = 0; j < assoc.unassigned_hypotheses.size(); ++j) {
        const Point2d c =
            hypotheses[assoc.unassigned_hypotheses[j]].blob.centroid;
        cost(i, j) = std::hypot(c.x - expiring[i].centroid.x,
                                c.y - expiring[i].centroid.y);
      }
    }
    const AssignmentResult solved = hungarian(cost);
    for (const auto& [pending_idx, hyp_slot] : solved.pairs) {
      if (cost(pending_idx, hyp_slot) > config_.gate_distance) continue;
      spawn_track(expiring[pending_idx],
                  hypotheses[assoc.unassigned_hypotheses[hyp_slot]], frame);
      consumed[hyp_slot] = 1;
    }
  }

  pending_.clear();
  for (std::size_t j = 0; j < assoc.unassigned_hypotheses.size(); ++j) {
    if (consumed[j]) continue;
    const Hypothesis& hyp = hypotheses[assoc.unassigned_hypotheses[j]];
    pending_.push_back(
        PendingHypothesis{hyp.blob.centroid, hyp.blob.bbox, frame.index});
  }
  last_frame_index_ = frame.index;
}

}  // namespace tinytrack
