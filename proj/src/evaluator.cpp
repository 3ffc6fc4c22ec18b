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

#include "tinytrack/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "tinytrack/errors.hpp"
#include "tinytrack/hungarian.hpp"

namespace tinytrack {

void EvalConfig::validate() const {
  if (window < 1) throw ArgumentError("evaluation window must be >= 1");
  if (!(distance_threshold > 0.0)) {
    throw ArgumentError("distance_threshold must be positive");
  }
  if (!(iou_epsilon > 0.0)) throw ArgumentError("iou_epsilon must be positive");
}

BoxSeries interpolate_ground_truth(const AnnotationSet& annotations,
                                   int frame_begin, int frame_end) {
  // Keyframes per id, sorted by frame.
  std::unordered_map<int, std::vector<const Annotation*>> by_id;
  for (const Annotation& a : annotations.entries) {
    if (a.bbox.w <= 0 || a.bbox.h <= 0) {
      throw ArgumentError("annotation boxes must have positive area");
    }
    by_id[a.gt_id].push_back(&a);
  }

  BoxSeries series;
  for (auto& [gt_id, keys] : by_id) {
    std::sort(keys.begin(), keys.end(),
              [](const Annotation* a, const Annotation* b) {
                return a->frame < b->frame;
              });
    for (std::size_t k = 0; k + 1 < keys.size(); ++k) {
      if (keys[k]->frame == keys[k + 1]->frame) {
        throw ArgumentError("duplicate keyframe for gt id " +
                            std::to_string(gt_id));
      }
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const Annotation& cur = *keys[k];
      const bool last = k + 1 == keys.size();
      const int span_end = last ? cur.frame : keys[k + 1]->frame;
      for (int f = cur.frame; f <= span_end; ++f) {
        if (f < frame_begin || f > frame_end) continue;
        if (!last && f == span_end) continue;  // owned by the next keyframe
        BoxF box;
        if (last || f == cur.frame) {
          box = to_boxf(cur.bbox);
        } else {
          const Annotation& nxt = *keys[k + 1];
          const double t = static_cast<double>(f - cur.frame) /
                           static_cast<double>(nxt.frame - cur.frame);
          // Corners move linearly, hence so do origin and size.
          box.x = cur.bbox.x + t * (nxt.bbox.x - cur.bbox.x);
          box.y = cur.bbox.y + t * (nxt.bbox.y - cur.bbox.y);
          box.w = cur.bbox.w + t * (nxt.bbox.w - cur.bbox.w);
          box.h = cur.bbox.h + t * (nxt.bbox.h - cur.bbox.h);
        }
        series[f].push_back(LabelledBox{gt_id, box});
      }
    }
  }
  for (auto& [frame, boxes] : series) {
    std::sort(boxes.begin(), boxes.end(),
              [](const LabelledBox& a, const LabelledBox& b) {
                return a.id < b.id;
              });
  }
  return series;
}

double iou(const BoxF& a, const BoxF& b) {
  if (!(a.w > 0.0 && a.h > 0.0 && b.w > 0.0 && b.h > 0.0)) {
    throw ArgumentError("iou requires positive-area boxes");
  }
  const double ix = std::max(0.0, std::min(a.right(), b.right()) -
                                      std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) -
                                      std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

Eigen::MatrixXd cost_matrix(const std::vector<LabelledBox>& hypotheses,
                            const std::vector<LabelledBox>& ground_truths,
                            double epsilon) {
  Eigen::MatrixXd cm(hypotheses.size(), ground_truths.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    for (std::size_t j = 0; j < ground_truths.size(); ++j) {
      cm(i, j) = 1.0 / (iou(hypotheses[i].box, ground_truths[j].box) + epsilon);
    }
  }
  return cm;
}

MatchSeries associate_window(const BoxSeries& hypotheses,
                             const BoxSeries& ground_truths,
                             const EvalConfig& config) {
  config.validate();
  std::set<int> frames;
  for (const auto& [f, _] : hypotheses) frames.insert(f);
  for (const auto& [f, _] : ground_truths) frames.insert(f);

  MatchSeries matches;
  static const std::vector<LabelledBox> kNone;
  // Windows batch K consecutive evaluated frames; each frame is matched on
  // its own cost matrix and the ids feed the cross-frame bookkeeping.
  std::vector<int> ordered(frames.begin(), frames.end());
  for (std::size_t base = 0; base < ordered.size();
       base += static_cast<std::size_t>(config.window)) {
    const std::size_t end =
        std::min(base + static_cast<std::size_t>(config.window), ordered.size());
    for (std::size_t k = base; k < end; ++k) {
      const int frame = ordered[k];
      const auto hyp_it = hypotheses.find(frame);
      const auto gt_it = ground_truths.find(frame);
      const std::vector<LabelledBox>& hyp =
          hyp_it != hypotheses.end() ? hyp_it->second : kNone;
      const std::vector<LabelledBox>& gt =
          gt_it != ground_truths.end() ? gt_it->second : kNone;
      std::vector<FrameMatch>& accepted = matches[frame];
      if (hyp.empty() || gt.empty()) continue;
      const Eigen::MatrixXd cm = cost_matrix(hyp, gt, config.iou_epsilon);
      const AssignmentResult solved = hungarian(cm);
      for (const auto& [i, j] : solved.pairs) {
        if (cm(i, j) > config.distance_threshold) continue;
        accepted.push_back(
            FrameMatch{hyp[i].id, gt[j].id, iou(hyp[i].box, gt[j].box)});
      }
    }
  }
  return matches;
}

EventCounts count_events(const MatchSeries& matches,
                         const BoxSeries& hypotheses,
                         const BoxSeries& ground_truths) {
  std::set<int> frames;
  for (const auto& [f, _] : hypotheses) frames.insert(f);
  for (const auto& [f, _] : ground_truths) frames.insert(f);

  EventCounts counts;
  std::unordered_map<int, int> last_hyp_of_gt;  // most recent matched hyp id
  for (int frame : frames) {
    FrameEvents ev;
    ev.frame = frame;
    const auto hyp_it = hypotheses.find(frame);
    const auto gt_it = ground_truths.find(frame);
    const std::size_t n_hyp =
        hyp_it != hypotheses.end() ? hyp_it->second.size() : 0;
    const std::size_t n_gt =
        gt_it != ground_truths.end() ? gt_it->second.size() : 0;
    const auto match_it = matches.find(frame);
    const std::vector<FrameMatch>* frame_matches =
        match_it != matches.end() ? &match_it->second : nullptr;
    const std::size_t n_match = frame_matches ? frame_matches->size() : 0;

    ev.gt = static_cast<int>(n_gt);
    ev.tp = static_cast<int>(n_match);
    ev.fp = static_cast<int>(n_hyp - n_match);
    ev.fn = static_cast<int>(n_gt - n_match);
    if (frame_matches) {
      for (const FrameMatch& m : *frame_matches) {
        const auto prev = last_hyp_of_gt.find(m.gt_id);
        if (prev != last_hyp_of_gt.end() && prev->second != m.hyp_id) {
          ev.idsw += 1;
        }
        last_hyp_of_gt[m.gt_id] = m.hyp_id;
        counts.iou_sum += m.iou;
      }
    }
    counts.per_frame.push_back(ev);
    counts.tp += ev.tp;
    counts.fp += ev.fp;
    counts.fn += ev.fn;
    counts.idsw += ev.idsw;
    counts.gt += ev.gt;
  }
  counts.match_count = counts.tp;
  return counts;
}

MetricsReport metrics(const EventCounts& counts) {
  MetricsReport r;
  const double tp = static_cast<double>(counts.tp);
  const double fp = static_cast<double>(counts.fp);
  const double fn = static_cast<double>(counts.fn);

  if (counts.tp + counts.fp > 0) {
    r.precision = tp / (tp + fp);
  } else {
    r.precision = counts.fn == 0 ? 1.0 : 0.0;
  }
  r.recall = counts.tp + counts.fn > 0 ? tp / (tp + fn) : 1.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.jaccard =
      counts.tp + counts.fp + counts.fn > 0 ? tp / (tp + fp + fn) : 1.0;

  if (counts.gt > 0) {
    r.mota = 1.0 - static_cast<double>(counts.fn + counts.fp + counts.idsw) /
                       static_cast<double>(counts.gt);
  } else {
    r.mota = (counts.fp + counts.idsw) == 0
                 ? 1.0
                 : -std::numeric_limits<double>::infinity();
  }
  r.motp = counts.match_count > 0
               ? counts.iou_sum / static_cast<double>(counts.match_count)
               : 0.0;
  return r;
}

EvaluationResult evaluate(const BoxSeries& hypotheses,
                          const BoxSeries& ground_truths,
                          const EvalConfig& config) {
  const MatchSeries matches = associate_window(hypotheses, ground_truths, config);
  EvaluationResult result;
  result.counts = count_events(matches, hypotheses, ground_truths);
  result.report = metrics(result.counts);
  return result;
}

}  // namespace tinytrack
