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

#ifndef TINYTRACK_DETECTOR_HPP_
#define TINYTRACK_DETECTOR_HPP_

#include <span>
#include <vector>

#include "tinytrack/frame.hpp"

namespace tinytrack {

// Exponential noise model of one tile's difference amplitudes.
struct NoiseModel {
  double lambda = 0.0;   // rate, 1/amplitude
  int tile_id = -1;      // index into the TileGrid; -1 when standalone
  std::size_t sample_count = 0;
};

struct DetectorConfig {
  double p_fa = 5e-2;      // false-alarm probability of the binarization
  int tile_size = 30;      // local-area edge, pixels
  int frame_interval = 10; // lag between the current and the context frames
  int connectivity = 8;    // 4 or 8, for candidate extraction

  void validate() const;
};

// Goodness-of-fit of a sample set against a fitted exponential model.
struct FitDiagnostics {
  double kl_distance = 0.0;  // >= 0; 64-bin histogram vs model bin masses
  double ks_distance = 0.0;  // in [0,1]; exact one-sample statistic
};

using CandidateBlob = Blob;

// Per-tile masks and candidates produced on the way to the final detection.
// Useful for diagnostics; detect() returns only the candidates.
struct DetectionTrace {
  BinaryMask past_mask;    // outliers of |current - past|
  BinaryMask future_mask;  // outliers of |current - future|
  BinaryMask joint_mask;   // logical AND of the two
  std::vector<CandidateBlob> candidates;
};

// Maximum-likelihood rate of an exponential fit: 1 / mean(samples).
// Throws ArgumentError on empty input, DegenerateDataError when every
// sample is zero (no exponential fits a point mass).
NoiseModel fit_exponential(std::span<const double> samples);

// Inverse exponential CDF at 1 - p_fa: threshold = -ln(p_fa) / lambda.
double binarization_threshold(double lambda, double p_fa);

// Adaptive per-tile binarization: each tile fits its own exponential model
// on all of its difference values (zeros included) and marks values strictly
// above the tile threshold. An all-zero tile emits all-zero bits.
BinaryMask binarize(const DifferenceImage& diff, const TileGrid& grid,
                    double p_fa);

// Per-pixel boolean AND. Throws DimensionError on mismatch.
BinaryMask logical_and(const BinaryMask& a, const BinaryMask& b);

// The full motion detector: binarize |current-past| and |current-future|,
// AND the masks, extract connected components. Candidates mark the CURRENT
// position of a potential mover. The three frames must share dimensions and
// have strictly increasing indices.
std::vector<CandidateBlob> detect(const Frame& past, const Frame& current,
                                  const Frame& future,
                                  const DetectorConfig& config);

DetectionTrace detect_trace(const Frame& past, const Frame& current,
                            const Frame& future, const DetectorConfig& config);

// KS: sup over the empirical CDF jumps of |ECDF - c_E(x; lambda)|.
// KL: sum of hat(p) * ln(hat(p)/q) over a 64-bin equal-width histogram on
// [0, max sample], with q the model mass per bin; empty bins are skipped.
FitDiagnostics fit_diagnostics(std::span<const double> samples, double lambda);

}  // namespace tinytrack

#endif  // TINYTRACK_DETECTOR_HPP_
