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

#include "tinytrack/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tinytrack/errors.hpp"

namespace tinytrack {

namespace {

double exponential_cdf(double x, double lambda) {
  return x > 0.0 ? 1.0 - std::exp(-lambda * x) : 0.0;
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw ArgumentError("p_fa must be in (0,1), got " + std::to_string(p_fa));
  }
  if (tile_size < 1) throw ArgumentError("tile_size must be >= 1");
  if (frame_interval < 1) throw ArgumentError("frame_interval must be >= 1");
  if (connectivity != 4 && connectivity != 8) {
    throw ArgumentError("connectivity must be 4 or 8");
  }
}

NoiseModel fit_exponential(std::span<const double> samples) {
  if (samples.empty()) {
    throw ArgumentError("fit_exponential needs at least one sample");
  }
  double sum = 0.0;
  for (double s : samples) {
    if (s < 0.0) throw ArgumentError("exponential samples must be non-negative");
    sum += s;
  }
  if (sum <= 0.0) {
    throw DegenerateDataError("all samples are zero; exponential rate undefined");
  }
  NoiseModel model;
  model.lambda = static_cast<double>(samples.size()) / sum;
  model.sample_count = samples.size();
  return model;
}

double binarization_threshold(double lambda, double p_fa) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("lambda must be positive and finite");
  }
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw ArgumentError("p_fa must be in (0,1)");
  }
  return -std::log(p_fa) / lambda;
}

BinaryMask binarize(const DifferenceImage& diff, const TileGrid& grid,
                    double p_fa) {
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw ArgumentError("p_fa must be in (0,1)");
  }
  BinaryMask mask = make_mask(diff.width, diff.height);
  std::vector<double> samples;
  for (std::size_t t = 0; t < grid.tiles.size(); ++t) {
    const Rect& tile = grid.tiles[t];
    if (tile.right() > diff.width || tile.bottom() > diff.height) {
      throw DimensionError("tile grid exceeds difference image bounds");
    }
    samples.clear();
    samples.reserve(static_cast<std::size_t>(tile.area()));
    double sum = 0.0;
    for (int y = tile.y; y < tile.bottom(); ++y) {
      for (int x = tile.x; x < tile.right(); ++x) {
        const double v = diff.at(x, y);
        samples.push_back(v);
        sum += v;
      }
    }
    // Silent tile: nothing moved, nothing to fit.
    if (sum <= 0.0) continue;
    const double lambda = static_cast<double>(samples.size()) / sum;
    const double threshold = binarization_threshold(lambda, p_fa);
    std::size_t i = 0;
    for (int y = tile.y; y < tile.bottom(); ++y) {
      for (int x = tile.x; x < tile.right(); ++x) {
        if (samples[i++] > threshold) mask.set(x, y, true);
      }
    }
  }
  return mask;
}

BinaryMask logical_and(const BinaryMask& a, const BinaryMask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("mask dimensions differ");
  }
  BinaryMask out = make_mask(a.width, a.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    out.bits[i] = (a.bits[i] != 0 && b.bits[i] != 0) ? 1 : 0;
  }
  return out;
}

DetectionTrace detect_trace(const Frame& past, const Frame& current,
                            const Frame& future, const DetectorConfig& config) {
  config.validate();
  if (past.width != current.width || past.height != current.height ||
      future.width != current.width || future.height != current.height) {
    throw DimensionError("detect requires three frames of equal dimensions");
  }
  if (!(past.index < current.index && current.index < future.index)) {
    throw ArgumentError("detect requires past.index < current.index < future.index");
  }
  const TileGrid grid = tile_grid(current.width, current.height, config.tile_size);
  DetectionTrace trace;
  trace.past_mask = binarize(absolute_difference(current, past), grid, config.p_fa);
  trace.future_mask = binarize(absolute_difference(current, future), grid, config.p_fa);
  trace.joint_mask = logical_and(trace.past_mask, trace.future_mask);
  trace.candidates = connected_components(trace.joint_mask, config.connectivity);
  return trace;
}

std::vector<CandidateBlob> detect(const Frame& past, const Frame& current,
                                  const Frame& future,
                                  const DetectorConfig& config) {
  return detect_trace(past, current, future, config).candidates;
}

FitDiagnostics fit_diagnostics(std::span<const double> samples, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("lambda must be positive and finite");
  }
  if (samples.size() < 2) {
    throw ArgumentError("fit_diagnostics needs at least two samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0.0) {
    throw ArgumentError("samples must be non-negative");
  }
  const double max_sample = sorted.back();
  if (max_sample <= 0.0) {
    throw DegenerateDataError("all samples zero; diagnostics undefined");
  }
  const double n = static_cast<double>(sorted.size());

  FitDiagnostics diag;
  // Exact one-sample KS statistic: the ECDF jumps at each order statistic,
  // so the sup is attained just below or at a sample point.
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double model = exponential_cdf(sorted[i], lambda);
    const double above = (static_cast<double>(i) + 1.0) / n - model;
    const double below = model - static_cast<double>(i) / n;
    ks = std::max({ks, above, below});
  }
  diag.ks_distance = ks;

  constexpr int kBins = 64;
  const double bin_width = max_sample / kBins;
  std::vector<std::size_t> counts(kBins, 0);
  for (double s : sorted) {
    int bin = static_cast<int>(s / bin_width);
    bin = std::clamp(bin, 0, kBins - 1);  // max sample lands in the last bin
    counts[static_cast<std::size_t>(bin)]++;
  }
  double kl = 0.0;
  for (int b = 0; b < kBins; ++b) {
    if (counts[b] == 0) continue;
    const double p_hat = static_cast<double>(counts[b]) / n;
    const double lo = b * bin_width;
    const double hi = (b + 1) * bin_width;
    const double q = exponential_cdf(hi, lambda) - exponential_cdf(lo, lambda);
    kl += p_hat * std::log(p_hat / q);
  }
  diag.kl_distance = kl;
  return diag;
}

}  // namespace tinytrack
