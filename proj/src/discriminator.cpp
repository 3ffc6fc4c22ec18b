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

#include "tinytrack/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <boost/math/distributions/normal.hpp>

#include "tinytrack/errors.hpp"

namespace tinytrack {

void GrowConfig::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw ArgumentError("grow window must be odd and >= 3");
  }
  if (!(p_low > 0.0 && p_low < p_high && p_high < 1.0)) {
    throw ArgumentError("grow tail probabilities must satisfy 0 < p_low < p_high < 1");
  }
  if (!(sigma_floor > 0.0)) {
    throw ArgumentError("sigma_floor must be positive");
  }
  if (connectivity != 4 && connectivity != 8) {
    throw ArgumentError("connectivity must be 4 or 8");
  }
}

void DiscriminatorRules::validate() const {
  if (area_min < 1 || area_min > area_max) {
    throw ArgumentError("rules require 1 <= area_min <= area_max");
  }
  if (!(extent_min > 0.0 && extent_min <= 1.0)) {
    throw ArgumentError("extent_min must be in (0,1]");
  }
  if (!(major_axis_max > 0.0)) {
    throw ArgumentError("major_axis_max must be positive");
  }
  if (!(eccentricity_max >= 0.0 && eccentricity_max < 1.0)) {
    throw ArgumentError("eccentricity_max must be in [0,1)");
  }
}

bool DiscriminatorRules::accepts(const MorphFeatures& f) const {
  return f.area >= area_min && f.area <= area_max && f.extent >= extent_min &&
         f.major_axis_length <= major_axis_max &&
         f.eccentricity <= eccentricity_max;
}

std::pair<double, double> gaussian_bounds(double mu, double sigma,
                                          double p_low, double p_high) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("sigma must be positive and finite");
  }
  if (!(p_low > 0.0 && p_low < p_high && p_high < 1.0)) {
    throw ArgumentError("probabilities must satisfy 0 < p_low < p_high < 1");
  }
  const boost::math::normal_distribution<double> dist(mu, sigma);
  return {boost::math::quantile(dist, p_low),
          boost::math::quantile(dist, p_high)};
}

Blob region_grow(const Frame& frame, const CandidateBlob& seed,
                 const GrowConfig& config) {
  config.validate();
  if (seed.pixels.empty()) {
    throw ArgumentError("seed must have at least one pixel");
  }
  for (const PixelCoord& p : seed.pixels) {
    if (p.x < 0 || p.y < 0 || p.x >= frame.width || p.y >= frame.height) {
      throw ArgumentError("seed pixel outside frame");
    }
  }

  // Intensity model of the seed.
  double sum = 0.0;
  for (const PixelCoord& p : seed.pixels) sum += frame.at(p.x, p.y);
  const double n = static_cast<double>(seed.pixels.size());
  const double mu = sum / n;
  double var = 0.0;
  for (const PixelCoord& p : seed.pixels) {
    const double d = frame.at(p.x, p.y) - mu;
    var += d * d;
  }
  const double sigma = std::max(std::sqrt(var / n), config.sigma_floor);
  const auto [th_low, th_high] =
      gaussian_bounds(mu, sigma, config.p_low, config.p_high);

  // Window centered on the seed centroid, rounded to the nearest pixel.
  const int cx = static_cast<int>(std::lround(seed.centroid.x));
  const int cy = static_cast<int>(std::lround(seed.centroid.y));
  const int half = config.window / 2;
  const Rect window = Rect{cx - half, cy - half, config.window, config.window}
                          .intersect(Rect{0, 0, frame.width, frame.height});

  // Membership: in-band window pixels plus the seed itself.
  const auto key = [&frame](int x, int y) {
    return static_cast<std::size_t>(y) * frame.width + x;
  };
  std::unordered_set<std::size_t> member;
  for (int y = window.y; y < window.bottom(); ++y) {
    for (int x = window.x; x < window.right(); ++x) {
      const double v = frame.at(x, y);
      if (v >= th_low && v <= th_high) member.insert(key(x, y));
    }
  }
  for (const PixelCoord& p : seed.pixels) member.insert(key(p.x, p.y));

  // Connected component of the membership set that contains the seed.
  static constexpr int dx8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int dy8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static constexpr int dx4[] = {0, -1, 1, 0};
  static constexpr int dy4[] = {-1, 0, 0, 1};
  const int* dx = config.connectivity == 8 ? dx8 : dx4;
  const int* dy = config.connectivity == 8 ? dy8 : dy4;

  std::unordered_set<std::size_t> visited;
  std::vector<PixelCoord> stack(seed.pixels.begin(), seed.pixels.end());
  for (const PixelCoord& p : seed.pixels) visited.insert(key(p.x, p.y));
  std::vector<PixelCoord> grown;
  while (!stack.empty()) {
    const PixelCoord p = stack.back();
    stack.pop_back();
    grown.push_back(p);
    for (int k = 0; k < config.connectivity; ++k) {
      const int nx = p.x + dx[k];
      const int ny = p.y + dy[k];
      if (nx < 0 || ny < 0 || nx >= frame.width || ny >= frame.height) continue;
      const std::size_t nk = key(nx, ny);
      if (!member.contains(nk) || visited.contains(nk)) continue;
      visited.insert(nk);
      stack.push_back(PixelCoord{nx, ny});
    }
  }
  return make_blob(std::move(grown));
}

MorphFeatures morph_features(const Blob& blob) {
  if (blob.pixels.empty()) {
    throw ArgumentError("blob must have at least one pixel");
  }
  MorphFeatures f;
  f.area = blob.area();
  f.extent = static_cast<double>(f.area) / static_cast<double>(blob.bbox.area());

  const double n = static_cast<double>(blob.pixels.size());
  double m20 = 0.0, m02 = 0.0, m11 = 0.0;
  for (const PixelCoord& p : blob.pixels) {
    const double dx = p.x - blob.centroid.x;
    const double dy = p.y - blob.centroid.y;
    m20 += dx * dx;
    m02 += dy * dy;
    m11 += dx * dy;
  }
  // Unit-square pixel correction keeps the single-pixel ellipse defined.
  m20 = m20 / n + 1.0 / 12.0;
  m02 = m02 / n + 1.0 / 12.0;
  m11 = m11 / n;

  const double trace_half = 0.5 * (m20 + m02);
  const double det_term =
      std::sqrt(0.25 * (m20 - m02) * (m20 - m02) + m11 * m11);
  const double l1 = trace_half + det_term;
  const double l2 = std::max(trace_half - det_term, 0.0);
  f.major_axis_length = 4.0 * std::sqrt(l1);
  f.eccentricity = std::sqrt(std::max(1.0 - l2 / l1, 0.0));
  return f;
}

std::vector<Hypothesis> discriminate(const std::vector<CandidateBlob>& candidates,
                                     const Frame& frame, const GrowConfig& grow,
                                     const DiscriminatorRules& rules) {
  grow.validate();
  rules.validate();
  std::vector<const CandidateBlob*> order;
  order.reserve(candidates.size());
  for (const CandidateBlob& c : candidates) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const CandidateBlob* a, const CandidateBlob* b) {
                     if (a->centroid.y != b->centroid.y)
                       return a->centroid.y < b->centroid.y;
                     return a->centroid.x < b->centroid.x;
                   });

  std::vector<Hypothesis> hypotheses;
  for (const CandidateBlob* seed : order) {
    Blob grown = region_grow(frame, *seed, grow);
    MorphFeatures features = morph_features(grown);
    if (!rules.accepts(features)) continue;
    hypotheses.push_back(Hypothesis{std::move(grown), features, frame.index});
  }
  return hypotheses;
}

}  // namespace tinytrack
