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

#ifndef TINYTRACK_DISCRIMINATOR_HPP_
#define TINYTRACK_DISCRIMINATOR_HPP_

#include <utility>
#include <vector>

#include "tinytrack/detector.hpp"
#include "tinytrack/frame.hpp"

namespace tinytrack {

struct GrowConfig {
  int window = 11;          // square search window edge, odd, >= 3
  double p_low = 5e-3;      // lower tail probability of the intensity band
  double p_high = 1.0 - 5e-3;
  double sigma_floor = 1.0; // minimum sigma, amplitude units
  int connectivity = 8;

  void validate() const;
};

// The four morphological cues of a grown blob. Axis lengths and eccentricity
// come from the ellipse with the same normalized second central moments,
// each pixel treated as a unit square (+1/12 on both axis-aligned moments).
struct MorphFeatures {
  long long area = 0;
  double extent = 0.0;             // area / bbox area, in (0,1]
  double major_axis_length = 0.0;  // 4*sqrt(largest eigenvalue)
  double eccentricity = 0.0;       // sqrt(1 - l2/l1), in [0,1)
};

// Acceptance band for vehicle-shaped blobs. The cues come straight from the
// morphology; the bounds are configuration.
struct DiscriminatorRules {
  long long area_min = 3;
  long long area_max = 80;
  double extent_min = 0.4;
  double major_axis_max = 16.0;
  double eccentricity_max = 0.97;

  void validate() const;
  bool accepts(const MorphFeatures& f) const;
};

// A discriminator-approved candidate; the tracker's measurement unit.
struct Hypothesis {
  Blob blob;  // grown geometry
  MorphFeatures features;
  int frame_index = 0;
};

// Gaussian band [th_low, th_high] = inverse CDF of N(mu, sigma^2) at p_low
// and p_high. Throws ArgumentError on sigma <= 0 or a non-increasing or
// out-of-range probability pair.
std::pair<double, double> gaussian_bounds(double mu, double sigma,
                                          double p_low, double p_high);

// Reconstructs the full geometry of a candidate: fit mu/sigma on the seed's
// grayscale values (sigma clamped up to sigma_floor), re-classify every
// pixel of the window centered on the seed centroid whose value falls inside
// the Gaussian band, and keep the connected component containing the seed.
// The result always contains the seed.
Blob region_grow(const Frame& frame, const CandidateBlob& seed,
                 const GrowConfig& config);

MorphFeatures morph_features(const Blob& blob);

// Grow every candidate, compute cues, keep the ones inside the rule band.
// Output is ordered by seed centroid, row-major, regardless of input order.
std::vector<Hypothesis> discriminate(const std::vector<CandidateBlob>& candidates,
                                     const Frame& frame, const GrowConfig& grow,
                                     const DiscriminatorRules& rules);

}  // namespace tinytrack

#endif  // TINYTRACK_DISCRIMINATOR_HPP_
