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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "tinytrack/discriminator.hpp"
#include "tinytrack/errors.hpp"
#include "tinytrack/rng.hpp"

using namespace tinytrack;

namespace {

Blob blob_from(std::vector<PixelCoord> pixels) {
  return make_blob(std::move(pixels));
}

Blob solid_blob(int x0, int y0, int w, int h) {
  std::vector<PixelCoord> pixels;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) pixels.push_back({x, y});
  }
  return blob_from(std::move(pixels));
}

// Independent flood-fill oracle: BFS over the whole frame restricted to the
// window, thresholds supplied by the caller.
std::set<std::pair<int, int>> flood_oracle(const Frame& frame, const Blob& seed,
                                           double lo, double hi, Rect window) {
  std::set<std::pair<int, int>> member;
  for (int y = std::max(window.y, 0);
       y < std::min(window.bottom(), frame.height); ++y) {
    for (int x = std::max(window.x, 0);
         x < std::min(window.right(), frame.width); ++x) {
      const double v = frame.at(x, y);
      if (v >= lo && v <= hi) member.insert({x, y});
    }
  }
  for (const PixelCoord& p : seed.pixels) member.insert({p.x, p.y});

  std::set<std::pair<int, int>> out;
  std::vector<std::pair<int, int>> queue;
  for (const PixelCoord& p : seed.pixels) {
    if (out.insert({p.x, p.y}).second) queue.push_back({p.x, p.y});
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.back();
    queue.pop_back();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const std::pair<int, int> n{x + dx, y + dy};
        if (!member.contains(n) || out.contains(n)) continue;
        out.insert(n);
        queue.push_back(n);
      }
    }
  }
  return out;
}

// 2x2 symmetric eigen-decomposition straight from the moment sums; used as
// the oracle for major axis length and eccentricity.
std::pair<double, double> moment_oracle(const Blob& blob) {
  double sx = 0.0, sy = 0.0;
  for (const PixelCoord& p : blob.pixels) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(blob.pixels.size());
  const double cx = sx / n, cy = sy / n;
  double uxx = 1.0 / 12.0, uyy = 1.0 / 12.0, uxy = 0.0;
  for (const PixelCoord& p : blob.pixels) {
    uxx += (p.x - cx) * (p.x - cx) / n;
    uyy += (p.y - cy) * (p.y - cy) / n;
    uxy += (p.x - cx) * (p.y - cy) / n;
  }
  const double common = std::sqrt((uxx - uyy) * (uxx - uyy) + 4.0 * uxy * uxy);
  const double l1 = 0.5 * (uxx + uyy + common);
  const double l2 = 0.5 * (uxx + uyy - common);
  return {4.0 * std::sqrt(l1), std::sqrt(1.0 - l2 / l1)};
}

}  // namespace

TEST_CASE("gaussian_bounds against standard-normal quantiles") {
  const auto [lo, hi] = gaussian_bounds(0.0, 1.0, 0.005, 0.995);
  CHECK(lo == doctest::Approx(-2.5758293035489004).epsilon(1e-9));
  CHECK(hi == doctest::Approx(2.5758293035489004).epsilon(1e-9));

  const auto [lo2, hi2] = gaussian_bounds(100.0, 10.0, 0.005, 0.995);
  CHECK(lo2 == doctest::Approx(74.241706964511).epsilon(1e-6));
  CHECK(hi2 == doctest::Approx(125.758293035489).epsilon(1e-6));

  CHECK_THROWS_AS(gaussian_bounds(0.0, 0.0, 0.1, 0.9), ArgumentError);
  CHECK_THROWS_AS(gaussian_bounds(0.0, 1.0, 0.9, 0.1), ArgumentError);
}

TEST_CASE("gaussian_bounds symmetric tails are centered on the mean") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const double mu = uniform_range(rng, -50.0, 150.0);
    const double sigma = uniform_range(rng, 0.1, 25.0);
    const double p = uniform_range(rng, 0.001, 0.49);
    const auto [lo, hi] = gaussian_bounds(mu, sigma, p, 1.0 - p);
    CHECK(lo + hi == doctest::Approx(2.0 * mu).epsilon(1e-9));
  }
}

TEST_CASE("region_grow recovers a uniform rectangle inside the window") {
  Frame frame = make_frame(40, 40, 0, 50);
  // Bright 6x4 rectangle; the seed sees only part of it.
  for (int y = 18; y < 22; ++y) {
    for (int x = 12; x < 18; ++x) frame.at(x, y) = 160;
  }
  const Blob seed = solid_blob(13, 19, 2, 2);
  GrowConfig config;
  const Blob grown = region_grow(frame, seed, config);

  // Flood-fill oracle with the exact thresholds.
  const auto [lo, hi] = gaussian_bounds(160.0, 1.0, config.p_low, config.p_high);
  const int wx = static_cast<int>(std::lround(seed.centroid.x)) - config.window / 2;
  const int wy = static_cast<int>(std::lround(seed.centroid.y)) - config.window / 2;
  const auto expected = flood_oracle(frame, seed, lo, hi,
                                     Rect{wx, wy, config.window, config.window});
  std::set<std::pair<int, int>> got;
  for (const PixelCoord& p : grown.pixels) got.insert({p.x, p.y});
  CHECK(got == expected);

  // The full rectangle is inside the window here, so growth is exact.
  CHECK(grown.area() == 24);
  CHECK(grown.bbox == Rect{12, 18, 6, 4});
}

TEST_CASE("region_grow keeps the bare seed when nothing qualifies") {
  Frame frame = make_frame(20, 20, 0, 30);
  frame.at(10, 10) = 200;
  const Blob seed = blob_from({{10, 10}});
  GrowConfig config;
  const Blob grown = region_grow(frame, seed, config);
  CHECK(grown.area() == 1);
  CHECK(grown.pixels[0] == PixelCoord{10, 10});
}

TEST_CASE("region_grow constant seed grows to equal-valued neighbors") {
  Frame frame = make_frame(20, 20, 0, 30);
  // An L of equal value; sigma would be zero without the floor.
  const std::vector<PixelCoord> shape = {{9, 9}, {10, 9}, {10, 10}, {10, 11}};
  for (const PixelCoord& p : shape) frame.at(p.x, p.y) = 180;
  const Blob seed = blob_from({{10, 10}});
  const Blob grown = region_grow(frame, seed, GrowConfig{});
  std::set<std::pair<int, int>> got;
  for (const PixelCoord& p : grown.pixels) got.insert({p.x, p.y});
  CHECK(got == std::set<std::pair<int, int>>{{9, 9}, {10, 9}, {10, 10}, {10, 11}});
}

TEST_CASE("region_grow is monotone in the band width and contains the seed") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    Frame frame = make_frame(30, 30, 0);
    for (auto& p : frame.pixels) p = static_cast<std::uint8_t>(rng() % 256);
    const int sx = uniform_int(rng, 2, 27);
    const int sy = uniform_int(rng, 2, 27);
    const Blob seed = blob_from({{sx, sy}, {sx - 1, sy}});

    GrowConfig narrow;
    narrow.p_low = 0.2;
    narrow.p_high = 0.8;
    GrowConfig wide;
    wide.p_low = 0.01;
    wide.p_high = 0.99;

    const Blob small = region_grow(frame, seed, narrow);
    const Blob large = region_grow(frame, seed, wide);

    std::set<std::pair<int, int>> small_set, large_set;
    for (const PixelCoord& p : small.pixels) small_set.insert({p.x, p.y});
    for (const PixelCoord& p : large.pixels) large_set.insert({p.x, p.y});
    for (const PixelCoord& p : seed.pixels) {
      CHECK(small_set.contains({p.x, p.y}));
      CHECK(large_set.contains({p.x, p.y}));
    }
    for (const auto& p : small_set) CHECK(large_set.contains(p));

    // Connectivity: every grown pixel reaches the seed within the set.
    std::set<std::pair<int, int>> visited;
    std::vector<std::pair<int, int>> queue;
    visited.insert({seed.pixels[0].x, seed.pixels[0].y});
    queue.push_back({seed.pixels[0].x, seed.pixels[0].y});
    while (!queue.empty()) {
      const auto [x, y] = queue.back();
      queue.pop_back();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const std::pair<int, int> n{x + dx, y + dy};
          if (!large_set.contains(n) || visited.contains(n)) continue;
          visited.insert(n);
          queue.push_back(n);
        }
      }
    }
    CHECK(visited == large_set);
  }
}

TEST_CASE("region_grow validates the seed") {
  Frame frame = make_frame(10, 10, 0);
  const Blob outside = blob_from({{12, 4}});
  CHECK_THROWS_AS(region_grow(frame, outside, GrowConfig{}), ArgumentError);
}

TEST_CASE("morph_features closed cases") {
  const MorphFeatures rect = morph_features(solid_blob(3, 4, 5, 3));
  CHECK(rect.area == 15);
  CHECK(rect.extent == doctest::Approx(1.0));

  const MorphFeatures single = morph_features(blob_from({{7, 7}}));
  CHECK(single.area == 1);
  CHECK(single.extent == doctest::Approx(1.0));
  CHECK(single.eccentricity == doctest::Approx(0.0));
  CHECK(single.major_axis_length ==
        doctest::Approx(4.0 / std::sqrt(12.0)).epsilon(1e-12));
}

TEST_CASE("morph_features matches the eigen-decomposition oracle") {
  const Blob line = solid_blob(2, 5, 9, 1);
  const auto [major, ecc] = moment_oracle(line);
  const MorphFeatures f = morph_features(line);
  CHECK(f.major_axis_length == doctest::Approx(major).epsilon(1e-12));
  CHECK(f.eccentricity == doctest::Approx(ecc).epsilon(1e-12));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::set<std::pair<int, int>> used;
    std::vector<PixelCoord> pixels;
    int x = 10, y = 10;
    const int steps = uniform_int(rng, 1, 40);
    for (int s = 0; s < steps; ++s) {
      if (used.insert({x, y}).second) pixels.push_back({x, y});
      x += uniform_int(rng, -1, 1);
      y += uniform_int(rng, -1, 1);
    }
    const Blob blob = blob_from(std::move(pixels));
    const auto [om, oe] = moment_oracle(blob);
    const MorphFeatures mf = morph_features(blob);
    CHECK(mf.major_axis_length == doctest::Approx(om).epsilon(1e-9));
    CHECK(mf.eccentricity == doctest::Approx(oe).epsilon(1e-9));
  }
}

TEST_CASE("morph_features translation invariance and rotation sanity") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PixelCoord> pixels;
    std::set<std::pair<int, int>> used;
    for (int i = 0; i < 12; ++i) {
      const int x = uniform_int(rng, 0, 6);
      const int y = uniform_int(rng, 0, 6);
      if (used.insert({x, y}).second) pixels.push_back({x, y});
    }
    const int dx = uniform_int(rng, 1, 50);
    const int dy = uniform_int(rng, 1, 50);
    std::vector<PixelCoord> shifted;
    for (const PixelCoord& p : pixels) shifted.push_back({p.x + dx, p.y + dy});

    const MorphFeatures a = morph_features(blob_from(pixels));
    const MorphFeatures b = morph_features(blob_from(shifted));
    CHECK(a.area == b.area);
    CHECK(a.extent == doctest::Approx(b.extent).epsilon(1e-12));
    CHECK(a.major_axis_length ==
          doctest::Approx(b.major_axis_length).epsilon(1e-12));
    CHECK(a.eccentricity == doctest::Approx(b.eccentricity).epsilon(1e-12));
  }

  // A square and its 90-degree rotation share eccentricity (both 0 by
  // symmetry); a line is always more eccentric than a square of its length.
  for (int n = 3; n <= 9; ++n) {
    const MorphFeatures square = morph_features(solid_blob(0, 0, n, n));
    const MorphFeatures rotated = morph_features(solid_blob(0, 0, n, n));
    CHECK(square.eccentricity ==
          doctest::Approx(rotated.eccentricity).epsilon(1e-12));
    CHECK(square.eccentricity == doctest::Approx(0.0));
    const MorphFeatures line = morph_features(solid_blob(0, 0, n, 1));
    CHECK(square.eccentricity < line.eccentricity);
  }
}

TEST_CASE("discriminate keeps compact bright blobs and drops line fragments") {
  Frame frame = make_frame(60, 60, 3, 40);
  // Compact 6x3 vehicle-like blob.
  for (int y = 20; y < 23; ++y) {
    for (int x = 10; x < 16; ++x) frame.at(x, y) = 140;
  }
  // 40-px long 1-px wide edge fragment.
  for (int x = 5; x < 45; ++x) frame.at(x, 40) = 200;

  const CandidateBlob vehicle_seed = solid_blob(11, 20, 3, 3);
  CandidateBlob edge_seed = solid_blob(5, 40, 40, 1);

  GrowConfig grow;
  DiscriminatorRules rules;

  // Feature oracle for the edge: the grown line stays 1 px tall, so both the
  // major axis and the eccentricity bounds reject it.
  const auto [om, oe] = moment_oracle(edge_seed);
  CHECK(om > rules.major_axis_max);
  CHECK(oe > rules.eccentricity_max);

  const std::vector<Hypothesis> kept =
      discriminate({vehicle_seed, edge_seed}, frame, grow, rules);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].blob.bbox == Rect{10, 20, 6, 3});
  CHECK(kept[0].frame_index == 3);
  CHECK(rules.accepts(kept[0].features));

  CHECK(discriminate({}, frame, grow, rules).empty());
}

TEST_CASE("discriminate output passes its own rule recheck") {
  std::mt19937_64 rng(55);
  Frame frame = make_frame(50, 50, 0);
  for (auto& p : frame.pixels) p = static_cast<std::uint8_t>(rng() % 256);
  std::vector<CandidateBlob> seeds;
  for (int i = 0; i < 15; ++i) {
    const int x = uniform_int(rng, 1, 46);
    const int y = uniform_int(rng, 1, 46);
    seeds.push_back(solid_blob(x, y, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3)));
  }
  GrowConfig grow;
  DiscriminatorRules rules;
  const std::vector<Hypothesis> kept = discriminate(seeds, frame, grow, rules);
  CHECK(kept.size() <= seeds.size());
  for (const Hypothesis& h : kept) {
    const MorphFeatures recomputed = morph_features(h.blob);
    CHECK(rules.accepts(recomputed));
    CHECK(recomputed.area == h.features.area);
  }
}
