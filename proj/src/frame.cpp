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

#include "tinytrack/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "tinytrack/errors.hpp"

namespace tinytrack {

Frame make_frame(int width, int height, int index, std::uint8_t fill) {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("frame dimensions must be positive, got " +
                        std::to_string(width) + "x" + std::to_string(height));
  }
  Frame f;
  f.width = width;
  f.height = height;
  f.index = index;
  f.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return f;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(
      std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

BinaryMask make_mask(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("mask dimensions must be positive");
  }
  BinaryMask m;
  m.width = width;
  m.height = height;
  m.bits.assign(static_cast<std::size_t>(width) * height, 0);
  return m;
}

Blob make_blob(std::vector<PixelCoord> pixels) {
  if (pixels.empty()) {
    throw ArgumentError("blob needs at least one pixel");
  }
  std::sort(pixels.begin(), pixels.end(), [](const PixelCoord& a, const PixelCoord& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  Blob blob;
  int min_x = pixels.front().x, max_x = pixels.front().x;
  int min_y = pixels.front().y, max_y = pixels.front().y;
  double sum_x = 0.0, sum_y = 0.0;
  for (const PixelCoord& p : pixels) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
    sum_x += p.x;
    sum_y += p.y;
  }
  const double n = static_cast<double>(pixels.size());
  blob.centroid = Point2d{sum_x / n, sum_y / n};
  blob.bbox = Rect{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
  blob.pixels = std::move(pixels);
  return blob;
}

Frame to_grayscale(const RgbImage& rgb) {
  const std::size_t expected =
      static_cast<std::size_t>(rgb.width) * static_cast<std::size_t>(rgb.height);
  if (rgb.width <= 0 || rgb.height <= 0 || rgb.r.size() != expected ||
      rgb.g.size() != expected || rgb.b.size() != expected) {
    throw DimensionError("channel planes disagree: expected " +
                         std::to_string(expected) + " pixels per plane, got R=" +
                         std::to_string(rgb.r.size()) + " G=" +
                         std::to_string(rgb.g.size()) + " B=" +
                         std::to_string(rgb.b.size()));
  }
  Frame out = make_frame(rgb.width, rgb.height);
  for (std::size_t i = 0; i < expected; ++i) {
    const double luma =
        0.299 * rgb.r[i] + 0.587 * rgb.g[i] + 0.114 * rgb.b[i];
    const double clamped = std::clamp(std::round(luma), 0.0, 255.0);
    out.pixels[i] = static_cast<std::uint8_t>(clamped);
  }
  return out;
}

DifferenceImage absolute_difference(const Frame& a, const Frame& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("frame dimensions differ: " + std::to_string(a.width) +
                         "x" + std::to_string(a.height) + " vs " +
                         std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  DifferenceImage d;
  d.width = a.width;
  d.height = a.height;
  d.source_pair = {a.index, b.index};
  d.values.resize(a.pixels.size());
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    d.values[i] = static_cast<float>(
        std::abs(static_cast<int>(a.pixels[i]) - static_cast<int>(b.pixels[i])));
  }
  return d;
}

TileGrid tile_grid(int width, int height, int tile_size) {
  if (width < 1 || height < 1) {
    throw ArgumentError("tile_grid needs positive frame dimensions");
  }
  if (tile_size < 1) {
    throw ArgumentError("tile_size must be >= 1");
  }
  TileGrid grid;
  grid.tile_size = tile_size;
  for (int y = 0; y < height; y += tile_size) {
    const int th = std::min(tile_size, height - y);
    for (int x = 0; x < width; x += tile_size) {
      const int tw = std::min(tile_size, width - x);
      grid.tiles.push_back(Rect{x, y, tw, th});
    }
  }
  return grid;
}

std::vector<Blob> connected_components(const BinaryMask& mask,
                                       int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw ArgumentError("connectivity must be 4 or 8");
  }
  static constexpr int dx8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int dy8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static constexpr int dx4[] = {0, -1, 1, 0};
  static constexpr int dy4[] = {-1, 0, 0, 1};
  const int* dx = connectivity == 8 ? dx8 : dx4;
  const int* dy = connectivity == 8 ? dy8 : dy4;
  const int n_dirs = connectivity;

  std::vector<Blob> blobs;
  std::vector<std::uint8_t> visited(mask.bits.size(), 0);
  std::vector<PixelCoord> stack;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * mask.width + x;
      if (mask.bits[idx] == 0 || visited[idx]) continue;
      std::vector<PixelCoord> component;
      visited[idx] = 1;
      stack.clear();
      stack.push_back(PixelCoord{x, y});
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        component.push_back(p);
        for (int k = 0; k < n_dirs; ++k) {
          const int nx = p.x + dx[k];
          const int ny = p.y + dy[k];
          if (nx < 0 || ny < 0 || nx >= mask.width || ny >= mask.height) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * mask.width + nx;
          if (mask.bits[nidx] == 0 || visited[nidx]) continue;
          visited[nidx] = 1;
          stack.push_back(PixelCoord{nx, ny});
        }
      }
      blobs.push_back(make_blob(std::move(component)));
    }
  }
  return blobs;
}

double ssim(const Patch& a, const Patch& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("ssim patches differ in size");
  }
  if (a.width < 3 || a.height < 3) {
    throw ArgumentError("ssim patch edge must be >= 3");
  }
  const std::size_t n = a.pixels.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a.pixels[i];
    mean_b += b.pixels[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double var_a = 0.0, var_b = 0.0, covar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a.pixels[i] - mean_a;
    const double db = b.pixels[i] - mean_b;
    var_a += da * da;
    var_b += db * db;
    covar += da * db;
  }
  var_a /= static_cast<double>(n);
  var_b /= static_cast<double>(n);
  covar /= static_cast<double>(n);

  constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
  const double numerator = (2.0 * mean_a * mean_b + kC1) * (2.0 * covar + kC2);
  const double denominator =
      (mean_a * mean_a + mean_b * mean_b + kC1) * (var_a + var_b + kC2);
  return numerator / denominator;
}

Patch extract_patch(const Frame& frame, const Rect& rect) {
  if (rect.w <= 0 || rect.h <= 0 || rect.x < 0 || rect.y < 0 ||
      rect.right() > frame.width || rect.bottom() > frame.height) {
    throw ArgumentError("patch rect outside frame");
  }
  Patch p;
  p.width = rect.w;
  p.height = rect.h;
  p.pixels.resize(static_cast<std::size_t>(rect.w) * rect.h);
  for (int y = 0; y < rect.h; ++y) {
    for (int x = 0; x < rect.w; ++x) {
      p.pixels[static_cast<std::size_t>(y) * rect.w + x] =
          frame.at(rect.x + x, rect.y + y);
    }
  }
  return p;
}

Patch extract_patch_clipped(const Frame& frame, const Rect& rect,
                            Rect* clipped) {
  const Rect frame_rect{0, 0, frame.width, frame.height};
  const Rect inter = rect.intersect(frame_rect);
  if (clipped != nullptr) *clipped = inter;
  if (inter.w <= 0 || inter.h <= 0) {
    throw ArgumentError("patch rect fully outside frame");
  }
  return extract_patch(frame, inter);
}

}  // namespace tinytrack
