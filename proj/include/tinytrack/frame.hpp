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

#ifndef TINYTRACK_FRAME_HPP_
#define TINYTRACK_FRAME_HPP_

#include <cstdint>
#include <vector>

#include "tinytrack/geometry.hpp"

namespace tinytrack {

// One 8-bit grayscale raster of a registered sequence. `index` is the 0-based
// frame number; every frame of a sequence shares the same dimensions.
struct Frame {
  int width = 0;
  int height = 0;
  int index = 0;
  std::vector<std::uint8_t> pixels;  // row-major, width*height entries

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

Frame make_frame(int width, int height, int index = 0,
                 std::uint8_t fill = 0);

using FrameSequence = std::vector<Frame>;

// Planar 3-channel 8-bit raster. Kept planar so channel dimension mismatches
// are representable (and rejected by to_grayscale).
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> r;
  std::vector<std::uint8_t> g;
  std::vector<std::uint8_t> b;
};

// Per-pixel absolute inter-frame difference. Values are non-negative and at
// most 255; stored as float so synthetic calibration data can carry
// continuous amplitudes (differences of 8-bit frames stay integral).
struct DifferenceImage {
  int width = 0;
  int height = 0;
  std::pair<int, int> source_pair{0, 0};  // (i, j) frame indices
  std::vector<float> values;              // row-major

  float at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  float& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

// Disjoint row-major paving of a frame. Interior tiles are square with edge
// `tile_size`; remainder strips at the right/bottom edges become smaller
// tiles so the union is exactly the frame.
struct TileGrid {
  int tile_size = 0;
  std::vector<Rect> tiles;
};

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 or 1, row-major

  bool test(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool value) {
    bits[static_cast<std::size_t>(y) * width + x] = value ? 1 : 0;
  }
  std::size_t count() const;
};

BinaryMask make_mask(int width, int height);

// A connected pixel set. `pixels` is sorted row-major; `bbox` is the tight
// bound and `centroid` the unweighted mean of the pixel coordinates.
struct Blob {
  std::vector<PixelCoord> pixels;
  Rect bbox;
  Point2d centroid;

  long long area() const { return static_cast<long long>(pixels.size()); }
};

// Builds bbox/centroid from a pixel set (pixels get sorted row-major).
Blob make_blob(std::vector<PixelCoord> pixels);

// A small grayscale crop used by SSIM matching.
struct Patch {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
// Throws DimensionError if the channel planes disagree in size.
Frame to_grayscale(const RgbImage& rgb);

// |a - b| per pixel, no wraparound. Throws DimensionError on mismatch.
DifferenceImage absolute_difference(const Frame& a, const Frame& b);

// Row-major paving with remainder tiles. Throws ArgumentError on
// non-positive dimensions or tile size.
TileGrid tile_grid(int width, int height, int tile_size);

// Maximal connected components of the set bits; `connectivity` is 4 or 8.
// Blobs are emitted in scan order of their top-left-most pixel.
std::vector<Blob> connected_components(const BinaryMask& mask,
                                       int connectivity);

// Single-window SSIM over the whole patch with the standard constants
// C1=(0.01*255)^2, C2=(0.03*255)^2. Patches must have equal dimensions and
// edge length >= 3. Result is in [-1, 1]; ssim(p, p) == 1.
double ssim(const Patch& a, const Patch& b);

// Crop a rect out of a frame. `rect` must be inside the frame for
// extract_patch; extract_patch_clipped intersects with the frame first and
// reports the rect actually cropped.
Patch extract_patch(const Frame& frame, const Rect& rect);
Patch extract_patch_clipped(const Frame& frame, const Rect& rect,
                            Rect* clipped = nullptr);

}  // namespace tinytrack

#endif  // TINYTRACK_FRAME_HPP_
