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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "tinytrack/errors.hpp"
#include "tinytrack/pipeline.hpp"

namespace tinytrack {

namespace {

struct Rgb {
  std::uint8_t r, g, b;
};

// Saturated palette; track color = id mod size.
constexpr Rgb kPalette[] = {
    {255, 64, 64},  {64, 255, 64},  {80, 120, 255}, {255, 224, 32},
    {255, 64, 255}, {64, 255, 255}, {255, 144, 32}, {160, 64, 255},
    {32, 255, 144}, {255, 32, 128}, {144, 255, 32}, {32, 160, 255},
};

// 3x5 digit glyphs, one bit per pixel, row-major top to bottom.
constexpr std::uint16_t kDigits[10] = {
    0b111101101101111,  // 0
    0b010110010010111,  // 1
    0b111001111100111,  // 2
    0b111001111001111,  // 3
    0b101101111001001,  // 4
    0b111100111001111,  // 5
    0b111100111101111,  // 6
    0b111001001001001,  // 7
    0b111101111101111,  // 8
    0b111101111001111,  // 9
};

class Canvas {
 public:
  Canvas(const Frame& frame) : width_(frame.width), height_(frame.height) {
    data_.resize(static_cast<std::size_t>(width_) * height_ * 3);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
      data_[3 * i] = data_[3 * i + 1] = data_[3 * i + 2] = frame.pixels[i];
    }
  }

  void put(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
    const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  void rect(const Rect& r, Rgb c) {
    for (int x = r.x; x < r.right(); ++x) {
      put(x, r.y, c);
      put(x, r.bottom() - 1, c);
    }
    for (int y = r.y; y < r.bottom(); ++y) {
      put(r.x, y, c);
      put(r.right() - 1, y, c);
    }
  }

  void line(int x0, int y0, int x1, int y1, Rgb c) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      put(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) { err += dy; x0 += sx; }
      if (e2 <= dx) { err += dx; y0 += sy; }
    }
  }

  void label(int x, int y, int number, Rgb c) {
    const std::string digits = std::to_string(number);
    for (char ch : digits) {
      const std::uint16_t glyph = kDigits[ch - '0'];
      for (int gy = 0; gy < 5; ++gy) {
        for (int gx = 0; gx < 3; ++gx) {
          if (glyph & (1u << (14 - (gy * 3 + gx)))) put(x + gx, y + gy, c);
        }
      }
      x += 4;
    }
  }

  const std::vector<std::uint8_t>& data() const { return data_; }
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_, height_;
  std::vector<std::uint8_t> data_;
};

Point2d bbox_center(const Rect& r) {
  return Point2d{r.x + 0.5 * (r.w - 1), r.y + 0.5 * (r.h - 1)};
}

}  // namespace

void render_overlays(const FrameSequence& frames,
                     const std::vector<TrackRecord>& records,
                     const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create overlay directory " + out_dir.string());
  }

  // History of each track in frame order.
  std::map<int, std::vector<TrackRecord>> by_track;
  for (const TrackRecord& r : records) by_track[r.track_id].push_back(r);
  for (auto& [id, rows] : by_track) {
    std::sort(rows.begin(), rows.end(),
              [](const TrackRecord& a, const TrackRecord& b) {
                return a.frame < b.frame;
              });
  }

  for (const Frame& frame : frames) {
    Canvas canvas(frame);
    for (const auto& [id, rows] : by_track) {
      const Rgb color = kPalette[static_cast<std::size_t>(id) %
                                 (sizeof(kPalette) / sizeof(kPalette[0]))];
      // Polyline over every confirmed position up to this frame.
      const TrackRecord* current = nullptr;
      const TrackRecord* previous = nullptr;
      for (const TrackRecord& row : rows) {
        if (row.frame > frame.index) break;
        if (previous != nullptr) {
          const Point2d a = bbox_center(previous->bbox);
          const Point2d b = bbox_center(row.bbox);
          canvas.line(static_cast<int>(std::lround(a.x)),
                      static_cast<int>(std::lround(a.y)),
                      static_cast<int>(std::lround(b.x)),
                      static_cast<int>(std::lround(b.y)), color);
        }
        previous = &row;
        if (row.frame == frame.index) current = &row;
      }
      if (current != nullptr) {
        canvas.rect(current->bbox.inflate(1), color);
        canvas.label(current->bbox.right() + 3, current->bbox.y - 2, id, color);
      }
    }
    char name[32];
    std::snprintf(name, sizeof(name), "%06d.png", frame.index);
    write_png_rgb(out_dir / name, canvas.width(), canvas.height(),
                  canvas.data());
  }
}

}  // namespace tinytrack
