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

#ifndef TINYTRACK_GEOMETRY_HPP_
#define TINYTRACK_GEOMETRY_HPP_

#include <algorithm>
#include <cstdint>

namespace tinytrack {

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

// Axis-aligned integer rectangle, top-left origin, half-open: a pixel (px,py)
// is inside iff x <= px < x+w and y <= py < y+h.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  long long area() const { return static_cast<long long>(w) * h; }

  bool contains(int px, int py) const {
    return px >= x && px < right() && py >= y && py < bottom();
  }

  Rect intersect(const Rect& o) const {
    int x0 = std::max(x, o.x);
    int y0 = std::max(y, o.y);
    int x1 = std::min(right(), o.right());
    int y1 = std::min(bottom(), o.bottom());
    if (x1 <= x0 || y1 <= y0) return Rect{x0, y0, 0, 0};
    return Rect{x0, y0, x1 - x0, y1 - y0};
  }

  Rect inflate(int margin) const {
    return Rect{x - margin, y - margin, w + 2 * margin, h + 2 * margin};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Real-valued rectangle used by the evaluator (interpolated ground truth has
// fractional corners). Same half-open convention as Rect.
struct BoxF {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }

  friend bool operator==(const BoxF&, const BoxF&) = default;
};

inline BoxF to_boxf(const Rect& r) {
  return BoxF{static_cast<double>(r.x), static_cast<double>(r.y),
              static_cast<double>(r.w), static_cast<double>(r.h)};
}

struct Point2d {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2d&, const Point2d&) = default;
};

}  // namespace tinytrack

#endif  // TINYTRACK_GEOMETRY_HPP_
