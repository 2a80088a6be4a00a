// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Planar geometry for campaign areas. All coordinates are kilometers in a
// locally projected plane; disk membership is inclusive (distance == radius
// counts as inside).

#pragma once

#include <cmath>

namespace hypersc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

// Inclusive disk test, evaluated in squared form so that a point placed at
// exactly radius from the center is inside.
inline bool within_disk(const Point& p, const Point& center, double radius) {
  return squared_distance(p, center) <= radius * radius;
}

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool valid() const { return xmax > xmin && ymax > ymin; }
  bool contains(const Point& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  Point min_corner() const { return {xmin, ymin}; }
};

}  // namespace hypersc
