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

// Distance-based task utility. All models give utility 1 at distance 0 and 0
// beyond the task radius, and are non-increasing in distance:
//   Binary  1 inside the disk (inclusive), else 0
//   Linear  1 - d/r inside, else 0
//   Zipf    rank^-s where rank = 1 + floor(B*d/r), B equal-width bins on [0,r]

#pragma once

#include <cmath>
#include <string>

#include "hypersc/errors.hpp"

namespace hypersc {

enum class UtilityKind { kBinary, kLinear, kZipf };

struct UtilityModel {
  UtilityKind kind = UtilityKind::kBinary;
  double skew = 1.0;  // Zipf skewness s
  int bins = 10;      // Zipf discretization B

  static UtilityModel binary() { return {UtilityKind::kBinary, 1.0, 10}; }
  static UtilityModel linear() { return {UtilityKind::kLinear, 1.0, 10}; }
  static UtilityModel zipf(double s, int b = 10) { return {UtilityKind::kZipf, s, b}; }
};

inline const char* utility_name(UtilityKind k) {
  switch (k) {
    case UtilityKind::kBinary: return "binary";
    case UtilityKind::kLinear: return "linear";
    case UtilityKind::kZipf: return "zipf";
  }
  return "?";
}

inline double task_utility(const UtilityModel& model, double dist, double radius) {
  if (radius <= 0.0) throw ModelError("task_utility: radius must be positive");
  if (dist > radius) return 0.0;
  switch (model.kind) {
    case UtilityKind::kBinary:
      return 1.0;
    case UtilityKind::kLinear: {
      const double u = 1.0 - dist / radius;
      return u < 0.0 ? 0.0 : u;
    }
    case UtilityKind::kZipf: {
      if (model.skew <= 0.0 || model.bins < 1) throw ModelError("task_utility: bad Zipf parameters");
      const int bin = static_cast<int>(std::floor(model.bins * dist / radius));
      return std::pow(static_cast<double>(1 + bin), -model.skew);
    }
  }
  return 0.0;
}

}  // namespace hypersc
