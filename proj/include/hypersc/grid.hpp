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

// Uniform-grid spatial acceleration: disk queries over indexed points, and
// per-cell visit histograms with region entropy. A region entropy query
// snaps the query center to its enclosing cell, gathers all cells whose
// centers fall inside the (snapped) disk, merges their per-worker visit
// histograms and evaluates Shannon entropy once on the merged counts, so the
// value is exact for the snapped region. Natural logarithm throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hypersc/geometry.hpp"
#include "hypersc/model.hpp"

namespace hypersc {

namespace detail {

struct CellCoord {
  std::int32_t x = 0;
  std::int32_t y = 0;
  bool operator==(const CellCoord&) const = default;
};

inline std::uint64_t cell_key(CellCoord c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.y));
}

inline CellCoord cell_of(const Point& p, const Point& origin, double cell_size) {
  return {static_cast<std::int32_t>(std::floor((p.x - origin.x) / cell_size)),
          static_cast<std::int32_t>(std::floor((p.y - origin.y) / cell_size))};
}

}  // namespace detail

// Immutable after build; maps opaque integer point ids into grid buckets and
// answers inclusive disk queries exactly.
class GridIndex {
 public:
  GridIndex(Point origin, double cell_size) : origin_(origin), cell_size_(cell_size) {}
  GridIndex(const Rect& area, double cell_size) : GridIndex(area.min_corner(), cell_size) {}

  void insert(int id, const Point& p) {
    buckets_[detail::cell_key(detail::cell_of(p, origin_, cell_size_))].push_back({id, p});
    ++size_;
  }

  std::size_t size() const { return size_; }

  // All indexed ids with distance(center) <= radius, ascending.
  std::vector<int> query_disk(const Point& center, double radius) const {
    std::vector<int> out;
    if (buckets_.empty()) return out;
    const auto lo = detail::cell_of({center.x - radius, center.y - radius}, origin_, cell_size_);
    const auto hi = detail::cell_of({center.x + radius, center.y + radius}, origin_, cell_size_);
    for (std::int32_t cx = lo.x; cx <= hi.x; ++cx) {
      for (std::int32_t cy = lo.y; cy <= hi.y; ++cy) {
        auto it = buckets_.find(detail::cell_key({cx, cy}));
        if (it == buckets_.end()) continue;
        for (const auto& e : it->second) {
          if (within_disk(e.second, center, radius)) out.push_back(e.first);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  Point origin_;
  double cell_size_;
  std::size_t size_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, Point>>> buckets_;
};

// Historical visit histograms per cell plus a memo of region entropies.
// add_* invalidates the memo; the memo itself is mutex-guarded so concurrent
// readers of a fixed grid are safe.
class EntropyGrid {
 public:
  EntropyGrid(Point origin, double cell_size) : origin_(origin), cell_size_(cell_size) {}
  EntropyGrid(const Rect& area, double cell_size) : EntropyGrid(area.min_corner(), cell_size) {}

  double cell_size() const { return cell_size_; }

  void add_visit(WorkerId worker, const Point& location) {
    const auto c = detail::cell_of(location, origin_, cell_size_);
    histograms_[detail::cell_key(c)][worker] += 1;
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.clear();
  }

  void add_arrivals(std::span<const WorkerArrival> arrivals) {
    for (const auto& a : arrivals) {
      const auto c = detail::cell_of(a.location, origin_, cell_size_);
      histograms_[detail::cell_key(c)][a.worker_id] += 1;
    }
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.clear();
  }

  bool empty() const { return histograms_.empty(); }

  // Entropy of the cell-snapped disk region around `center`; 0 for an
  // unvisited region. Cached per (cell, radius).
  double region_entropy(const Point& center, double radius) const {
    const auto c0 = detail::cell_of(center, origin_, cell_size_);
    const MemoKey key{c0.x, c0.y, radius};
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    const double value = compute_region_entropy(c0, radius);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(key, value);
    return value;
  }

 private:
  struct MemoKey {
    std::int32_t cx;
    std::int32_t cy;
    double radius;
    bool operator<(const MemoKey& o) const {
      if (cx != o.cx) return cx < o.cx;
      if (cy != o.cy) return cy < o.cy;
      return radius < o.radius;
    }
  };

  Point cell_center(detail::CellCoord c) const {
    return {origin_.x + (c.x + 0.5) * cell_size_, origin_.y + (c.y + 0.5) * cell_size_};
  }

  double compute_region_entropy(detail::CellCoord c0, double radius) const {
    const Point snapped = cell_center(c0);
    const int reach = static_cast<int>(std::floor(radius / cell_size_)) + 1;
    std::unordered_map<WorkerId, long long> merged;
    long long total = 0;
    for (std::int32_t cx = c0.x - reach; cx <= c0.x + reach; ++cx) {
      for (std::int32_t cy = c0.y - reach; cy <= c0.y + reach; ++cy) {
        if (!within_disk(cell_center({cx, cy}), snapped, radius)) continue;
        auto it = histograms_.find(detail::cell_key({cx, cy}));
        if (it == histograms_.end()) continue;
        for (const auto& [worker, count] : it->second) {
          merged[worker] += count;
          total += count;
        }
      }
    }
    if (total == 0) return 0.0;
    double entropy = 0.0;
    for (const auto& [worker, count] : merged) {
      const double p = static_cast<double>(count) / static_cast<double>(total);
      entropy -= p * std::log(p);
    }
    return entropy < 0.0 ? 0.0 : entropy;
  }

  Point origin_;
  double cell_size_;
  std::unordered_map<std::uint64_t, std::unordered_map<WorkerId, long long>> histograms_;
  mutable std::mutex memo_mutex_;
  mutable std::map<MemoKey, double> memo_;
};

}  // namespace hypersc
