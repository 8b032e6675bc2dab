// Copyright 2026 The rulegauge Authors
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

#include "rulegauge/geometry.hpp"

#include "rulegauge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rulegauge::geometry
{

Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }

std::array<Vec2, 4> OrientedBox::corners() const
{
  const Vec2 fwd = half_length * unit_from_heading(heading);
  const Vec2 left = half_width * Vec2{-std::sin(heading), std::cos(heading)};
  return {center + fwd + left, center - fwd + left, center - fwd - left, center + fwd - left};
}

Vec2 OrientedBox::to_local(const Vec2 & p) const
{
  const Vec2 d = p - center;
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

OrientedBox footprint(const VehicleState & v)
{
  if (!(v.length > 0.0) || !(v.width > 0.0)) {
    throw DegenerateVehicle("vehicle '" + v.vehicle_id + "' has non-positive length or width");
  }
  return {v.center, v.heading, 0.5 * v.length, 0.5 * v.width};
}

FrontPoints front_points(const VehicleState & v)
{
  const auto box = footprint(v);
  const Vec2 fwd = unit_from_heading(v.heading);
  const Vec2 left_dir{-fwd.y, fwd.x};
  const Vec2 center_front = v.center + box.half_length * fwd;
  return {
    center_front, center_front + box.half_width * left_dir, center_front - box.half_width * left_dir};
}

Segment projection_segment(const Vec2 & origin, const Vec2 & velocity, double horizon_s)
{
  return {origin, origin + horizon_s * velocity};
}

std::optional<double> segment_box_entry_distance(const Segment & seg, const OrientedBox & box)
{
  const Vec2 o = box.to_local(seg.origin);
  const Vec2 tip = box.to_local(seg.tip);
  const Vec2 d = tip - o;
  const std::array<double, 2> origin{o.x, o.y};
  const std::array<double, 2> dir{d.x, d.y};
  const std::array<double, 2> half{box.half_length, box.half_width};

  // Segment parameter t in [0, 1].
  double t_enter = 0.0;
  double t_exit = 1.0;
  for (std::size_t axis = 0; axis < 2; ++axis) {
    if (dir[axis] == 0.0) {
      if (std::abs(origin[axis]) > half[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (-half[axis] - origin[axis]) / dir[axis];
    double t1 = (half[axis] - origin[axis]) / dir[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) {
      return std::nullopt;
    }
  }
  return t_enter * seg.length();
}

PolylineDistance point_polyline_distance(const Vec2 & p, std::span<const Vec2> poly)
{
  if (poly.empty()) {
    throw EmptyPolyline("polyline has no points");
  }
  double best_sq = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double dx = poly[i].x - p.x;
    const double dy = poly[i].y - p.y;
    const double sq = dx * dx + dy * dy;
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return {std::sqrt(best_sq), best};
}

double heading_angle_between(const Vec2 & a, const Vec2 & b)
{
  if ((a.x == 0.0 && a.y == 0.0) || (b.x == 0.0 && b.y == 0.0)) {
    throw ZeroVector("angle undefined for a zero-length vector");
  }
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

}  // namespace rulegauge::geometry
