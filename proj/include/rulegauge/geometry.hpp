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

#ifndef RULEGAUGE__GEOMETRY_HPP_
#define RULEGAUGE__GEOMETRY_HPP_

#include "rulegauge/types.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace rulegauge::geometry
{

/// Vehicle footprint: a rectangle centered at `center`, long axis along `heading`.
struct OrientedBox
{
  Vec2 center;
  double heading{0.0};
  double half_length{0.0};
  double half_width{0.0};

  /// Counter-clockwise starting at front-left.
  [[nodiscard]] std::array<Vec2, 4> corners() const;
  /// `p` expressed in the box frame (x along heading, y to the left).
  [[nodiscard]] Vec2 to_local(const Vec2 & p) const;
};

struct Segment
{
  Vec2 origin;
  Vec2 tip;

  [[nodiscard]] double length() const { return (tip - origin).norm(); }
};

struct FrontPoints
{
  Vec2 center;
  Vec2 left;
  Vec2 right;
};

struct PolylineDistance
{
  double distance{0.0};
  std::size_t index{0};
};

Vec2 unit_from_heading(double heading);

/// Throws DegenerateVehicle if length or width is not positive.
OrientedBox footprint(const VehicleState & v);

/// Center of the front face and its left and right ends.
FrontPoints front_points(const VehicleState & v);

Segment projection_segment(const Vec2 & origin, const Vec2 & velocity, double horizon_s);

/// Distance from `seg.origin` to the first point of `seg` inside or on `box` (slab method in
/// the box frame). 0 when the origin is inside; empty when the segment misses the box.
/// Boundary contact counts as a hit.
std::optional<double> segment_box_entry_distance(const Segment & seg, const OrientedBox & box);

/// Minimum distance from `p` to the vertices of `poly`; ties go to the lowest index.
/// Throws EmptyPolyline.
PolylineDistance point_polyline_distance(const Vec2 & p, std::span<const Vec2> poly);

/// Unsigned angle in [0, pi]. Throws ZeroVector if either input has zero length.
double heading_angle_between(const Vec2 & a, const Vec2 & b);

}  // namespace rulegauge::geometry

#endif  // RULEGAUGE__GEOMETRY_HPP_
