// SPDX-License-Identifier: Apache-2.0
//
// rula-sim: uplink spectral-efficiency simulator for rotary linear arrays
// Copyright (C) 2026 The rula-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <vector>

#include "rula/random.hpp"

namespace rula
{

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

// Wraps an angle to (-pi, pi].
double wrap_angle(double rad);

// Horizontal coordinates in meters.
struct Position2D
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Position2D &) const = default;
};

struct Placement
{
    std::vector<Position2D> true_positions;
    std::vector<Position2D> estimated_positions;
    double device_height = 1.5;
    Position2D ap_position;
    double ap_height = 12.0;

    std::size_t size() const { return true_positions.size(); }

    // Throws ConfigError if lists are empty, of unequal length, non-finite, or heights nonpositive.
    void validate() const;
};

// Per-device distances and angles relative to the AP. Angles in radians, wrapped to (-pi, pi].
struct Geometry
{
    std::vector<double> distances_3d;      // d_k
    std::vector<double> global_azimuths;   // alpha_k, from the AP's reference x-axis
    std::vector<double> effective_azimuths; // phi_k = wrap(alpha_k - theta)
};

// `count` positions, each coordinate i.i.d. uniform on [0, side].
std::vector<Position2D> place_devices(std::size_t count, double side, RandomStream &rng);

// Returns true_pos - e with e_x, e_y ~ N(0, sigma_e_sq) independent.
// One standard-normal draw per axis regardless of the variance (including 0).
Position2D apply_positioning_error(const Position2D &true_pos, double sigma_e_sq, RandomStream &rng);

// Horizontal azimuth of `device` seen from `ap`. Zero horizontal offset maps to 0.
double azimuth(const Position2D &ap, const Position2D &device);

// 3D distance; throws GeometryError when zero.
double distance_3d(const Position2D &ap, double ap_height, const Position2D &device, double device_height);

// Geometry for the true (use_estimates = false) or estimated positions with the array rotated by
// theta in [0, pi].
Geometry compute_geometry(const Placement &placement, bool use_estimates, double theta);

} // namespace rula
