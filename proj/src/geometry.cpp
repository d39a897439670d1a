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

#include "rula/geometry.hpp"

#include <cmath>
#include <string>

#include "rula/errors.hpp"

namespace rula
{

namespace
{
constexpr double theta_slack = 1e-12;

bool finite(const Position2D &p) { return std::isfinite(p.x) && std::isfinite(p.y); }
} // namespace

double wrap_angle(double rad)
{
    double r = std::fmod(rad, 2.0 * pi);
    if (r <= -pi)
        r += 2.0 * pi;
    else if (r > pi)
        r -= 2.0 * pi;
    return r;
}

void Placement::validate() const
{
    if (true_positions.empty())
        throw ConfigError("placement: at least one device is required");
    if (true_positions.size() != estimated_positions.size())
        throw ConfigError("placement: true and estimated position lists differ in length");
    if (!(device_height > 0.0) || !(ap_height > 0.0))
        throw ConfigError("placement: heights must be positive");
    if (!finite(ap_position))
        throw ConfigError("placement: AP position is not finite");
    for (std::size_t k = 0; k < true_positions.size(); ++k)
        if (!finite(true_positions[k]) || !finite(estimated_positions[k]))
            throw ConfigError("placement: device " + std::to_string(k) + " has a non-finite coordinate");
}

std::vector<Position2D> place_devices(std::size_t count, double side, RandomStream &rng)
{
    if (count == 0)
        throw ConfigError("place_devices: count must be >= 1");
    if (!(side > 0.0) || !std::isfinite(side))
        throw ConfigError("place_devices: side must be positive and finite");

    std::vector<Position2D> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
    {
        const double x = side * uniform01(rng);
        const double y = side * uniform01(rng);
        out.push_back({x, y});
    }
    return out;
}

Position2D apply_positioning_error(const Position2D &true_pos, double sigma_e_sq, RandomStream &rng)
{
    if (!(sigma_e_sq >= 0.0) || !std::isfinite(sigma_e_sq))
        throw ConfigError("apply_positioning_error: variance must be finite and >= 0");

    const double sigma = std::sqrt(sigma_e_sq);
    const double ex = sigma * standard_normal(rng);
    const double ey = sigma * standard_normal(rng);
    return {true_pos.x - ex, true_pos.y - ey};
}

double azimuth(const Position2D &ap, const Position2D &device)
{
    const double dx = device.x - ap.x;
    const double dy = device.y - ap.y;
    if (dx == 0.0 && dy == 0.0)
        return 0.0;
    return wrap_angle(std::atan2(dy, dx));
}

double distance_3d(const Position2D &ap, double ap_height, const Position2D &device, double device_height)
{
    const double dx = device.x - ap.x;
    const double dy = device.y - ap.y;
    const double dz = ap_height - device_height;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(d > 0.0))
        throw GeometryError("device is coincident with the AP (zero distance)");
    return d;
}

Geometry compute_geometry(const Placement &placement, bool use_estimates, double theta)
{
    if (!(theta >= -theta_slack && theta <= pi + theta_slack))
        throw ConfigError("compute_geometry: theta must lie in [0, pi]");
    placement.validate();

    const auto &pos = use_estimates ? placement.estimated_positions : placement.true_positions;
    Geometry g;
    g.distances_3d.reserve(pos.size());
    g.global_azimuths.reserve(pos.size());
    g.effective_azimuths.reserve(pos.size());
    for (const auto &p : pos)
    {
        g.distances_3d.push_back(distance_3d(placement.ap_position, placement.ap_height, p, placement.device_height));
        const double alpha = azimuth(placement.ap_position, p);
        g.global_azimuths.push_back(alpha);
        g.effective_azimuths.push_back(wrap_angle(alpha - theta));
    }
    return g;
}

} // namespace rula
