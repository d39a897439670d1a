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

#include "rula/params.hpp"

#include <cmath>
#include <string>

#include "rula/errors.hpp"

namespace rula
{

double RotationGrid::theta(std::size_t i) const
{
    const double span = end - start;
    return start + span * static_cast<double>(i) / static_cast<double>(num_points - 1);
}

void RotationGrid::validate() const
{
    if (num_points < 2)
        throw ConfigError("rotation grid: at least two points are required");
    if (!(start >= 0.0) || !(end <= pi) || !(start < end))
        throw ConfigError("rotation grid: bounds must satisfy 0 <= start < end <= pi");
}

std::string_view to_string(ClusterFrame frame)
{
    return frame == ClusterFrame::Global ? "global" : "per_channel";
}

ClusterFrame parse_cluster_frame(std::string_view text)
{
    if (text == "global")
        return ClusterFrame::Global;
    if (text == "per_channel")
        return ClusterFrame::PerChannel;
    throw ConfigError("unknown cluster_frame '" + std::string(text) + "' (expected global or per_channel)");
}

double SimParams::kappa() const { return db_to_linear(kappa_db); }

double SimParams::sigma_e_sq() const { return positioning_error ? db_to_linear(sigma_e_sq_db) : 0.0; }

Position2D SimParams::ap_xy() const { return ap_position.value_or(Position2D{side / 2.0, side / 2.0}); }

PathLossParams SimParams::path_loss() const { return {carrier_freq, ref_distance, path_loss_exponent}; }

LinkBudget SimParams::link_budget() const { return {tx_power, noise_power(*this)}; }

double noise_power(const SimParams &params)
{
    return params.noise_psd * params.bandwidth * db_to_linear(params.noise_figure_db);
}

void SimParams::validate() const
{
    auto require = [](bool ok, const char *what) {
        if (!ok)
            throw ConfigError(std::string("config: ") + what);
    };
    auto finite = [](double v) { return std::isfinite(v); };

    require(m_antennas >= 1, "m_antennas must be >= 1");
    require(k_users >= 1, "k_users must be >= 1");
    require(side > 0.0 && finite(side), "side must be positive");
    require(tx_power > 0.0 && finite(tx_power), "tx_power must be positive");
    require(noise_psd > 0.0 && finite(noise_psd), "noise_psd must be positive");
    require(bandwidth > 0.0 && finite(bandwidth), "bandwidth must be positive");
    require(finite(noise_figure_db), "noise_figure_db must be finite");
    require(ap_height > 0.0 && device_height > 0.0, "heights must be positive");
    require(finite(kappa_db), "kappa_db must be finite");
    require(finite(sigma_e_sq_db), "sigma_e_sq_db must be finite");
    require(antenna_spacing > 0.0 && finite(antenna_spacing), "antenna_spacing must be positive");
    require(static_theta >= 0.0 && static_theta <= pi, "static_theta must lie in [0, pi]");
    require(n_network_realizations >= 1, "n_network_realizations must be >= 1");
    require(n_channel_realizations >= 1, "n_channel_realizations must be >= 1");
    require(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0, "max_failure_fraction must lie in [0, 1]");
    if (ap_position)
        require(finite(ap_position->x) && finite(ap_position->y), "AP position must be finite");
    path_loss().validate();
    scattering.validate();
    grid.validate();

    if (strict_ranges)
    {
        require(m_antennas >= 4 && m_antennas <= 16, "m_antennas outside [4, 16]");
        require(k_users >= 2 && k_users <= 16, "k_users outside [2, 16]");
        require(kappa_db >= -10.0 && kappa_db <= 30.0, "kappa_db outside [-10, 30]");
        require(sigma_e_sq_db >= -20.0 && sigma_e_sq_db <= 20.0, "sigma_e_sq_db outside [-20, 20]");
    }
}

} // namespace rula
