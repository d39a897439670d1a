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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "rula/channel.hpp"
#include "rula/combining.hpp"
#include "rula/geometry.hpp"

namespace rula
{

// Evenly spaced inclusive grid of array rotations.
struct RotationGrid
{
    double start = 0.0;
    double end = pi;
    std::size_t num_points = 1801;

    // start + span * i / (n - 1). Evaluated in this order so that the points of an n-grid are
    // bit-identical to the even points of the (2n - 1)-grid.
    double theta(std::size_t i) const;

    void validate() const;
};

// How scattering-cluster AoAs behave across rotations and channel realizations.
enum class ClusterFrame
{
    // Drawn once per network realization around the true global azimuth; fixed in the room.
    Global,
    // Redrawn for every channel realization around the current effective azimuth.
    PerChannel,
};

std::string_view to_string(ClusterFrame frame);
ClusterFrame parse_cluster_frame(std::string_view text);

struct SimParams
{
    std::size_t m_antennas = 16;
    std::size_t k_users = 4;
    double side = 100.0;             // m
    double tx_power = 0.1;           // W
    double noise_psd = 4e-21;        // W/Hz
    double bandwidth = 20e6;         // Hz
    double noise_figure_db = 9.0;    // dB
    double ap_height = 12.0;         // m
    double device_height = 1.5;      // m
    double carrier_freq = 3.5e9;     // Hz
    double kappa_db = 10.0;          // dB
    double sigma_e_sq_db = -10.0;    // dB re 1 m^2
    double path_loss_exponent = 2.5;
    double ref_distance = 1.0;       // m
    double antenna_spacing = 0.5;    // wavelengths
    ScatteringConfig scattering;
    RotationGrid grid;
    double static_theta = pi / 2.0;  // rad
    std::size_t n_network_realizations = 200;
    std::size_t n_channel_realizations = 200;
    std::uint64_t master_seed = 1;

    // Horizontal AP location; area center when unset.
    std::optional<Position2D> ap_position;
    ClusterFrame cluster_frame = ClusterFrame::Global;
    bool csi_error = true;
    bool positioning_error = true;
    // Reuse the same network-realization seeds for every value of a sweep axis.
    bool common_random_numbers = true;
    double max_failure_fraction = 1e-3;
    // Enforce the reference parameter ranges (M in [4,16], K in [2,16], ...).
    bool strict_ranges = false;

    double kappa() const;              // linear
    double sigma_e_sq() const;         // m^2; 0 when positioning error is disabled
    Position2D ap_xy() const;
    PathLossParams path_loss() const;
    LinkBudget link_budget() const;

    // Throws ConfigError on any invalid field.
    void validate() const;
};

// N0 * B * 10^(NF/10), W.
double noise_power(const SimParams &params);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace rula
