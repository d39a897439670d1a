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

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "rula/channel.hpp"
#include "rula/combining.hpp"
#include "rula/geometry.hpp"
#include "rula/params.hpp"

namespace rula
{

struct CurvePoint
{
    double theta = 0.0;
    double predicted_se = 0.0; // NaN when the combiner could not be formed at this rotation
};

struct RotationDecision
{
    double theta_star = 0.0;
    double predicted_mean_se = 0.0;
    std::vector<CurvePoint> objective_curve;
};

// Curve values within this relative distance of the maximum count as ties; the smallest theta wins.
// Absorbs round-off in otherwise rotation-invariant objectives (single user with MRC).
inline constexpr double tie_tolerance = 1e-12;

// Full-LoS channel hypothesis built from estimated positions. Distances, path gains and global
// azimuths are computed once; only the steering phases depend on the rotation.
class PseudoChannelModel
{
public:
    PseudoChannelModel(std::span<const Position2D> estimated_positions, const SimParams &params);

    ChannelMatrix at(double theta) const;

    std::span<const double> path_gains() const { return beta_; }
    std::span<const double> global_azimuths() const { return alpha_; }

private:
    std::vector<double> beta_;
    std::vector<double> alpha_;
    std::size_t m_antennas_;
    double delta_;
};

ChannelMatrix pseudo_channels(std::span<const Position2D> estimated_positions, double theta, const SimParams &params);

// Predicted per-user mean SE at rotation theta: combiner and SINR both evaluated on the pseudo channels.
// Throws CombiningError if the combiner cannot be formed.
double objective(double theta, std::span<const Position2D> estimated_positions, CombinerScheme scheme,
                 const SimParams &params);

double objective(const ChannelMatrix &pseudo, CombinerScheme scheme, const LinkBudget &budget);

// Brute-force search over every grid point. Throws OptimizationError if no grid point evaluates.
RotationDecision optimize_rotation(std::span<const Position2D> estimated_positions, CombinerScheme scheme,
                                   const SimParams &params, const RotationGrid &grid);

// Same search for all schemes, sharing the pseudo channels per grid point. Indexed like all_schemes.
std::array<RotationDecision, 3> optimize_rotation_all(std::span<const Position2D> estimated_positions,
                                                      const SimParams &params, const RotationGrid &grid);

// Argmax with the tie rule above. Throws OptimizationError if every point is NaN.
void select_optimum(RotationDecision &decision);

// Header "theta_degrees,predicted_se", one grid point per line. Throws IoError.
void write_objective_curve(const RotationDecision &decision, const std::filesystem::path &path);

} // namespace rula
