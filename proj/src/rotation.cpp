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

#include "rula/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "rula/errors.hpp"

namespace rula
{

PseudoChannelModel::PseudoChannelModel(std::span<const Position2D> estimated_positions, const SimParams &params)
    : m_antennas_(params.m_antennas), delta_(params.antenna_spacing)
{
    if (estimated_positions.empty())
        throw ConfigError("pseudo channels: at least one device is required");

    const Position2D ap = params.ap_xy();
    const PathLossParams pl = params.path_loss();
    beta_.reserve(estimated_positions.size());
    alpha_.reserve(estimated_positions.size());
    for (const auto &p : estimated_positions)
    {
        const double d = distance_3d(ap, params.ap_height, p, params.device_height);
        beta_.push_back(path_loss_linear(d, pl));
        alpha_.push_back(azimuth(ap, p));
    }
}

ChannelMatrix PseudoChannelModel::at(double theta) const
{
    if (!(theta >= -1e-12 && theta <= pi + 1e-12))
        throw ConfigError("pseudo channels: theta must lie in [0, pi]");

    ChannelMatrix H;
    H.kind = ChannelKind::Pseudo;
    H.matrix.resize(static_cast<Eigen::Index>(m_antennas_), static_cast<Eigen::Index>(beta_.size()));
    for (std::size_t k = 0; k < beta_.size(); ++k)
        H.matrix.col(static_cast<Eigen::Index>(k)) =
            los_steering(beta_[k], wrap_angle(alpha_[k] - theta), m_antennas_, delta_);
    return H;
}

ChannelMatrix pseudo_channels(std::span<const Position2D> estimated_positions, double theta, const SimParams &params)
{
    return PseudoChannelModel(estimated_positions, params).at(theta);
}

double objective(const ChannelMatrix &pseudo, CombinerScheme scheme, const LinkBudget &budget)
{
    const Eigen::MatrixXcd V = compute_combiner(pseudo, scheme, budget);
    const auto gammas = sinr_all(V, pseudo, budget);
    return se_from_sinr(gammas).mean_se;
}

double objective(double theta, std::span<const Position2D> estimated_positions, CombinerScheme scheme,
                 const SimParams &params)
{
    return objective(pseudo_channels(estimated_positions, theta, params), scheme, params.link_budget());
}

void select_optimum(RotationDecision &decision)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &pt : decision.objective_curve)
        if (!std::isnan(pt.predicted_se))
            best = std::max(best, pt.predicted_se);
    if (!std::isfinite(best))
        throw OptimizationError("rotation search: no grid point could be evaluated");

    const double floor = best - tie_tolerance * std::max(1.0, std::abs(best));
    for (const auto &pt : decision.objective_curve)
    {
        if (!std::isnan(pt.predicted_se) && pt.predicted_se >= floor)
        {
            decision.theta_star = pt.theta;
            decision.predicted_mean_se = pt.predicted_se;
            return;
        }
    }
}

namespace
{
double evaluate_or_nan(const ChannelMatrix &pseudo, CombinerScheme scheme, const LinkBudget &budget)
{
    try
    {
        return objective(pseudo, scheme, budget);
    }
    catch (const CombiningError &)
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
}
} // namespace

RotationDecision optimize_rotation(std::span<const Position2D> estimated_positions, CombinerScheme scheme,
                                   const SimParams &params, const RotationGrid &grid)
{
    grid.validate();
    const PseudoChannelModel model(estimated_positions, params);
    const LinkBudget budget = params.link_budget();

    RotationDecision d;
    d.objective_curve.reserve(grid.num_points);
    for (std::size_t i = 0; i < grid.num_points; ++i)
    {
        const double theta = grid.theta(i);
        d.objective_curve.push_back({theta, evaluate_or_nan(model.at(theta), scheme, budget)});
    }
    select_optimum(d);
    return d;
}

std::array<RotationDecision, 3> optimize_rotation_all(std::span<const Position2D> estimated_positions,
                                                      const SimParams &params, const RotationGrid &grid)
{
    grid.validate();
    const PseudoChannelModel model(estimated_positions, params);
    const LinkBudget budget = params.link_budget();

    std::array<RotationDecision, 3> out;
    for (auto &d : out)
        d.objective_curve.reserve(grid.num_points);
    for (std::size_t i = 0; i < grid.num_points; ++i)
    {
        const double theta = grid.theta(i);
        const ChannelMatrix H = model.at(theta);
        for (std::size_t s = 0; s < all_schemes.size(); ++s)
            out[s].objective_curve.push_back({theta, evaluate_or_nan(H, all_schemes[s], budget)});
    }
    for (auto &d : out)
        select_optimum(d);
    return out;
}

void write_objective_curve(const RotationDecision &decision, const std::filesystem::path &path)
{
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << "theta_degrees,predicted_se\n" << std::setprecision(17);
    for (const auto &pt : decision.objective_curve)
        os << rad_to_deg(pt.theta) << ',' << pt.predicted_se << '\n';
    os.flush();
    if (!os)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace rula
