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

#include "rula/combining.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "rula/errors.hpp"

namespace rula
{

std::string_view to_string(CombinerScheme scheme)
{
    switch (scheme)
    {
    case CombinerScheme::MRC:
        return "MRC";
    case CombinerScheme::ZF:
        return "ZF";
    case CombinerScheme::MMSE:
        return "MMSE";
    }
    return "?";
}

CombinerScheme parse_scheme(std::string_view text)
{
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    for (auto s : all_schemes)
        if (up == to_string(s))
            return s;
    throw ConfigError("unknown combining scheme '" + std::string(text) + "' (expected MRC, ZF or MMSE)");
}

void LinkBudget::validate() const
{
    if (!(tx_power > 0.0) || !(noise_power > 0.0) || !std::isfinite(tx_power) || !std::isfinite(noise_power))
        throw ConfigError("link budget: transmit and noise power must be positive and finite");
}

namespace
{

Eigen::MatrixXcd zero_forcing(const Eigen::MatrixXcd &H)
{
    if (H.rows() < H.cols())
        throw CombiningError("ZF requires at least as many antennas as users");

    const Eigen::MatrixXcd gram = H.adjoint() * H;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw CombiningError("ZF: Gram eigenvalue computation failed");
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > max_gram_condition)
        throw CombiningError("ZF: Gram matrix is singular or ill-conditioned");

    // V^H = G^-1 H^H
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw CombiningError("ZF: Gram matrix factorization failed");
    return llt.solve(H.adjoint()).adjoint();
}

Eigen::MatrixXcd mmse(const Eigen::MatrixXcd &H, const LinkBudget &budget)
{
    const double reg = budget.noise_power / budget.tx_power;
    // (H H^H + r I)^-1 H == H (H^H H + r I)^-1. Solve in the smaller dimension: with M > K the
    // M x M system has M - K eigenvalues equal to r and is badly conditioned when r is tiny.
    if (H.cols() <= H.rows())
    {
        Eigen::MatrixXcd A = H.adjoint() * H;
        A.diagonal().array() += reg;
        Eigen::LLT<Eigen::MatrixXcd> llt(A);
        if (llt.info() != Eigen::Success)
            throw CombiningError("MMSE: regularized matrix factorization failed");
        return llt.solve(H.adjoint()).adjoint();
    }
    Eigen::MatrixXcd A = H * H.adjoint();
    A.diagonal().array() += reg;
    Eigen::LLT<Eigen::MatrixXcd> llt(A);
    if (llt.info() != Eigen::Success)
        throw CombiningError("MMSE: regularized matrix factorization failed");
    return llt.solve(H);
}

void check_dims(const Eigen::MatrixXcd &combiner, const ChannelMatrix &channels)
{
    if (combiner.rows() != channels.matrix.rows() || combiner.cols() != channels.matrix.cols())
        throw ConfigError("sinr: combiner and channel dimensions differ");
}

} // namespace

Eigen::MatrixXcd compute_combiner(const ChannelMatrix &estimated, CombinerScheme scheme, const LinkBudget &budget)
{
    budget.validate();
    const auto &H = estimated.matrix;
    if (H.size() == 0)
        throw ConfigError("compute_combiner: empty channel matrix");
    if (!H.allFinite())
        throw CombiningError("compute_combiner: channel matrix has non-finite entries");

    switch (scheme)
    {
    case CombinerScheme::MRC:
        return H;
    case CombinerScheme::ZF:
        return zero_forcing(H);
    case CombinerScheme::MMSE:
        return mmse(H, budget);
    }
    throw ConfigError("compute_combiner: unknown scheme");
}

double sinr(const Eigen::MatrixXcd &combiner, const ChannelMatrix &true_channels, std::size_t user,
            const LinkBudget &budget)
{
    check_dims(combiner, true_channels);
    const auto k = static_cast<Eigen::Index>(user);
    if (k >= combiner.cols())
        throw ConfigError("sinr: user index out of range");

    const auto v = combiner.col(k);
    const double v_norm_sq = v.squaredNorm();
    if (!(v_norm_sq > 0.0))
        throw CombiningError("sinr: zero combining vector for user " + std::to_string(user));

    const Eigen::RowVectorXcd g = v.adjoint() * true_channels.matrix;
    const double signal = std::norm(g(k));
    double interference = 0.0;
    for (Eigen::Index j = 0; j < g.size(); ++j)
        if (j != k)
            interference += std::norm(g(j));
    return budget.tx_power * signal / (budget.tx_power * interference + budget.noise_power * v_norm_sq);
}

std::vector<double> sinr_all(const Eigen::MatrixXcd &combiner, const ChannelMatrix &true_channels,
                             const LinkBudget &budget)
{
    check_dims(combiner, true_channels);
    const Eigen::MatrixXcd g = combiner.adjoint() * true_channels.matrix; // row k: v_k^H h_j
    const Eigen::VectorXd v_norm_sq = combiner.colwise().squaredNorm().transpose();

    std::vector<double> out(static_cast<std::size_t>(combiner.cols()));
    for (Eigen::Index k = 0; k < combiner.cols(); ++k)
    {
        if (!(v_norm_sq(k) > 0.0))
            throw CombiningError("sinr: zero combining vector for user " + std::to_string(k));
        double signal = 0.0;
        double interference = 0.0;
        for (Eigen::Index j = 0; j < g.cols(); ++j)
        {
            const double a = std::norm(g(k, j));
            if (j == k)
                signal = a;
            else
                interference += a;
        }
        out[static_cast<std::size_t>(k)] =
            budget.tx_power * signal / (budget.tx_power * interference + budget.noise_power * v_norm_sq(k));
    }
    return out;
}

SeReport se_from_sinr(std::span<const double> sinrs)
{
    SeReport r;
    r.per_user_sinr.assign(sinrs.begin(), sinrs.end());
    r.per_user_se.reserve(sinrs.size());
    double sum = 0.0;
    for (double g : sinrs)
    {
        if (!(g >= 0.0))
            throw ConfigError("se_from_sinr: SINR must be nonnegative");
        const double se = std::log2(1.0 + g);
        r.per_user_se.push_back(se);
        sum += se;
    }
    r.mean_se = sinrs.empty() ? 0.0 : sum / static_cast<double>(sinrs.size());
    return r;
}

} // namespace rula
