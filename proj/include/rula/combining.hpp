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
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rula/channel.hpp"

namespace rula
{

enum class CombinerScheme
{
    MRC,
    ZF,
    MMSE,
};

inline constexpr std::array<CombinerScheme, 3> all_schemes{CombinerScheme::MRC, CombinerScheme::ZF,
                                                           CombinerScheme::MMSE};

std::string_view to_string(CombinerScheme scheme);

// Accepts "MRC", "ZF", "MMSE" (case-insensitive). Throws ConfigError otherwise.
CombinerScheme parse_scheme(std::string_view text);

struct LinkBudget
{
    double tx_power = 0.1;        // W
    double noise_power = 1.0e-13; // W

    double snr() const { return tx_power / noise_power; }

    void validate() const;
};

struct SeReport
{
    std::vector<double> per_user_sinr;
    std::vector<double> per_user_se; // bits/s/Hz
    double mean_se = 0.0;
};

// ZF is rejected when the K x K Gram matrix condition number exceeds this.
inline constexpr double max_gram_condition = 1e12;

// Receive combining matrix V (M x K):
//   MRC  V = H
//   ZF   V = H (H^H H)^-1          via a Hermitian solve against the Gram matrix
//   MMSE V = (H H^H + s2/p I)^-1 H    via a Hermitian solve in the smaller of the M x M and K x K forms
// Throws CombiningError for a singular or ill-conditioned system.
Eigen::MatrixXcd compute_combiner(const ChannelMatrix &estimated, CombinerScheme scheme, const LinkBudget &budget);

// Uplink SINR of `user` for combiner V applied to the true channels.
double sinr(const Eigen::MatrixXcd &combiner, const ChannelMatrix &true_channels, std::size_t user,
            const LinkBudget &budget);

// All users at once.
std::vector<double> sinr_all(const Eigen::MatrixXcd &combiner, const ChannelMatrix &true_channels,
                             const LinkBudget &budget);

SeReport se_from_sinr(std::span<const double> sinrs);

} // namespace rula
