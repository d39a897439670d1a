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
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rula
{

using RandomStream = std::mt19937_64;

// Purpose tags for substreams. A realization never shares a stream between purposes,
// so e.g. the positioning-error draws do not shift the channel draws.
enum class StreamTag : std::uint64_t
{
    Placement = 1,
    PositionError = 2,
    Clusters = 3,
    Channel = 4,
    ChannelClusters = 5,
    Validation = 6,
};

// Counter-based seed derivation: hashes (seed, c0, c1, ...) with splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> counters);

// Stream for (seed, tag, counters...). Distinct counter tuples give independent streams.
RandomStream make_stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> counters = {});

inline double standard_normal(RandomStream &rng)
{
    std::normal_distribution<double> n01(0.0, 1.0);
    return n01(rng);
}

inline double uniform01(RandomStream &rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Circularly-symmetric complex Gaussian with total variance `variance`
// (real and imaginary parts each variance/2).
inline std::complex<double> complex_normal(RandomStream &rng, double variance = 1.0)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    return {s * re, s * im};
}

} // namespace rula
