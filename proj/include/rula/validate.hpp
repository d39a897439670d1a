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

#include <cstdint>
#include <string>
#include <vector>

namespace rula
{

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runtime invariant suite behind `rula_sim validate`:
//   covariance structure (Hermitian, PSD, diagonal, trace), steering-vector norm,
//   SINR scale invariance, ZF zero interference, MMSE dominance,
//   Rician first/second moments and norm (1e5 draws), CSI error variance (1e6 draws)
//   and independence from the channel.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 1);

} // namespace rula
