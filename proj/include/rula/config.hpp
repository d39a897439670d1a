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

#include <filesystem>
#include <string>
#include <string_view>

#include "rula/params.hpp"

namespace rula
{

// Flat JSON object. Keys are the SimParams field names; the nested scattering and grid fields
// appear under their own names (num_clusters, cluster_spread_deg, asd_deg, grid_points) and the
// optional AP location as ap_x / ap_y. Missing keys keep the value already in `params`.
// Unknown keys and type mismatches throw ConfigError.
void apply_config_text(SimParams &params, std::string_view json_text);

// Reads `path` and applies it on top of the defaults. Throws IoError if unreadable.
SimParams load_config(const std::filesystem::path &path);

// Inverse of apply_config_text: every key, pretty-printed.
std::string config_to_json(const SimParams &params);

} // namespace rula
