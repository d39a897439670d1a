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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rula/combining.hpp"
#include "rula/geometry.hpp"
#include "rula/params.hpp"

namespace rula
{

enum class ArrayMode
{
    Rotary,
    Static,
};

inline constexpr std::array<ArrayMode, 2> all_array_modes{ArrayMode::Rotary, ArrayMode::Static};

std::string_view to_string(ArrayMode mode);
ArrayMode parse_array_mode(std::string_view text);

enum class SweepAxis
{
    Antennas,     // "M"
    Users,        // "K"
    KappaDb,      // "kappa_db"
    SigmaESqDb,   // "sigma_e_sq_db"
};

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

// Copy of `params` with the axis field set to `value`. Throws ConfigError for non-integral M/K.
SimParams apply_axis(const SimParams &params, SweepAxis axis, double value);

struct SweepRecord
{
    std::string axis_name;
    double axis_value = 0.0;
    CombinerScheme scheme = CombinerScheme::MRC;
    ArrayMode array_mode = ArrayMode::Rotary;
    double mean_se = 0.0;         // bits/s/Hz
    double ci95_halfwidth = 0.0;  // across network realizations
    std::size_t n_failed_realizations = 0;

    bool operator==(const SweepRecord &) const = default;
};

// One (scheme, array mode) result for a single placement.
struct ModeOutcome
{
    double theta = 0.0;
    double mean_se = 0.0;          // NaN when every channel realization failed
    std::size_t n_failed = 0;      // failed channel realizations
};

struct SchemeOutcome
{
    ModeOutcome rotary;
    ModeOutcome fixed;             // static array
    double predicted_at_optimum = 0.0;
    double predicted_at_static = 0.0; // NaN if the combiner fails on the pseudo channels there
    bool optimization_failed = false;

    const ModeOutcome &mode(ArrayMode m) const { return m == ArrayMode::Rotary ? rotary : fixed; }
};

struct NetworkOutcome
{
    std::array<SchemeOutcome, 3> schemes; // indexed like all_schemes
    Placement placement;

    const SchemeOutcome &scheme(CombinerScheme s) const { return schemes[static_cast<std::size_t>(s)]; }
};

// Seed of network realization `index` for sweep value `value_index`. With common random numbers
// the value index is ignored, so every axis value sees the same placements.
std::uint64_t network_seed(const SimParams &params, std::size_t value_index, std::size_t index);

// True and estimated positions for one network realization (the first two pipeline steps).
Placement draw_placement(const SimParams &params, std::uint64_t realization_seed);

// Place devices, perturb positions, draw clusters, pick rotations from the estimated positions, then
// average the realized SE over the channel realizations for the rotary and static arrays.
NetworkOutcome run_network_realization(const SimParams &params, std::uint64_t realization_seed);

struct RunOptions
{
    std::size_t threads = 1;
};

// Per-placement detail row.
struct PlacementRecord
{
    std::string axis_name;
    double axis_value = 0.0;
    std::size_t realization = 0;
    CombinerScheme scheme = CombinerScheme::MRC;
    ArrayMode array_mode = ArrayMode::Rotary;
    double theta = 0.0;
    double mean_se = 0.0;
    double predicted_se = 0.0;
    std::size_t n_failed = 0;
};

struct SweepResult
{
    std::vector<SweepRecord> records;
    std::vector<PlacementRecord> placements;
};

// Records for every value x scheme x array mode, in that nesting order.
std::vector<SweepRecord> run_sweep(const SimParams &params, SweepAxis axis, std::span<const double> values,
                                   const RunOptions &options = {});

SweepResult run_sweep_detailed(const SimParams &params, SweepAxis axis, std::span<const double> values,
                               const RunOptions &options = {});

// Throws FailureBudgetError if any record's failed fraction exceeds params.max_failure_fraction.
void check_failure_budget(std::span<const SweepRecord> records, const SimParams &params);

// Mean and normal-approximation 95% half-width. NaN entries are skipped.
struct SampleSummary
{
    double mean = 0.0;
    double ci95_halfwidth = 0.0;
    std::size_t count = 0;
};
SampleSummary summarize(std::span<const double> samples);

// CSV text, header plus one line per record; floats use 17 significant digits.
std::string format_results(std::span<const SweepRecord> records);
void emit_results(std::span<const SweepRecord> records, const std::filesystem::path &path);
std::vector<SweepRecord> parse_results(std::string_view text);
std::vector<SweepRecord> read_results(const std::filesystem::path &path);

void emit_placements(std::span<const PlacementRecord> rows, const std::filesystem::path &path);

} // namespace rula
