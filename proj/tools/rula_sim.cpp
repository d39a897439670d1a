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

// Command-line front end: sweep, objective-curve, validate.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rula/config.hpp"
#include "rula/errors.hpp"
#include "rula/experiment.hpp"
#include "rula/rotation.hpp"
#include "rula/validate.hpp"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numerical = 2;
constexpr int exit_io = 3;

// Flags shared by sweep and objective-curve; each overrides the config file when given.
struct Overrides
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_points;
    std::optional<double> static_theta_deg;
    std::optional<double> side;
    std::optional<std::size_t> antennas;
    std::optional<std::size_t> users;

    void attach(CLI::App *app)
    {
        app->add_option("--config", config, "JSON config file (flat keys named after the parameters)");
        app->add_option("--seed", seed, "master seed");
        app->add_option("--grid-points", grid_points, "rotation grid size over [0, 180] degrees");
        app->add_option("--static-theta-deg", static_theta_deg, "orientation of the static array, degrees");
        app->add_option("--side", side, "side of the square area, m");
        app->add_option("-M,--antennas", antennas, "number of antennas");
        app->add_option("-K,--users", users, "number of devices");
    }

    rula::SimParams resolve() const
    {
        rula::SimParams p = config.empty() ? rula::SimParams{} : rula::load_config(config);
        if (seed)
            p.master_seed = *seed;
        if (grid_points)
            p.grid.num_points = *grid_points;
        if (static_theta_deg)
            p.static_theta = rula::deg_to_rad(*static_theta_deg);
        if (side)
            p.side = *side;
        if (antennas)
            p.m_antennas = *antennas;
        if (users)
            p.k_users = *users;
        return p;
    }
};

int run_sweep_cmd(const Overrides &ov, const std::string &axis_text, const std::vector<double> &values,
                  const std::string &out, const std::optional<std::size_t> &net_reps,
                  const std::optional<std::size_t> &ch_reps, std::size_t threads, const std::string &per_placement)
{
    rula::SimParams p = ov.resolve();
    if (net_reps)
        p.n_network_realizations = *net_reps;
    if (ch_reps)
        p.n_channel_realizations = *ch_reps;
    p.validate();

    const auto axis = rula::parse_axis(axis_text);
    const auto result = rula::run_sweep_detailed(p, axis, values, {threads});
    rula::check_failure_budget(result.records, p);
    rula::emit_results(result.records, out);
    if (!per_placement.empty())
        rula::emit_placements(result.placements, per_placement);

    std::cerr << "wrote " << result.records.size() << " records to " << out << '\n';
    return exit_ok;
}

int run_curve_cmd(const Overrides &ov, const std::string &scheme_text, std::size_t realization,
                  const std::string &out)
{
    rula::SimParams p = ov.resolve();
    p.validate();
    const auto scheme = rula::parse_scheme(scheme_text);
    const auto placement = rula::draw_placement(p, rula::network_seed(p, 0, realization));
    const auto decision = rula::optimize_rotation(placement.estimated_positions, scheme, p, p.grid);
    rula::write_objective_curve(decision, out);

    std::cout << rula::to_string(scheme) << ": theta* = " << rula::rad_to_deg(decision.theta_star)
              << " deg, predicted mean SE = " << decision.predicted_mean_se << " bits/s/Hz\n";
    return exit_ok;
}

int run_validate_cmd(std::uint64_t seed)
{
    bool all = true;
    for (const auto &c : rula::run_invariant_suite(seed))
    {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty())
            std::cout << " (" << c.detail << ')';
        std::cout << '\n';
        all = all && c.passed;
    }
    return all ? exit_ok : exit_numerical;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Uplink spectral-efficiency simulator for an access point with a rotary linear array"};
    app.require_subcommand(1);

    Overrides sweep_ov;
    std::string axis;
    std::vector<double> values;
    std::string out;
    std::optional<std::size_t> net_reps;
    std::optional<std::size_t> ch_reps;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::string per_placement;

    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one parameter");
    sweep_ov.attach(sweep);
    sweep->add_option("--axis", axis, "M, K, kappa_db or sigma_e_sq_db")->required();
    sweep->add_option("--values", values, "comma-separated axis values")->required()->delimiter(',');
    sweep->add_option("--out", out, "output CSV")->required();
    sweep->add_option("--network-reps", net_reps, "network realizations per value");
    sweep->add_option("--channel-reps", ch_reps, "channel realizations per network realization");
    sweep->add_option("--threads", threads, "worker threads (results do not depend on this)");
    sweep->add_option("--per-placement", per_placement, "also write per-placement rows to this CSV");

    Overrides curve_ov;
    std::string scheme = "ZF";
    std::size_t realization = 0;
    std::string curve_out;
    auto *curve = app.add_subcommand("objective-curve", "predicted mean SE versus rotation for one seeded placement");
    curve_ov.attach(curve);
    curve->add_option("--scheme", scheme, "MRC, ZF or MMSE");
    curve->add_option("--realization", realization, "network realization index to draw the placement from");
    curve->add_option("--out", curve_out, "output file (theta_degrees,predicted_se)")->required();

    std::uint64_t validate_seed = 1;
    auto *validate = app.add_subcommand("validate", "run the invariant suite");
    validate->add_option("--seed", validate_seed, "seed for the randomized checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*sweep)
            return run_sweep_cmd(sweep_ov, axis, values, out, net_reps, ch_reps, threads, per_placement);
        if (*curve)
            return run_curve_cmd(curve_ov, scheme, realization, curve_out);
        if (*validate)
            return run_validate_cmd(validate_seed);
    }
    catch (const rula::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const rula::IoError &e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const rula::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const rula::GeometryError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_ok;
}
