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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "rula/errors.hpp"
#include "rula/experiment.hpp"
#include "rula/rotation.hpp"

using namespace rula;

namespace
{

SimParams origin_params(std::size_t M, std::size_t K)
{
    SimParams p;
    p.m_antennas = M;
    p.k_users = K;
    p.ap_position = Position2D{0.0, 0.0};
    return p;
}

// Large-scale gain written out from the free-space anchor, independent of the library helpers.
double beta_oracle(double horizontal, const SimParams &p)
{
    const double d = std::hypot(horizontal, p.ap_height - p.device_height);
    const double lambda = 299792458.0 / p.carrier_freq;
    const double l0 = 20.0 * std::log10(4.0 * pi * p.ref_distance / lambda);
    return std::pow(10.0, (-l0 - 10.0 * p.path_loss_exponent * std::log10(d / p.ref_distance)) / 10.0);
}

double curve_max(const RotationDecision &d)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto &c : d.objective_curve)
        m = std::max(m, c.predicted_se);
    return m;
}

} // namespace

TEST_CASE("grid points")
{
    RotationGrid g{0.0, pi, 5};
    CHECK(g.theta(0) == 0.0);
    CHECK(g.theta(4) == pi);
    CHECK(g.theta(2) == doctest::Approx(pi / 2.0));

    // an n-point grid sits exactly inside the (2n - 1)-point grid
    RotationGrid coarse{0.0, pi, 1801};
    RotationGrid fine{0.0, pi, 3601};
    for (std::size_t i = 0; i < coarse.num_points; ++i)
        REQUIRE(coarse.theta(i) == fine.theta(2 * i));

    CHECK_THROWS_AS((RotationGrid{0.0, pi, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((RotationGrid{0.0, 4.0, 10}.validate()), ConfigError);
}

TEST_CASE("pseudo channels are pure LoS with the estimated path gains")
{
    const auto p = origin_params(16, 3);
    std::vector<Position2D> est{{10.0, 0.0}, {-3.0, 4.0}, {20.0, -21.0}};
    for (double theta : {0.0, 0.8, pi})
    {
        const auto H = pseudo_channels(est, theta, p);
        CHECK(H.kind == ChannelKind::Pseudo);
        for (int k = 0; k < 3; ++k)
        {
            const double r = std::hypot(est[k].x, est[k].y);
            CHECK(H.matrix.col(k).squaredNorm() == doctest::Approx(16.0 * beta_oracle(r, p)).epsilon(1e-12));
            for (int m = 0; m < 16; ++m)
                CHECK(std::abs(H.matrix(m, k)) == doctest::Approx(std::sqrt(beta_oracle(r, p))).epsilon(1e-12));
        }
    }
}

TEST_CASE("single user with MRC has a flat objective")
{
    auto p = origin_params(16, 1);
    p.grid.num_points = 361;
    std::vector<Position2D> est{{13.0, 27.0}};
    const auto d = optimize_rotation(est, CombinerScheme::MRC, p, p.grid);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &c : d.objective_curve)
    {
        lo = std::min(lo, c.predicted_se);
        hi = std::max(hi, c.predicted_se);
    }
    CHECK(hi - lo < 1e-12);
    CHECK(d.theta_star == 0.0);
    const double rho = p.link_budget().snr();
    const double expect = std::log2(1.0 + rho * 16.0 * beta_oracle(std::hypot(13.0, 27.0), p));
    CHECK(d.predicted_mean_se == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("orthogonal steering pair is interference free under ZF")
{
    const std::size_t M = 16;
    auto p = origin_params(M, 2);
    const double r = 20.0;
    const double phi1 = std::asin(0.5);
    const double phi2 = std::asin(0.5 - 2.0 / static_cast<double>(M));
    std::vector<Position2D> est{{r * std::cos(phi1), r * std::sin(phi1)}, {r * std::cos(phi2), r * std::sin(phi2)}};

    const auto H = pseudo_channels(est, 0.0, p);
    CHECK(std::abs(H.matrix.col(0).dot(H.matrix.col(1))) < 1e-12 * H.matrix.squaredNorm());

    const double rho = p.link_budget().snr();
    const double expect = std::log2(1.0 + rho * M * beta_oracle(r, p));
    for (auto s : all_schemes)
    {
        if (s == CombinerScheme::MMSE)
            continue;
        CHECK(objective(0.0, est, s, p) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("objective repeats when every device moves to the opposite side")
{
    auto p = origin_params(8, 3);
    std::vector<Position2D> est{{10.0, 3.0}, {-7.0, 12.0}, {4.0, -9.0}};
    std::vector<Position2D> mirrored;
    for (const auto &e : est)
        mirrored.push_back({-e.x, -e.y});
    for (auto s : all_schemes)
        for (double theta : {0.0, 0.4, 1.3, 2.2, pi})
            CHECK(objective(theta, mirrored, s, p) == doctest::Approx(objective(theta, est, s, p)).epsilon(1e-9));
}

TEST_CASE("optimizer is deterministic and returns a grid argmax")
{
    SimParams p;
    p.grid.num_points = 721;
    const auto pl = draw_placement(p, network_seed(p, 0, 3));
    for (auto s : all_schemes)
    {
        const auto a = optimize_rotation(pl.estimated_positions, s, p, p.grid);
        const auto b = optimize_rotation(pl.estimated_positions, s, p, p.grid);
        CHECK(a.theta_star == b.theta_star);
        CHECK(a.predicted_mean_se == b.predicted_mean_se);
        REQUIRE(a.objective_curve.size() == 721);
        CHECK(a.predicted_mean_se == curve_max(a));
        CHECK(a.theta_star >= 0.0);
        CHECK(a.theta_star <= pi);
        // the reported value is the objective at the chosen rotation
        CHECK(objective(a.theta_star, pl.estimated_positions, s, p) == a.predicted_mean_se);
    }
}

TEST_CASE("joint search agrees with per-scheme search")
{
    SimParams p;
    p.grid.num_points = 361;
    const auto pl = draw_placement(p, network_seed(p, 0, 8));
    const auto all = optimize_rotation_all(pl.estimated_positions, p, p.grid);
    for (std::size_t i = 0; i < all_schemes.size(); ++i)
    {
        const auto one = optimize_rotation(pl.estimated_positions, all_schemes[i], p, p.grid);
        CHECK(all[i].theta_star == one.theta_star);
        CHECK(all[i].predicted_mean_se == one.predicted_mean_se);
    }
}

TEST_CASE("grid refinement")
{
    SimParams p;
    for (std::size_t r = 0; r < 5; ++r)
    {
        const auto pl = draw_placement(p, network_seed(p, 0, r));
        for (auto s : {CombinerScheme::ZF, CombinerScheme::MMSE})
        {
            const auto a = optimize_rotation(pl.estimated_positions, s, p, RotationGrid{0.0, pi, 181});
            const auto b = optimize_rotation(pl.estimated_positions, s, p, RotationGrid{0.0, pi, 361});
            CHECK(b.predicted_mean_se >= a.predicted_mean_se);

            const auto c = optimize_rotation(pl.estimated_positions, s, p, RotationGrid{0.0, pi, 1801});
            const auto f = optimize_rotation(pl.estimated_positions, s, p, RotationGrid{0.0, pi, 18001});
            CHECK(f.predicted_mean_se >= c.predicted_mean_se);
            CHECK(f.predicted_mean_se - c.predicted_mean_se <= 1e-4);
        }
    }
}

TEST_CASE("ties go to the smallest rotation and NaN points are skipped")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    RotationDecision d;
    d.objective_curve = {{0.0, nan}, {0.5, 2.0}, {1.0, 3.0}, {1.5, 3.0 * (1.0 + 1e-14)}, {2.0, 1.0}};
    select_optimum(d);
    CHECK(d.theta_star == 1.0);

    RotationDecision none;
    none.objective_curve = {{0.0, nan}, {1.0, nan}};
    CHECK_THROWS_AS(select_optimum(none), OptimizationError);
}

TEST_CASE("objective curve file")
{
    auto p = origin_params(4, 2);
    p.grid.num_points = 11;
    std::vector<Position2D> est{{10.0, 3.0}, {-7.0, 12.0}};
    const auto d = optimize_rotation(est, CombinerScheme::ZF, p, p.grid);
    const auto path = std::filesystem::temp_directory_path() / "rula_curve_test.csv";
    write_objective_curve(d, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "theta_degrees,predicted_se");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 11);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(write_objective_curve(d, "/nonexistent-dir/curve.csv"), IoError);
}
