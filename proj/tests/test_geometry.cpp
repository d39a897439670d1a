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

#include <doctest.h>

#include "rula/errors.hpp"
#include "rula/geometry.hpp"

using namespace rula;

namespace
{

Placement single(Position2D dev)
{
    Placement p;
    p.true_positions = {dev};
    p.estimated_positions = {dev};
    p.ap_position = {0.0, 0.0};
    p.ap_height = 12.0;
    p.device_height = 2.0;
    return p;
}

} // namespace

TEST_CASE("placement is uniform over the square")
{
    auto rng = make_stream(11, StreamTag::Placement);
    const auto pts = place_devices(100000, 100.0, rng);
    double sx = 0.0, sy = 0.0;
    for (const auto &p : pts)
    {
        REQUIRE(p.x >= 0.0);
        REQUIRE(p.x <= 100.0);
        REQUIRE(p.y >= 0.0);
        REQUIRE(p.y <= 100.0);
        sx += p.x;
        sy += p.y;
    }
    CHECK(std::abs(sx / pts.size() - 50.0) < 1.0);
    CHECK(std::abs(sy / pts.size() - 50.0) < 1.0);
}

TEST_CASE("positioning error has the requested variance per axis")
{
    auto rng = make_stream(12, StreamTag::PositionError);
    const int n = 100000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto e = apply_positioning_error({0.0, 0.0}, 1.0, rng);
        acc += e.x * e.x + e.y * e.y;
    }
    CHECK(std::abs(acc / n - 2.0) < 0.05);

    // 20 dB re 1 m^2
    auto rng2 = make_stream(13, StreamTag::PositionError);
    const double var = std::pow(10.0, 20.0 / 10.0);
    CHECK(var == doctest::Approx(100.0));
    double sxx = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto e = apply_positioning_error({5.0, 5.0}, var, rng2);
        sxx += (e.x - 5.0) * (e.x - 5.0);
    }
    CHECK(sxx / n == doctest::Approx(100.0).epsilon(0.02));
}

TEST_CASE("zero positioning variance still consumes two draws")
{
    auto a = make_stream(3, StreamTag::PositionError);
    auto b = make_stream(3, StreamTag::PositionError);
    const auto p = apply_positioning_error({1.0, 2.0}, 0.0, a);
    CHECK(p == Position2D{1.0, 2.0});
    standard_normal(b);
    standard_normal(b);
    CHECK(a() == b());
}

TEST_CASE("device on the reference axis")
{
    auto p = single({10.0, 0.0});
    p.ap_height = 2.0;
    const auto g = compute_geometry(p, false, 0.0);
    CHECK(g.distances_3d[0] == doctest::Approx(10.0));
    CHECK(g.global_azimuths[0] == doctest::Approx(0.0));
    CHECK(g.effective_azimuths[0] == doctest::Approx(0.0));
}

TEST_CASE("device directly below the AP")
{
    auto p = single({0.0, 0.0});
    p.device_height = 1.5;
    const auto g = compute_geometry(p, false, 0.0);
    CHECK(g.distances_3d[0] == doctest::Approx(10.5));
    CHECK(g.global_azimuths[0] == 0.0);
}

TEST_CASE("rotation by pi/2 cancels an azimuth of pi/2")
{
    const auto g = compute_geometry(single({0.0, 7.0}), false, pi / 2.0);
    CHECK(g.global_azimuths[0] == doctest::Approx(pi / 2.0));
    CHECK(g.effective_azimuths[0] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("effective azimuth is the wrapped difference for any rotation")
{
    auto rng = make_stream(5, StreamTag::Placement);
    Placement p;
    p.true_positions = place_devices(50, 100.0, rng);
    p.estimated_positions = p.true_positions;
    p.ap_position = {50.0, 50.0};
    for (double theta : {0.0, 0.3, 1.0, pi / 2.0, 2.9, pi})
    {
        const auto g = compute_geometry(p, false, theta);
        for (std::size_t k = 0; k < p.size(); ++k)
        {
            const double diff = g.global_azimuths[k] - theta - g.effective_azimuths[k];
            // equal modulo 2 pi
            CHECK(std::abs(std::remainder(diff, 2.0 * pi)) < 1e-12);
            CHECK(g.effective_azimuths[k] > -pi);
            CHECK(g.effective_azimuths[k] <= pi);
            CHECK(g.distances_3d[k] >= std::abs(p.ap_height - p.device_height));
        }
    }
}

TEST_CASE("estimated and true positions are kept apart")
{
    Placement p = single({10.0, 0.0});
    p.estimated_positions = {{0.0, 10.0}};
    const auto gt = compute_geometry(p, false, 0.0);
    const auto ge = compute_geometry(p, true, 0.0);
    CHECK(gt.global_azimuths[0] == doctest::Approx(0.0));
    CHECK(ge.global_azimuths[0] == doctest::Approx(pi / 2.0));
}

TEST_CASE("wrap_angle maps onto (-pi, pi]")
{
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));
    CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("geometry rejects bad input")
{
    CHECK_THROWS_AS(compute_geometry(single({1.0, 1.0}), false, -0.1), ConfigError);
    CHECK_THROWS_AS(compute_geometry(single({1.0, 1.0}), false, pi + 0.1), ConfigError);

    Placement co = single({0.0, 0.0});
    co.device_height = co.ap_height;
    CHECK_THROWS_AS(compute_geometry(co, false, 0.0), GeometryError);

    Placement empty;
    CHECK_THROWS_AS(empty.validate(), ConfigError);

    Placement uneven = single({1.0, 1.0});
    uneven.estimated_positions.push_back({2.0, 2.0});
    CHECK_THROWS_AS(uneven.validate(), ConfigError);
}
