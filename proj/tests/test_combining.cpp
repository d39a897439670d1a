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
#include <complex>
#include <vector>

#include <doctest.h>

#include "rula/combining.hpp"
#include "rula/errors.hpp"
#include "rula/random.hpp"

using namespace rula;
using cd = std::complex<double>;

namespace
{

ChannelMatrix random_channels(int M, int K, std::uint64_t seed, double scale = 1.0)
{
    auto rng = make_stream(seed, StreamTag::Validation);
    return {scale * standard_complex_gaussian(M, K, rng), ChannelKind::True};
}

double sinr_oracle(const Eigen::VectorXcd &v, const Eigen::MatrixXcd &H, int k, double p, double s2)
{
    const double sig = p * std::norm(v.dot(H.col(k)));
    double intf = 0.0;
    for (int j = 0; j < H.cols(); ++j)
        if (j != k)
            intf += p * std::norm(v.dot(H.col(j)));
    return sig / (intf + s2 * v.squaredNorm());
}

} // namespace

TEST_CASE("scheme names")
{
    CHECK(parse_scheme("zf") == CombinerScheme::ZF);
    CHECK(parse_scheme("MMSE") == CombinerScheme::MMSE);
    CHECK(to_string(CombinerScheme::MRC) == "MRC");
    CHECK_THROWS_AS(parse_scheme("LMMSE"), ConfigError);
}

TEST_CASE("MRC combiner is the channel itself")
{
    const auto H = random_channels(8, 3, 1);
    CHECK(compute_combiner(H, CombinerScheme::MRC, {}) == H.matrix);
}

TEST_CASE("ZF nulls the other users")
{
    const auto H = random_channels(16, 6, 2);
    const auto V = compute_combiner(H, CombinerScheme::ZF, {});
    const Eigen::MatrixXcd G = V.adjoint() * H.matrix;
    CHECK((G - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("MMSE tends to ZF as the regularizer vanishes")
{
    const auto H = random_channels(16, 6, 3);
    const auto Vzf = compute_combiner(H, CombinerScheme::ZF, {});
    const auto Vmm = compute_combiner(H, CombinerScheme::MMSE, {1.0, 1e-12});
    CHECK((Vmm - Vzf).norm() / Vzf.norm() < 1e-3);
}

TEST_CASE("MMSE matches the explicit inverse for tall and wide channels")
{
    for (auto [M, K] : {std::pair{8, 3}, std::pair{3, 8}, std::pair{4, 4}})
    {
        const auto H = random_channels(M, K, 50 + M);
        const LinkBudget lb{0.5, 0.2};
        Eigen::MatrixXcd A = H.matrix * H.matrix.adjoint();
        A += 0.4 * Eigen::MatrixXcd::Identity(M, M);
        const Eigen::MatrixXcd ref = A.inverse() * H.matrix;
        const auto V = compute_combiner(H, CombinerScheme::MMSE, lb);
        CHECK((V - ref).norm() / ref.norm() < 1e-12);
    }
}

TEST_CASE("SINR matches the defining ratio")
{
    const auto H = random_channels(8, 4, 4);
    const LinkBudget lb{0.3, 0.05};
    for (auto s : all_schemes)
    {
        const auto V = compute_combiner(H, s, lb);
        const auto all = sinr_all(V, H, lb);
        for (int k = 0; k < 4; ++k)
        {
            const double ref = sinr_oracle(V.col(k), H.matrix, k, lb.tx_power, lb.noise_power);
            CHECK(sinr(V, H, k, lb) == doctest::Approx(ref).epsilon(1e-12));
            CHECK(all[k] == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("single user reduces to the channel gain")
{
    const auto H = random_channels(8, 1, 5);
    const LinkBudget lb{2.0, 0.5};
    for (auto s : all_schemes)
    {
        const auto V = compute_combiner(H, s, lb);
        CHECK(sinr(V, H, 0, lb) == doctest::Approx(4.0 * H.matrix.squaredNorm()).epsilon(1e-12));
    }
}

TEST_CASE("SINR edge cases")
{
    const auto H = random_channels(2, 1, 6);
    // combiner orthogonal to the channel
    Eigen::MatrixXcd v(2, 1);
    v(0, 0) = std::conj(H.matrix(1, 0));
    v(1, 0) = -std::conj(H.matrix(0, 0));
    CHECK(std::abs(v.col(0).dot(H.matrix.col(0))) < 1e-15);
    CHECK(sinr(v, H, 0, {}) == doctest::Approx(0.0));

    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 1);
    CHECK_THROWS_AS(sinr(zero, H, 0, {}), CombiningError);
    CHECK_THROWS_AS(sinr(v, H, 1, {}), ConfigError);
}

TEST_CASE("SINR ignores per-column scaling of the combiner")
{
    const auto H = random_channels(8, 3, 7);
    const LinkBudget lb{0.1, 0.01};
    const auto V = compute_combiner(H, CombinerScheme::MMSE, lb);
    Eigen::MatrixXcd Vs = V;
    Vs.col(0) *= std::polar(7.0, 1.0);
    Vs.col(2) *= cd(0.0, -3e-4);
    const auto a = sinr_all(V, H, lb);
    const auto b = sinr_all(Vs, H, lb);
    for (int k = 0; k < 3; ++k)
        CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-12));
}

TEST_CASE("joint scaling of power and noise leaves SINR unchanged")
{
    const auto H = random_channels(8, 4, 8);
    const LinkBudget a{0.1, 1e-3};
    const LinkBudget b{0.1 * 37.0, 1e-3 * 37.0};
    for (auto s : all_schemes)
    {
        const auto sa = sinr_all(compute_combiner(H, s, a), H, a);
        const auto sb = sinr_all(compute_combiner(H, s, b), H, b);
        for (int k = 0; k < 4; ++k)
            CHECK(sb[k] == doctest::Approx(sa[k]).epsilon(1e-10));
    }
}

TEST_CASE("MMSE is never worse than ZF or MRC on the same channels")
{
    for (std::uint64_t seed = 20; seed < 40; ++seed)
    {
        const auto H = random_channels(6, 4, seed);
        const LinkBudget lb{1.0, 0.3};
        const auto mm = sinr_all(compute_combiner(H, CombinerScheme::MMSE, lb), H, lb);
        const auto zf = sinr_all(compute_combiner(H, CombinerScheme::ZF, lb), H, lb);
        const auto mr = sinr_all(compute_combiner(H, CombinerScheme::MRC, lb), H, lb);
        for (int k = 0; k < 4; ++k)
        {
            CHECK(mm[k] >= zf[k] * (1.0 - 1e-9));
            CHECK(mm[k] >= mr[k] * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("spectral efficiency")
{
    std::vector<double> g{1.0, 3.0};
    const auto r = se_from_sinr(g);
    CHECK(r.per_user_se[0] == doctest::Approx(1.0));
    CHECK(r.per_user_se[1] == doctest::Approx(2.0));
    CHECK(r.mean_se == doctest::Approx(1.5));

    std::vector<double> one{15.0};
    CHECK(se_from_sinr(one).mean_se == doctest::Approx(4.0));

    std::vector<double> neg{-1.0};
    CHECK_THROWS_AS(se_from_sinr(neg), ConfigError);
}

TEST_CASE("ZF refuses singular systems")
{
    Eigen::MatrixXcd same(4, 2);
    same.col(0).setConstant(cd(1.0, 0.5));
    same.col(1) = same.col(0);
    CHECK_THROWS_AS(compute_combiner({same, ChannelKind::True}, CombinerScheme::ZF, {}), CombiningError);
    CHECK_THROWS_AS(compute_combiner(random_channels(2, 3, 9), CombinerScheme::ZF, {}), CombiningError);
    // MMSE stays defined for the same inputs
    CHECK_NOTHROW(compute_combiner({same, ChannelKind::True}, CombinerScheme::MMSE, {}));

    Eigen::MatrixXcd bad = random_channels(4, 2, 10).matrix;
    bad(1, 1) = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(compute_combiner({bad, ChannelKind::True}, CombinerScheme::MRC, {}), CombiningError);
}
