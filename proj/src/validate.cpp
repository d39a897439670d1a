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

#include "rula/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rula/channel.hpp"
#include "rula/combining.hpp"
#include "rula/geometry.hpp"
#include "rula/params.hpp"
#include "rula/random.hpp"

namespace rula
{

namespace
{

using cd = std::complex<double>;

struct Check
{
    explicit Check(std::string n) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    std::ostringstream detail;

    void fail_if(bool bad, const std::string &why)
    {
        if (bad && passed)
        {
            passed = false;
            detail << why;
        }
    }

    CheckResult result()
    {
        return {name, passed, detail.str()};
    }
};

SpatialCovariance random_covariance(RandomStream &rng, double beta, std::size_t M)
{
    const ScatteringConfig cfg; // six clusters, +-40 deg, 5 deg ASD
    const double alpha = pi * (2.0 * uniform01(rng) - 1.0);
    const auto psi = sample_cluster_angles(alpha, cfg, rng);
    return local_scattering_covariance(beta, psi, deg_to_rad(cfg.asd_deg), M);
}

// Columns scaled by realistic path gains.
ChannelMatrix random_channels(RandomStream &rng, Eigen::Index M, Eigen::Index K)
{
    ChannelMatrix H{standard_complex_gaussian(M, K, rng), ChannelKind::True};
    for (Eigen::Index k = 0; k < K; ++k)
        H.matrix.col(k) *= std::sqrt(std::pow(10.0, -9.0 + 2.0 * uniform01(rng)));
    return H;
}

LinkBudget table_budget()
{
    SimParams p;
    return p.link_budget();
}

CheckResult covariance_structure(RandomStream &rng)
{
    Check c{"covariance: Hermitian, PSD, diagonal = beta, trace = M beta"};
    for (int trial = 0; trial < 30; ++trial)
    {
        const std::size_t M = std::array<std::size_t, 3>{4, 8, 16}[trial % 3];
        const double beta = std::pow(10.0, -9.0 * uniform01(rng));
        const auto R = random_covariance(rng, beta, M).matrix;

        const double herm = (R - R.adjoint()).cwiseAbs().maxCoeff();
        c.fail_if(herm > 1e-10 * beta, "Hermitian residual " + std::to_string(herm / beta));

        const double diag = (R.diagonal().array() - cd(beta, 0.0)).abs().maxCoeff();
        c.fail_if(diag > 1e-10 * beta, "diagonal deviation " + std::to_string(diag / beta));

        const double trace = R.diagonal().real().sum();
        c.fail_if(std::abs(trace - static_cast<double>(M) * beta) > 1e-8 * static_cast<double>(M) * beta,
                  "trace mismatch");

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(R, Eigen::EigenvaluesOnly);
        c.fail_if(eig.eigenvalues().minCoeff() < -1e-8 * trace,
                  "min eigenvalue " + std::to_string(eig.eigenvalues().minCoeff() / trace) + " x trace");
    }
    return c.result();
}

CheckResult steering_norm(RandomStream &rng)
{
    Check c{"steering vector: squared norm = M beta"};
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t M = 1 + static_cast<std::size_t>(uniform01(rng) * 32);
        const double beta = std::pow(10.0, -10.0 * uniform01(rng));
        const double phi = 2.0 * pi * uniform01(rng) - pi;
        const double n2 = los_steering(beta, phi, M).squaredNorm();
        const double want = static_cast<double>(M) * beta;
        c.fail_if(std::abs(n2 - want) > 1e-12 * want, "norm mismatch for M=" + std::to_string(M));
    }
    return c.result();
}

CheckResult sinr_scale_invariance(RandomStream &rng)
{
    Check c{"SINR: invariant to combiner column scaling"};
    const LinkBudget budget = table_budget();
    const cd scale = std::polar(7.0, pi / 3.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto H = random_channels(rng, 8, 4);
        for (auto scheme : all_schemes)
        {
            const auto V = compute_combiner(H, scheme, budget);
            for (std::size_t k = 0; k < 4; ++k)
            {
                Eigen::MatrixXcd W = V;
                W.col(static_cast<Eigen::Index>(k)) *= scale;
                const double a = sinr(V, H, k, budget);
                const double b = sinr(W, H, k, budget);
                c.fail_if(std::abs(a - b) > 1e-12 * std::abs(a), "scheme " + std::string(to_string(scheme)));
            }
        }
    }
    return c.result();
}

CheckResult zf_zero_interference(RandomStream &rng)
{
    Check c{"ZF: zero interference with perfect CSI"};
    const LinkBudget budget = table_budget();
    for (int trial = 0; trial < 50; ++trial)
    {
        const Eigen::Index M = 4 + static_cast<Eigen::Index>(uniform01(rng) * 13);
        const Eigen::Index K = 1 + static_cast<Eigen::Index>(uniform01(rng) * static_cast<double>(M));
        const auto H = random_channels(rng, M, K);
        const auto V = compute_combiner(H, CombinerScheme::ZF, budget);
        const Eigen::MatrixXcd G = V.adjoint() * H.matrix;
        for (Eigen::Index k = 0; k < K; ++k)
        {
            double interference = 0.0;
            for (Eigen::Index j = 0; j < K; ++j)
                if (j != k)
                    interference += budget.tx_power * std::norm(G(k, j));
            c.fail_if(interference >= 1e-16 * budget.tx_power * H.matrix.col(k).squaredNorm(),
                      "residual interference for M=" + std::to_string(M) + " K=" + std::to_string(K));
        }
    }
    return c.result();
}

CheckResult mmse_dominance(RandomStream &rng)
{
    Check c{"MMSE: mean SE >= ZF and MRC with perfect CSI"};
    const LinkBudget budget = table_budget();
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto H = random_channels(rng, 16, 1 + static_cast<Eigen::Index>(uniform01(rng) * 16));
        auto mean_se = [&](CombinerScheme s) {
            return se_from_sinr(sinr_all(compute_combiner(H, s, budget), H, budget)).mean_se;
        };
        const double mmse = mean_se(CombinerScheme::MMSE);
        c.fail_if(mmse < mean_se(CombinerScheme::ZF) - 1e-9, "MMSE below ZF");
        c.fail_if(mmse < mean_se(CombinerScheme::MRC) - 1e-9, "MMSE below MRC");
    }
    return c.result();
}

// First and second moments of the Rician sampler over 1e5 draws.
void rician_moments(RandomStream &rng, Check &mean_check, Check &cov_check, Check &norm_check)
{
    constexpr std::size_t M = 8;
    constexpr int draws = 100000;
    const double beta = 1.0;
    const auto R = random_covariance(rng, beta, M);
    const auto L = factor_covariance(R);
    const auto h_los = los_steering(beta, 0.4, M);

    for (double kappa : {0.0, 1.0, 10.0})
    {
        const Eigen::VectorXcd mu = std::sqrt(kappa / (1.0 + kappa)) * h_los;
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(M);
        Eigen::MatrixXcd scatter = Eigen::MatrixXcd::Zero(M, M);
        double norm_sum = 0.0;
        for (int i = 0; i < draws; ++i)
        {
            const Eigen::VectorXcd h = sample_rician(h_los, L, kappa, rng);
            sum += h;
            const Eigen::VectorXcd d = h - mu;
            scatter.noalias() += d * d.adjoint();
            norm_sum += h.squaredNorm();
        }
        const Eigen::VectorXcd mean = sum / static_cast<double>(draws);
        for (std::size_t m = 0; m < M; ++m)
        {
            const auto mi = static_cast<Eigen::Index>(m);
            const double sigma = std::sqrt(R.matrix(mi, mi).real() / ((1.0 + kappa) * draws));
            mean_check.fail_if(std::abs(mean(mi) - mu(mi)) > 3.0 * sigma,
                               "kappa=" + std::to_string(kappa) + " entry " + std::to_string(m));
        }

        const Eigen::MatrixXcd cov = scatter / static_cast<double>(draws);
        const Eigen::MatrixXcd want = R.matrix / (1.0 + kappa);
        const double err = (cov - want).cwiseAbs().maxCoeff();
        cov_check.fail_if(err > 0.05 * beta / (1.0 + kappa),
                          "kappa=" + std::to_string(kappa) + " max deviation " +
                              std::to_string(err / (beta / (1.0 + kappa))) + " of the diagonal");

        const double mean_norm = norm_sum / draws;
        norm_check.fail_if(std::abs(mean_norm - M * beta) > 0.02 * M * beta, "kappa=" + std::to_string(kappa));
    }
}

void csi_error_checks(RandomStream &rng, Check &var_check, Check &indep_check)
{
    constexpr Eigen::Index M = 16;
    constexpr std::size_t K = 10;
    constexpr int matrices = 6250; // 1e6 entries
    const LinkBudget budget = table_budget();
    const double rho = budget.snr();
    const double want = 1.0 / (static_cast<double>(K) * rho);

    double sq = 0.0;
    cd cross = 0.0;
    double h_sq = 0.0;
    for (int i = 0; i < matrices; ++i)
    {
        const auto H = random_channels(rng, M, static_cast<Eigen::Index>(K));
        const auto Hhat = corrupt_csi(H, K, rho, rng);
        const Eigen::MatrixXcd E = Hhat.matrix - H.matrix;
        sq += E.squaredNorm();
        // Normalize the channel entries so every column contributes equally.
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(K); ++k)
        {
            const Eigen::VectorXcd h = H.matrix.col(k) / H.matrix.col(k).norm() * std::sqrt(double(M));
            cross += h.dot(E.col(k));
            h_sq += h.squaredNorm();
        }
    }
    const double n = static_cast<double>(matrices) * M * K;
    const double var = sq / n;
    var_check.fail_if(std::abs(var - want) > 0.01 * want,
                      "sample variance " + std::to_string(var / want) + " x 1/(K rho)");

    const double corr = std::abs(cross) / std::sqrt(h_sq * sq);
    indep_check.fail_if(corr > 3.0 / std::sqrt(n), "correlation " + std::to_string(corr));
}

} // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed)
{
    std::vector<CheckResult> out;
    auto rng = make_stream(seed, StreamTag::Validation);

    out.push_back(covariance_structure(rng));
    out.push_back(steering_norm(rng));
    out.push_back(sinr_scale_invariance(rng));
    out.push_back(zf_zero_interference(rng));
    out.push_back(mmse_dominance(rng));

    Check mean{"Rician: sample mean within 3 sigma (1e5 draws)"};
    Check cov{"Rician: sample covariance within 5% of R/(1+kappa) (1e5 draws)"};
    Check norm{"Rician: E||h||^2 = M beta within 2%"};
    rician_moments(rng, mean, cov, norm);
    out.push_back(mean.result());
    out.push_back(cov.result());
    out.push_back(norm.result());

    Check var{"CSI error: variance within 1% of 1/(K rho) (1e6 draws)"};
    Check indep{"CSI error: uncorrelated with the channel"};
    csi_error_checks(rng, var, indep);
    out.push_back(var.result());
    out.push_back(indep.result());
    return out;
}

} // namespace rula
