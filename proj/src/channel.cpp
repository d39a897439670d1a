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

#include "rula/channel.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "rula/errors.hpp"
#include "rula/geometry.hpp"

namespace rula
{

using cd = std::complex<double>;

double PathLossParams::reference_loss_db() const
{
    return 20.0 * std::log10(4.0 * pi * ref_distance / wavelength());
}

void PathLossParams::validate() const
{
    if (!(carrier_freq > 0.0) || !(ref_distance > 0.0) || !(path_loss_exponent > 0.0))
        throw ConfigError("path loss: carrier frequency, reference distance and exponent must be positive");
}

void ScatteringConfig::validate() const
{
    if (num_clusters < 1)
        throw ConfigError("scattering: num_clusters must be >= 1");
    if (!(cluster_spread_deg >= 0.0) || !(asd_deg >= 0.0))
        throw ConfigError("scattering: spreads must be nonnegative");
}

double path_loss_db(double distance, const PathLossParams &params)
{
    if (!(distance > 0.0))
        throw GeometryError("path loss: distance must be positive");
    return -params.reference_loss_db() - 10.0 * params.path_loss_exponent * std::log10(distance / params.ref_distance);
}

double path_loss_linear(double distance, const PathLossParams &params)
{
    return std::pow(10.0, path_loss_db(distance, params) / 10.0);
}

Eigen::VectorXcd los_steering(double beta, double phi, std::size_t m_antennas, double delta)
{
    if (m_antennas < 1)
        throw ConfigError("los_steering: at least one antenna is required");
    if (!(delta > 0.0))
        throw ConfigError("los_steering: antenna spacing must be positive");
    if (!(beta >= 0.0))
        throw ConfigError("los_steering: power gain must be nonnegative");

    const double amp = std::sqrt(beta);
    const double step = -2.0 * pi * delta * std::sin(phi);
    Eigen::VectorXcd h(static_cast<Eigen::Index>(m_antennas));
    for (Eigen::Index m = 0; m < h.size(); ++m)
        h(m) = std::polar(amp, step * static_cast<double>(m));
    return h;
}

std::vector<double> sample_cluster_angles(double alpha_k, const ScatteringConfig &config, RandomStream &rng)
{
    config.validate();
    const double half = deg_to_rad(config.cluster_spread_deg);
    std::vector<double> psi(config.num_clusters);
    for (auto &p : psi)
        p = alpha_k + half * (2.0 * uniform01(rng) - 1.0);
    return psi;
}

SpatialCovariance local_scattering_covariance(double beta, std::span<const double> cluster_angles_effective,
                                              double asd_rad, std::size_t m_antennas, double delta)
{
    if (cluster_angles_effective.empty())
        throw ConfigError("local_scattering_covariance: at least one cluster angle is required");
    if (!(asd_rad >= 0.0))
        throw ConfigError("local_scattering_covariance: ASD must be nonnegative");
    if (m_antennas < 1)
        throw ConfigError("local_scattering_covariance: at least one antenna is required");

    const auto M = static_cast<Eigen::Index>(m_antennas);
    const double n_clusters = static_cast<double>(cluster_angles_effective.size());

    // Toeplitz: R[s,m] depends on s - m only. Build the first column, then mirror.
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(M);
    for (Eigen::Index dist = 0; dist < M; ++dist)
    {
        const double phase_scale = 2.0 * pi * delta * static_cast<double>(dist);
        cd acc = 0.0;
        for (double psi : cluster_angles_effective)
        {
            const double spread = phase_scale * std::cos(psi);
            acc += std::polar(std::exp(-0.5 * asd_rad * asd_rad * spread * spread), phase_scale * std::sin(psi));
        }
        col(dist) = beta / n_clusters * acc;
    }
    col(0) = cd(beta, 0.0);

    SpatialCovariance out;
    out.matrix.resize(M, M);
    for (Eigen::Index s = 0; s < M; ++s)
        for (Eigen::Index m = 0; m < M; ++m)
            out.matrix(s, m) = s >= m ? col(s - m) : std::conj(col(m - s));
    return out;
}

CovarianceFactor factor_covariance(const SpatialCovariance &cov)
{
    const auto &R = cov.matrix;
    if (R.rows() != R.cols() || R.rows() == 0)
        throw ConfigError("factor_covariance: covariance must be a nonempty square matrix");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(R);
    if (eig.info() != Eigen::Success)
        throw NumericalError("factor_covariance: eigendecomposition did not converge");

    const double trace = R.diagonal().real().sum();
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -1e-6 * std::abs(trace))
        throw NumericalError("factor_covariance: covariance is indefinite (min eigenvalue " +
                             std::to_string(lambda.minCoeff()) + ")");

    const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
    CovarianceFactor f;
    f.matrix = eig.eigenvectors() * root.asDiagonal();
    return f;
}

Eigen::VectorXcd rician_from_draw(const Eigen::VectorXcd &h_los, const CovarianceFactor &factor, double kappa,
                                  const Eigen::VectorXcd &z)
{
    if (!(kappa >= 0.0))
        throw ConfigError("rician: kappa must be nonnegative");
    if (factor.matrix.rows() != h_los.size() || z.size() != factor.matrix.cols())
        throw ConfigError("rician: dimension mismatch between LoS vector, covariance and draw");

    const double los_w = std::sqrt(kappa / (1.0 + kappa));
    const double nlos_w = std::sqrt(1.0 / (1.0 + kappa));
    return los_w * h_los + nlos_w * (factor.matrix * z);
}

Eigen::VectorXcd sample_rician(const Eigen::VectorXcd &h_los, const CovarianceFactor &factor, double kappa,
                               RandomStream &rng)
{
    Eigen::VectorXcd z(factor.matrix.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) = complex_normal(rng);
    return rician_from_draw(h_los, factor, kappa, z);
}

Eigen::VectorXcd sample_rician(const Eigen::VectorXcd &h_los, const SpatialCovariance &cov, double kappa,
                               RandomStream &rng)
{
    if (cov.matrix.rows() != h_los.size())
        throw ConfigError("rician: covariance dimension does not match the LoS vector");
    return sample_rician(h_los, factor_covariance(cov), kappa, rng);
}

double csi_error_variance(std::size_t k_users, double rho)
{
    if (k_users < 1)
        throw ConfigError("csi error: K must be >= 1");
    if (!(rho > 0.0))
        throw ConfigError("csi error: SNR must be positive");
    return 1.0 / (static_cast<double>(k_users) * rho);
}

Eigen::MatrixXcd standard_complex_gaussian(Eigen::Index rows, Eigen::Index cols, RandomStream &rng)
{
    Eigen::MatrixXcd z(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            z(r, c) = complex_normal(rng);
    return z;
}

ChannelMatrix corrupt_csi_from(const ChannelMatrix &true_channels, double variance, const Eigen::MatrixXcd &unit_noise)
{
    if (unit_noise.rows() != true_channels.matrix.rows() || unit_noise.cols() != true_channels.matrix.cols())
        throw ConfigError("corrupt_csi: noise dimensions do not match the channel matrix");
    return {true_channels.matrix + std::sqrt(variance) * unit_noise, ChannelKind::Estimated};
}

ChannelMatrix corrupt_csi(const ChannelMatrix &true_channels, std::size_t k_users, double rho, RandomStream &rng)
{
    const double var = csi_error_variance(k_users, rho);
    const auto noise = standard_complex_gaussian(true_channels.matrix.rows(), true_channels.matrix.cols(), rng);
    return corrupt_csi_from(true_channels, var, noise);
}

} // namespace rula
