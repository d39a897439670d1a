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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rula/random.hpp"

namespace rula
{

inline constexpr double speed_of_light = 299792458.0;

// Log-distance path loss anchored at the free-space loss at ref_distance.
struct PathLossParams
{
    double carrier_freq = 3.5e9;    // Hz
    double ref_distance = 1.0;      // m
    double path_loss_exponent = 2.5;

    double wavelength() const { return speed_of_light / carrier_freq; }

    // Free-space loss at ref_distance, dB.
    double reference_loss_db() const;

    void validate() const;
};

struct ScatteringConfig
{
    std::size_t num_clusters = 6;
    double cluster_spread_deg = 40.0; // half-width of the nominal AoA window
    double asd_deg = 5.0;

    void validate() const;
};

struct SpatialCovariance
{
    Eigen::MatrixXcd matrix;
};

// L with L L^H = R, from a clamped eigendecomposition.
struct CovarianceFactor
{
    Eigen::MatrixXcd matrix;
};

enum class ChannelKind
{
    True,
    Estimated,
    Pseudo,
};

// Columns are per-device channel vectors (M x K).
struct ChannelMatrix
{
    Eigen::MatrixXcd matrix;
    ChannelKind kind = ChannelKind::True;

    Eigen::Index antennas() const { return matrix.rows(); }
    Eigen::Index users() const { return matrix.cols(); }
};

double path_loss_db(double distance, const PathLossParams &params);

// Large-scale power gain, 10^(path_loss_db / 10). Throws GeometryError for distance <= 0.
double path_loss_linear(double distance, const PathLossParams &params);

// sqrt(beta) * [exp(-j 2 pi m delta sin(phi))]_{m = 0..M-1}
Eigen::VectorXcd los_steering(double beta, double phi, std::size_t m_antennas, double delta = 0.5);

// Global-frame nominal cluster AoAs, uniform on [alpha_k - spread, alpha_k + spread].
// Exactly one uniform draw per cluster.
std::vector<double> sample_cluster_angles(double alpha_k, const ScatteringConfig &config, RandomStream &rng);

// Gaussian local scattering model:
//   R[s,m] = beta/N sum_n exp(j 2 pi delta (s-m) sin psi_n) exp(-asd^2/2 (2 pi delta (s-m) cos psi_n)^2)
// With delta = 1/2 this is the half-wavelength form. Angles are in the array frame.
SpatialCovariance local_scattering_covariance(double beta, std::span<const double> cluster_angles_effective,
                                              double asd_rad, std::size_t m_antennas, double delta = 0.5);

// Eigen-based square-root factor. Negative eigenvalues are clamped to zero; throws NumericalError
// when the most negative eigenvalue is below -1e-6 * trace.
CovarianceFactor factor_covariance(const SpatialCovariance &cov);

// sqrt(kappa/(1+kappa)) h_los + sqrt(1/(1+kappa)) L z for a given standard complex Gaussian z.
Eigen::VectorXcd rician_from_draw(const Eigen::VectorXcd &h_los, const CovarianceFactor &factor, double kappa,
                                  const Eigen::VectorXcd &z);

Eigen::VectorXcd sample_rician(const Eigen::VectorXcd &h_los, const CovarianceFactor &factor, double kappa,
                               RandomStream &rng);
Eigen::VectorXcd sample_rician(const Eigen::VectorXcd &h_los, const SpatialCovariance &cov, double kappa,
                               RandomStream &rng);

// 1 / (K rho)
double csi_error_variance(std::size_t k_users, double rho);

// M x K matrix of i.i.d. CN(0, 1) entries, drawn column by column.
Eigen::MatrixXcd standard_complex_gaussian(Eigen::Index rows, Eigen::Index cols, RandomStream &rng);

// true + sqrt(variance) * unit_noise, kind = Estimated.
ChannelMatrix corrupt_csi_from(const ChannelMatrix &true_channels, double variance, const Eigen::MatrixXcd &unit_noise);

ChannelMatrix corrupt_csi(const ChannelMatrix &true_channels, std::size_t k_users, double rho, RandomStream &rng);

} // namespace rula
