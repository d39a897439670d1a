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

#include "rula/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "rula/channel.hpp"
#include "rula/errors.hpp"
#include "rula/random.hpp"
#include "rula/rotation.hpp"

namespace rula
{

namespace
{
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double z95 = 1.959963984540054;
} // namespace

std::string_view to_string(ArrayMode mode) { return mode == ArrayMode::Rotary ? "rotary" : "static"; }

ArrayMode parse_array_mode(std::string_view text)
{
    if (text == "rotary")
        return ArrayMode::Rotary;
    if (text == "static")
        return ArrayMode::Static;
    throw ConfigError("unknown array mode '" + std::string(text) + "'");
}

std::string_view to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::Antennas:
        return "M";
    case SweepAxis::Users:
        return "K";
    case SweepAxis::KappaDb:
        return "kappa_db";
    case SweepAxis::SigmaESqDb:
        return "sigma_e_sq_db";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view text)
{
    for (auto a : {SweepAxis::Antennas, SweepAxis::Users, SweepAxis::KappaDb, SweepAxis::SigmaESqDb})
        if (text == to_string(a))
            return a;
    throw ConfigError("unknown sweep axis '" + std::string(text) + "' (expected M, K, kappa_db or sigma_e_sq_db)");
}

SimParams apply_axis(const SimParams &params, SweepAxis axis, double value)
{
    auto as_count = [&](const char *name) {
        if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
            throw ConfigError(std::string("sweep: ") + name + " values must be positive integers");
        return static_cast<std::size_t>(value);
    };

    SimParams p = params;
    switch (axis)
    {
    case SweepAxis::Antennas:
        p.m_antennas = as_count("M");
        break;
    case SweepAxis::Users:
        p.k_users = as_count("K");
        break;
    case SweepAxis::KappaDb:
        p.kappa_db = value;
        break;
    case SweepAxis::SigmaESqDb:
        p.sigma_e_sq_db = value;
        break;
    }
    return p;
}

std::uint64_t network_seed(const SimParams &params, std::size_t value_index, std::size_t index)
{
    if (params.common_random_numbers)
        return derive_seed(params.master_seed, {index});
    return derive_seed(params.master_seed, {0x5eedULL, value_index, index});
}

namespace
{

std::vector<double> to_array_frame(const std::vector<double> &global_angles, double theta)
{
    std::vector<double> out(global_angles.size());
    std::transform(global_angles.begin(), global_angles.end(), out.begin(),
                   [theta](double psi) { return wrap_angle(psi - theta); });
    return out;
}

// Per-rotation channel ingredients, shared by every (scheme, mode) evaluated at that rotation.
struct RotationState
{
    double theta = 0.0;
    std::vector<Eigen::VectorXcd> los;
    std::vector<CovarianceFactor> factors;
};

struct Accumulator
{
    double sum = 0.0;
    std::size_t ok = 0;
    std::size_t failed = 0;
};

std::size_t index_of(std::vector<double> &thetas, double theta)
{
    const auto it = std::find(thetas.begin(), thetas.end(), theta);
    if (it != thetas.end())
        return static_cast<std::size_t>(it - thetas.begin());
    thetas.push_back(theta);
    return thetas.size() - 1;
}

double predicted_or_nan(const PseudoChannelModel &model, double theta, CombinerScheme scheme, const LinkBudget &budget)
{
    try
    {
        return objective(model.at(theta), scheme, budget);
    }
    catch (const CombiningError &)
    {
        return nan;
    }
}

} // namespace

Placement draw_placement(const SimParams &params, std::uint64_t realization_seed)
{
    Placement pl;
    pl.ap_position = params.ap_xy();
    pl.ap_height = params.ap_height;
    pl.device_height = params.device_height;
    {
        auto rng = make_stream(realization_seed, StreamTag::Placement);
        pl.true_positions = place_devices(params.k_users, params.side, rng);
    }
    {
        auto rng = make_stream(realization_seed, StreamTag::PositionError);
        const double var = params.sigma_e_sq();
        for (const auto &p : pl.true_positions)
            pl.estimated_positions.push_back(apply_positioning_error(p, var, rng));
    }
    return pl;
}

NetworkOutcome run_network_realization(const SimParams &params, std::uint64_t realization_seed)
{
    params.validate();
    const std::size_t K = params.k_users;
    const std::size_t M = params.m_antennas;
    const auto Mi = static_cast<Eigen::Index>(M);
    const auto Ki = static_cast<Eigen::Index>(K);
    const LinkBudget budget = params.link_budget();
    const double kappa = params.kappa();
    const double asd = deg_to_rad(params.scattering.asd_deg);

    NetworkOutcome out;
    out.placement = draw_placement(params, realization_seed);
    const Placement &pl = out.placement;

    const Geometry truth = compute_geometry(pl, false, 0.0);
    std::vector<double> beta(K);
    for (std::size_t k = 0; k < K; ++k)
        beta[k] = path_loss_linear(truth.distances_3d[k], params.path_loss());

    std::vector<std::vector<double>> clusters(K);
    if (params.cluster_frame == ClusterFrame::Global)
    {
        auto rng = make_stream(realization_seed, StreamTag::Clusters);
        for (std::size_t k = 0; k < K; ++k)
            clusters[k] = sample_cluster_angles(truth.global_azimuths[k], params.scattering, rng);
    }

    // Rotation choice from the estimated positions only.
    const PseudoChannelModel model(pl.estimated_positions, params);
    std::array<RotationDecision, 3> decisions;
    std::array<bool, 3> decided{};
    try
    {
        decisions = optimize_rotation_all(pl.estimated_positions, params, params.grid);
        decided.fill(true);
    }
    catch (const OptimizationError &)
    {
        for (std::size_t s = 0; s < all_schemes.size(); ++s)
        {
            try
            {
                decisions[s] = optimize_rotation(pl.estimated_positions, all_schemes[s], params, params.grid);
                decided[s] = true;
            }
            catch (const OptimizationError &)
            {
                decided[s] = false;
            }
        }
    }

    // Distinct rotations and which (scheme, mode) slots evaluate at each.
    std::vector<double> thetas;
    std::array<std::array<std::size_t, 2>, 3> slot_theta{};
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < all_schemes.size(); ++s)
    {
        auto &so = out.schemes[s];
        so.optimization_failed = !decided[s];
        so.fixed.theta = params.static_theta;
        so.predicted_at_static = predicted_or_nan(model, params.static_theta, all_schemes[s], budget);
        if (decided[s])
        {
            so.rotary.theta = decisions[s].theta_star;
            so.predicted_at_optimum = decisions[s].predicted_mean_se;
            slot_theta[s][0] = index_of(thetas, decisions[s].theta_star);
        }
        else
        {
            so.rotary.theta = nan;
            so.predicted_at_optimum = nan;
            slot_theta[s][0] = none;
        }
        slot_theta[s][1] = index_of(thetas, params.static_theta);
    }

    std::vector<RotationState> states(thetas.size());
    for (std::size_t t = 0; t < thetas.size(); ++t)
    {
        auto &st = states[t];
        st.theta = thetas[t];
        st.los.reserve(K);
        for (std::size_t k = 0; k < K; ++k)
            st.los.push_back(
                los_steering(beta[k], wrap_angle(truth.global_azimuths[k] - st.theta), M, params.antenna_spacing));
        if (params.cluster_frame == ClusterFrame::Global)
        {
            st.factors.reserve(K);
            for (std::size_t k = 0; k < K; ++k)
                st.factors.push_back(factor_covariance(local_scattering_covariance(
                    beta[k], to_array_frame(clusters[k], st.theta), asd, M, params.antenna_spacing)));
        }
    }

    std::array<std::array<Accumulator, 2>, 3> acc{};
    const double csi_var = params.csi_error ? csi_error_variance(K, budget.snr()) : 0.0;

    for (std::size_t c = 0; c < params.n_channel_realizations; ++c)
    {
        auto rng = make_stream(realization_seed, StreamTag::Channel, {c});
        const Eigen::MatrixXcd Z = standard_complex_gaussian(Mi, Ki, rng);
        const Eigen::MatrixXcd E = standard_complex_gaussian(Mi, Ki, rng);

        if (params.cluster_frame == ClusterFrame::PerChannel)
        {
            auto crng = make_stream(realization_seed, StreamTag::ChannelClusters, {c});
            for (std::size_t k = 0; k < K; ++k)
                clusters[k] = sample_cluster_angles(truth.global_azimuths[k], params.scattering, crng);
        }

        for (std::size_t t = 0; t < states.size(); ++t)
        {
            const auto &st = states[t];
            ChannelMatrix H{Eigen::MatrixXcd(Mi, Ki), ChannelKind::True};
            for (std::size_t k = 0; k < K; ++k)
            {
                const auto kk = static_cast<Eigen::Index>(k);
                if (params.cluster_frame == ClusterFrame::Global)
                    H.matrix.col(kk) = rician_from_draw(st.los[k], st.factors[k], kappa, Z.col(kk));
                else
                {
                    const auto f = factor_covariance(local_scattering_covariance(
                        beta[k], to_array_frame(clusters[k], st.theta), asd, M, params.antenna_spacing));
                    H.matrix.col(kk) = rician_from_draw(st.los[k], f, kappa, Z.col(kk));
                }
            }
            const ChannelMatrix Hhat =
                params.csi_error ? corrupt_csi_from(H, csi_var, E) : ChannelMatrix{H.matrix, ChannelKind::Estimated};

            for (std::size_t s = 0; s < all_schemes.size(); ++s)
            {
                const bool rot = slot_theta[s][0] == t;
                const bool fix = slot_theta[s][1] == t;
                if (!rot && !fix)
                    continue;
                double se = nan;
                try
                {
                    const Eigen::MatrixXcd V = compute_combiner(Hhat, all_schemes[s], budget);
                    se = se_from_sinr(sinr_all(V, H, budget)).mean_se;
                }
                catch (const CombiningError &)
                {
                }
                for (std::size_t m = 0; m < 2; ++m)
                {
                    if (!(m == 0 ? rot : fix))
                        continue;
                    auto &a = acc[s][m];
                    if (std::isnan(se))
                        ++a.failed;
                    else
                    {
                        a.sum += se;
                        ++a.ok;
                    }
                }
            }
        }
    }

    for (std::size_t s = 0; s < all_schemes.size(); ++s)
    {
        auto &so = out.schemes[s];
        for (std::size_t m = 0; m < 2; ++m)
        {
            ModeOutcome &mo = m == 0 ? so.rotary : so.fixed;
            const auto &a = acc[s][m];
            if (m == 0 && so.optimization_failed)
            {
                mo.mean_se = nan;
                mo.n_failed = params.n_channel_realizations;
                continue;
            }
            mo.mean_se = a.ok > 0 ? a.sum / static_cast<double>(a.ok) : nan;
            mo.n_failed = a.failed;
        }
    }
    return out;
}

SampleSummary summarize(std::span<const double> samples)
{
    SampleSummary s;
    double sum = 0.0;
    for (double x : samples)
        if (!std::isnan(x))
        {
            sum += x;
            ++s.count;
        }
    if (s.count == 0)
    {
        s.mean = nan;
        return s;
    }
    s.mean = sum / static_cast<double>(s.count);
    if (s.count < 2)
        return s;
    double ss = 0.0;
    for (double x : samples)
        if (!std::isnan(x))
            ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.ci95_halfwidth = z95 * sd / std::sqrt(static_cast<double>(s.count));
    return s;
}

SweepResult run_sweep_detailed(const SimParams &params, SweepAxis axis, std::span<const double> values,
                               const RunOptions &options)
{
    // Surface every configuration problem before doing any work.
    std::vector<SimParams> per_value;
    per_value.reserve(values.size());
    for (double v : values)
    {
        per_value.push_back(apply_axis(params, axis, v));
        per_value.back().validate();
    }

    const std::size_t n_net = params.n_network_realizations;
    const std::size_t n_tasks = values.size() * n_net;
    std::vector<NetworkOutcome> outcomes(n_tasks);
    std::vector<std::exception_ptr> errors(n_tasks);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;)
        {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_tasks)
                return;
            const std::size_t vi = task / n_net;
            const std::size_t ni = task % n_net;
            try
            {
                outcomes[task] = run_network_realization(per_value[vi], network_seed(params, vi, ni));
            }
            catch (...)
            {
                errors[task] = std::current_exception();
            }
        }
    };

    const std::size_t n_threads = std::max<std::size_t>(1, std::min(options.threads, n_tasks));
    if (n_threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    SweepResult result;
    const std::string axis_name(to_string(axis));
    for (std::size_t vi = 0; vi < values.size(); ++vi)
    {
        for (std::size_t s = 0; s < all_schemes.size(); ++s)
        {
            for (auto mode : all_array_modes)
            {
                std::vector<double> samples(n_net);
                std::size_t failed = 0;
                for (std::size_t ni = 0; ni < n_net; ++ni)
                {
                    const auto &so = outcomes[vi * n_net + ni].schemes[s];
                    const auto &mo = so.mode(mode);
                    samples[ni] = mo.mean_se;
                    failed += mo.n_failed;
                    result.placements.push_back({axis_name, values[vi], ni, all_schemes[s], mode, mo.theta,
                                                 mo.mean_se,
                                                 mode == ArrayMode::Rotary ? so.predicted_at_optimum
                                                                           : so.predicted_at_static,
                                                 mo.n_failed});
                }
                const auto sum = summarize(samples);
                result.records.push_back(
                    {axis_name, values[vi], all_schemes[s], mode, sum.mean, sum.ci95_halfwidth, failed});
            }
        }
    }
    return result;
}

std::vector<SweepRecord> run_sweep(const SimParams &params, SweepAxis axis, std::span<const double> values,
                                   const RunOptions &options)
{
    return run_sweep_detailed(params, axis, values, options).records;
}

void check_failure_budget(std::span<const SweepRecord> records, const SimParams &params)
{
    const double total = static_cast<double>(params.n_network_realizations * params.n_channel_realizations);
    for (const auto &r : records)
    {
        const double frac = static_cast<double>(r.n_failed_realizations) / total;
        if (frac > params.max_failure_fraction)
        {
            std::ostringstream msg;
            msg << "failed realizations exceed budget: " << r.axis_name << '=' << r.axis_value << ' '
                << to_string(r.scheme) << ' ' << to_string(r.array_mode) << ": " << r.n_failed_realizations << " of "
                << total;
            throw FailureBudgetError(msg.str());
        }
    }
}

namespace
{
constexpr std::string_view results_header =
    "axis_name,axis_value,scheme,array_mode,mean_se,ci95_halfwidth,n_failed_realizations";

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw IoError("results: malformed number '" + std::string(s) + "'");
    return v;
}

std::size_t parse_count(std::string_view s)
{
    std::size_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw IoError("results: malformed count '" + std::string(s) + "'");
    return v;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
    os.flush();
    if (!os)
        throw IoError("write to '" + path.string() + "' failed");
}
} // namespace

std::string format_results(std::span<const SweepRecord> records)
{
    std::ostringstream os;
    os << results_header << '\n' << std::setprecision(17);
    for (const auto &r : records)
        os << r.axis_name << ',' << r.axis_value << ',' << to_string(r.scheme) << ',' << to_string(r.array_mode) << ','
           << r.mean_se << ',' << r.ci95_halfwidth << ',' << r.n_failed_realizations << '\n';
    return os.str();
}

void emit_results(std::span<const SweepRecord> records, const std::filesystem::path &path)
{
    write_text(path, format_results(records));
}

std::vector<SweepRecord> parse_results(std::string_view text)
{
    std::vector<SweepRecord> out;
    bool header = true;
    for (auto line : split(text, '\n'))
    {
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (header)
        {
            if (line != results_header)
                throw IoError("results: unexpected header");
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7)
            throw IoError("results: expected 7 fields, got " + std::to_string(f.size()));
        SweepRecord r;
        r.axis_name = std::string(f[0]);
        r.axis_value = parse_double(f[1]);
        r.scheme = parse_scheme(f[2]);
        r.array_mode = parse_array_mode(f[3]);
        r.mean_se = parse_double(f[4]);
        r.ci95_halfwidth = parse_double(f[5]);
        r.n_failed_realizations = parse_count(f[6]);
        out.push_back(std::move(r));
    }
    if (header)
        throw IoError("results: missing header");
    return out;
}

std::vector<SweepRecord> read_results(const std::filesystem::path &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_results(buf.str());
}

void emit_placements(std::span<const PlacementRecord> rows, const std::filesystem::path &path)
{
    std::ostringstream os;
    os << "axis_name,axis_value,realization,scheme,array_mode,theta_degrees,mean_se,predicted_se,n_failed\n"
       << std::setprecision(17);
    for (const auto &r : rows)
        os << r.axis_name << ',' << r.axis_value << ',' << r.realization << ',' << to_string(r.scheme) << ','
           << to_string(r.array_mode) << ',' << rad_to_deg(r.theta) << ',' << r.mean_se << ',' << r.predicted_se << ','
           << r.n_failed << '\n';
    write_text(path, os.str());
}

} // namespace rula
