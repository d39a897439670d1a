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

#include "rula/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "rula/errors.hpp"

namespace rula
{

using nlohmann::json;

namespace
{

using Setter = std::function<void(SimParams &, const json &)>;

template <class T>
T get_as(const json &v, const std::string &key)
{
    try
    {
        if constexpr (std::is_same_v<T, bool>)
        {
            if (!v.is_boolean())
                throw ConfigError("config: '" + key + "' must be a boolean");
            return v.get<bool>();
        }
        else if constexpr (std::is_integral_v<T>)
        {
            if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0))
                throw ConfigError("config: '" + key + "' must be a nonnegative integer");
            return v.get<T>();
        }
        else if constexpr (std::is_same_v<T, std::string>)
        {
            if (!v.is_string())
                throw ConfigError("config: '" + key + "' must be a string");
            return v.get<std::string>();
        }
        else
        {
            if (!v.is_number())
                throw ConfigError("config: '" + key + "' must be a number");
            return v.get<T>();
        }
    }
    catch (const json::exception &e)
    {
        throw ConfigError("config: '" + key + "': " + e.what());
    }
}

const std::map<std::string, Setter, std::less<>> &setters()
{
#define RULA_FIELD(name, type) {#name, [](SimParams &p, const json &v) { p.name = get_as<type>(v, #name); }}
    static const std::map<std::string, Setter, std::less<>> table{
        RULA_FIELD(m_antennas, std::size_t),
        RULA_FIELD(k_users, std::size_t),
        RULA_FIELD(side, double),
        RULA_FIELD(tx_power, double),
        RULA_FIELD(noise_psd, double),
        RULA_FIELD(bandwidth, double),
        RULA_FIELD(noise_figure_db, double),
        RULA_FIELD(ap_height, double),
        RULA_FIELD(device_height, double),
        RULA_FIELD(carrier_freq, double),
        RULA_FIELD(kappa_db, double),
        RULA_FIELD(sigma_e_sq_db, double),
        RULA_FIELD(path_loss_exponent, double),
        RULA_FIELD(ref_distance, double),
        RULA_FIELD(antenna_spacing, double),
        RULA_FIELD(static_theta, double),
        RULA_FIELD(n_network_realizations, std::size_t),
        RULA_FIELD(n_channel_realizations, std::size_t),
        RULA_FIELD(master_seed, std::uint64_t),
        RULA_FIELD(csi_error, bool),
        RULA_FIELD(positioning_error, bool),
        RULA_FIELD(common_random_numbers, bool),
        RULA_FIELD(max_failure_fraction, double),
        RULA_FIELD(strict_ranges, bool),
        {"num_clusters",
         [](SimParams &p, const json &v) { p.scattering.num_clusters = get_as<std::size_t>(v, "num_clusters"); }},
        {"cluster_spread_deg",
         [](SimParams &p, const json &v) { p.scattering.cluster_spread_deg = get_as<double>(v, "cluster_spread_deg"); }},
        {"asd_deg", [](SimParams &p, const json &v) { p.scattering.asd_deg = get_as<double>(v, "asd_deg"); }},
        {"grid_points", [](SimParams &p, const json &v) { p.grid.num_points = get_as<std::size_t>(v, "grid_points"); }},
        {"cluster_frame",
         [](SimParams &p, const json &v) {
             p.cluster_frame = parse_cluster_frame(get_as<std::string>(v, "cluster_frame"));
         }},
        {"ap_x",
         [](SimParams &p, const json &v) {
             auto pos = p.ap_xy();
             pos.x = get_as<double>(v, "ap_x");
             p.ap_position = pos;
         }},
        {"ap_y",
         [](SimParams &p, const json &v) {
             auto pos = p.ap_xy();
             pos.y = get_as<double>(v, "ap_y");
             p.ap_position = pos;
         }},
    };
#undef RULA_FIELD
    return table;
}

} // namespace

void apply_config_text(SimParams &params, std::string_view json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config: top level must be a JSON object");

    // ap_x / ap_y both default to the area center, which depends on `side`; apply side first.
    const auto &table = setters();
    if (doc.contains("side"))
        table.at("side")(params, doc.at("side"));
    for (const auto &[key, value] : doc.items())
    {
        const auto it = table.find(key);
        if (it == table.end())
            throw ConfigError("config: unknown key '" + key + "'");
        if (value.is_object() || value.is_array())
            throw ConfigError("config: '" + key + "' must be a scalar (the file is flat)");
        it->second(params, value);
    }
}

SimParams load_config(const std::filesystem::path &path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    SimParams p;
    apply_config_text(p, buf.str());
    return p;
}

std::string config_to_json(const SimParams &p)
{
    json j;
    j["m_antennas"] = p.m_antennas;
    j["k_users"] = p.k_users;
    j["side"] = p.side;
    j["tx_power"] = p.tx_power;
    j["noise_psd"] = p.noise_psd;
    j["bandwidth"] = p.bandwidth;
    j["noise_figure_db"] = p.noise_figure_db;
    j["ap_height"] = p.ap_height;
    j["device_height"] = p.device_height;
    j["carrier_freq"] = p.carrier_freq;
    j["kappa_db"] = p.kappa_db;
    j["sigma_e_sq_db"] = p.sigma_e_sq_db;
    j["path_loss_exponent"] = p.path_loss_exponent;
    j["ref_distance"] = p.ref_distance;
    j["antenna_spacing"] = p.antenna_spacing;
    j["num_clusters"] = p.scattering.num_clusters;
    j["cluster_spread_deg"] = p.scattering.cluster_spread_deg;
    j["asd_deg"] = p.scattering.asd_deg;
    j["grid_points"] = p.grid.num_points;
    j["static_theta"] = p.static_theta;
    j["n_network_realizations"] = p.n_network_realizations;
    j["n_channel_realizations"] = p.n_channel_realizations;
    j["master_seed"] = p.master_seed;
    j["cluster_frame"] = std::string(to_string(p.cluster_frame));
    j["csi_error"] = p.csi_error;
    j["positioning_error"] = p.positioning_error;
    j["common_random_numbers"] = p.common_random_numbers;
    j["max_failure_fraction"] = p.max_failure_fraction;
    j["strict_ranges"] = p.strict_ranges;
    if (p.ap_position)
    {
        j["ap_x"] = p.ap_position->x;
        j["ap_y"] = p.ap_position->y;
    }
    return j.dump(2);
}

} // namespace rula
