#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcran/rng.hpp"
#include "mcran/types.hpp"

namespace mcran {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Channel and deployment parameters. Defaults follow the simulated system:
// hexagonal layout with 500 m cell-to-cell distance, transmit PSD
// -42.60 dBm/Hz, background noise -168.60 dBm/Hz, 0 dB SINR gap, 10 MHz
// bandwidth. Propagation is log-distance path loss anchored to free space
// at the reference distance, lognormal shadowing per (cloud, user, BS)
// link, and an independent unit-variance complex Gaussian fade per
// power-zone.
struct ChannelParams {
  double cell_distance_m = 500.0;
  double psd_dbm_hz = -42.60;
  double noise_dbm_hz = -168.60;
  double sinr_gap_db = 0.0;
  double bandwidth_hz = 10e6;
  double pathloss_exponent = 3.5;
  double pathloss_ref_m = 100.0;
  double carrier_hz = 2.5e9;
  double shadowing_db = 8.0;
  // When true, user u is pinned inside the cell of cloud u*C/U instead of
  // being dropped uniformly over the whole layout.
  bool users_per_cloud = false;
  uint64_t seed = 0;

  void require_valid() const {
    if (!(cell_distance_m > 0)) throw config_error("cell_distance_m must be > 0");
    if (!(bandwidth_hz > 0)) throw config_error("bandwidth_hz must be > 0");
    if (!(pathloss_exponent > 0)) throw config_error("pathloss_exponent must be > 0");
    if (!(pathloss_ref_m > 0)) throw config_error("pathloss_ref_m must be > 0");
    if (!(carrier_hz > 0)) throw config_error("carrier_hz must be > 0");
    if (shadowing_db < 0) throw config_error("shadowing_db must be >= 0");
    if (sinr_gap_db < 0) throw config_error("sinr_gap_db must be >= 0");
  }
};

inline void to_json(nlohmann::json& j, const ChannelParams& p) {
  j = nlohmann::json{{"cell_distance_m", p.cell_distance_m},
                     {"psd_dbm_hz", p.psd_dbm_hz},
                     {"noise_dbm_hz", p.noise_dbm_hz},
                     {"sinr_gap_db", p.sinr_gap_db},
                     {"bandwidth_hz", p.bandwidth_hz},
                     {"pathloss_exponent", p.pathloss_exponent},
                     {"pathloss_ref_m", p.pathloss_ref_m},
                     {"carrier_hz", p.carrier_hz},
                     {"shadowing_db", p.shadowing_db},
                     {"users_per_cloud", p.users_per_cloud},
                     {"seed", p.seed}};
}

inline void from_json(const nlohmann::json& j, ChannelParams& p) {
  ChannelParams defaults;
  p.cell_distance_m = j.value("cell_distance_m", defaults.cell_distance_m);
  p.psd_dbm_hz = j.value("psd_dbm_hz", defaults.psd_dbm_hz);
  p.noise_dbm_hz = j.value("noise_dbm_hz", defaults.noise_dbm_hz);
  p.sinr_gap_db = j.value("sinr_gap_db", defaults.sinr_gap_db);
  p.bandwidth_hz = j.value("bandwidth_hz", defaults.bandwidth_hz);
  p.pathloss_exponent = j.value("pathloss_exponent", defaults.pathloss_exponent);
  p.pathloss_ref_m = j.value("pathloss_ref_m", defaults.pathloss_ref_m);
  p.carrier_hz = j.value("carrier_hz", defaults.carrier_hz);
  p.shadowing_db = j.value("shadowing_db", defaults.shadowing_db);
  p.users_per_cloud = j.value("users_per_cloud", defaults.users_per_cloud);
  p.seed = j.value("seed", defaults.seed);
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Immutable synthetic network: per-PZ transmit powers, complex channel
// gains, noise, SINR gap, plus the planar geometry it was generated from.
// Safe to share read-only across threads.
struct NetworkInstance {
  Dimensions dims;
  std::vector<double> power;                // [c][b][z], watts
  std::vector<std::complex<double>> gain;   // [c][u][b][z]
  double noise_variance = 1.0;              // watts
  double sinr_gap = 1.0;                    // linear, >= 1
  std::vector<Point> cloud_center;          // [c]
  std::vector<Point> bs_pos;                // [c][b]
  std::vector<Point> user_pos;              // [u]
  ChannelParams params;
  uint64_t seed = 0;

  size_t power_index(int c, int b, int z) const {
    return (static_cast<size_t>(c) * dims.bs_per_cloud + b) * dims.pzs_per_bs + z;
  }
  size_t gain_index(int c, int u, int b, int z) const {
    return ((static_cast<size_t>(c) * dims.users + u) * dims.bs_per_cloud + b) *
               dims.pzs_per_bs + z;
  }

  double power_at(int c, int b, int z) const { return power[power_index(c, b, z)]; }
  const std::complex<double>& gain_at(int c, int u, int b, int z) const {
    return gain[gain_index(c, u, b, z)];
  }

  void require_index(int c, int u, int b, int z) const {
    if (!Association{c, u, b, z}.within(dims))
      throw std::out_of_range("NetworkInstance: association index out of range");
  }
};

// SINR of user u on PZ z of BS b in cloud c. Interference aggregates every
// other (cloud, BS) pair transmitting on the same PZ index, across cloud
// boundaries.
inline double compute_sinr(const NetworkInstance& inst, int c, int u, int b, int z) {
  inst.require_index(c, u, b, z);
  double signal = inst.power_at(c, b, z) * std::norm(inst.gain_at(c, u, b, z));
  double interference = 0.0;
  for (int cp = 0; cp < inst.dims.clouds; ++cp) {
    for (int bp = 0; bp < inst.dims.bs_per_cloud; ++bp) {
      if (cp == c && bp == b) continue;
      interference += inst.power_at(cp, bp, z) * std::norm(inst.gain_at(cp, u, bp, z));
    }
  }
  return signal / (inst.sinr_gap * (inst.noise_variance + interference));
}

// Sum-rate benefit tensor: pi = log2(1 + SINR) per association. Any other
// externally built UtilityTensor of matching shape is accepted downstream.
inline UtilityTensor compute_utilities(const NetworkInstance& inst) {
  inst.dims.require_valid();
  UtilityTensor util(inst.dims);
  for (int c = 0; c < inst.dims.clouds; ++c)
    for (int u = 0; u < inst.dims.users; ++u)
      for (int b = 0; b < inst.dims.bs_per_cloud; ++b)
        for (int z = 0; z < inst.dims.pzs_per_bs; ++z)
          util(c, u, b, z) = std::log2(1.0 + compute_sinr(inst, c, u, b, z));
  return util;
}

namespace detail {

// Cloud cell centers on a hexagonal lattice, spiralling out from the
// origin, adjacent centers `spacing` apart.
inline std::vector<Point> hex_centers(int count, double spacing) {
  std::vector<Point> centers;
  centers.reserve(count);
  auto axial_to_xy = [spacing](int q, int r) {
    return Point{spacing * (q + 0.5 * r), spacing * (std::numbers::sqrt3 / 2.0) * r};
  };
  centers.push_back(axial_to_xy(0, 0));
  static const int dq[6] = {1, 0, -1, -1, 0, 1};
  static const int dr[6] = {-1, -1, 0, 1, 1, 0};
  for (int ring = 1; static_cast<int>(centers.size()) < count; ++ring) {
    int q = 0, r = ring;  // start at the "south" corner of the ring
    for (int side = 0; side < 6 && static_cast<int>(centers.size()) < count; ++side) {
      for (int step = 0; step < ring && static_cast<int>(centers.size()) < count; ++step) {
        centers.push_back(axial_to_xy(q, r));
        q += dq[side];
        r += dr[side];
      }
    }
  }
  return centers;
}

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace detail

// Deterministic instance generator. For a fixed (seed, dims, params) the
// result is bit-identical: draw order is cloud centers (no draws), BS
// positions, user positions, per-link shadowing, per-PZ fading.
inline NetworkInstance generate_instance(uint64_t seed, const Dimensions& dims,
                                         const ChannelParams& params = {}) {
  dims.require_valid();
  params.require_valid();

  NetworkInstance inst;
  inst.dims = dims;
  inst.params = params;
  inst.seed = seed;
  inst.sinr_gap = db_to_linear(params.sinr_gap_db);
  double pz_bandwidth = params.bandwidth_hz / dims.pzs_per_bs;
  inst.noise_variance = dbm_to_watts(params.noise_dbm_hz) * pz_bandwidth;
  double pz_power = dbm_to_watts(params.psd_dbm_hz) * pz_bandwidth;

  inst.power.assign(static_cast<size_t>(dims.clouds) * dims.bs_per_cloud * dims.pzs_per_bs,
                    pz_power);

  Rng rng(seed);
  inst.cloud_center = detail::hex_centers(dims.clouds, params.cell_distance_m);
  double cell_radius = params.cell_distance_m / 2.0;

  inst.bs_pos.resize(static_cast<size_t>(dims.clouds) * dims.bs_per_cloud);
  for (int c = 0; c < dims.clouds; ++c)
    for (int b = 0; b < dims.bs_per_cloud; ++b) {
      Point& p = inst.bs_pos[static_cast<size_t>(c) * dims.bs_per_cloud + b];
      rng.disk_point(inst.cloud_center[c].x, inst.cloud_center[c].y, cell_radius, p.x, p.y);
    }

  double layout_radius = 0.0;
  for (const auto& ctr : inst.cloud_center)
    layout_radius = std::max(layout_radius, std::hypot(ctr.x, ctr.y));
  layout_radius += cell_radius;

  inst.user_pos.resize(dims.users);
  for (int u = 0; u < dims.users; ++u) {
    if (params.users_per_cloud) {
      int home = static_cast<int>(static_cast<long long>(u) * dims.clouds / dims.users);
      rng.disk_point(inst.cloud_center[home].x, inst.cloud_center[home].y, cell_radius,
                     inst.user_pos[u].x, inst.user_pos[u].y);
    } else {
      rng.disk_point(0.0, 0.0, layout_radius, inst.user_pos[u].x, inst.user_pos[u].y);
    }
  }

  // Free-space loss at the reference distance anchors the log-distance model.
  const double c_light = 299792458.0;
  double ref_loss_db =
      20.0 * std::log10(4.0 * std::numbers::pi * params.pathloss_ref_m * params.carrier_hz / c_light);

  inst.gain.resize(static_cast<size_t>(dims.clouds) * dims.users * dims.bs_per_cloud *
                   dims.pzs_per_bs);
  for (int c = 0; c < dims.clouds; ++c)
    for (int u = 0; u < dims.users; ++u)
      for (int b = 0; b < dims.bs_per_cloud; ++b) {
        double d = detail::distance(inst.user_pos[u],
                                    inst.bs_pos[static_cast<size_t>(c) * dims.bs_per_cloud + b]);
        d = std::max(d, 1.0);
        double pl_db = ref_loss_db +
                       10.0 * params.pathloss_exponent * std::log10(d / params.pathloss_ref_m);
        double shadow_db = params.shadowing_db * rng.normal();
        double amplitude = std::pow(10.0, -(pl_db + shadow_db) / 20.0);
        for (int z = 0; z < dims.pzs_per_bs; ++z) {
          double re = rng.normal() / std::numbers::sqrt2;
          double im = rng.normal() / std::numbers::sqrt2;
          inst.gain[inst.gain_index(c, u, b, z)] =
              amplitude * std::complex<double>(re, im);
        }
      }
  return inst;
}

// --- instance (de)serialization, versioned JSON ---

inline constexpr const char* kInstanceFormat = "mcran-instance";
inline constexpr int kInstanceVersion = 1;

inline nlohmann::json instance_to_json(const NetworkInstance& inst) {
  nlohmann::json j;
  j["format"] = kInstanceFormat;
  j["version"] = kInstanceVersion;
  j["dims"] = {{"clouds", inst.dims.clouds},
               {"bs_per_cloud", inst.dims.bs_per_cloud},
               {"pzs_per_bs", inst.dims.pzs_per_bs},
               {"users", inst.dims.users}};
  j["seed"] = inst.seed;
  j["params"] = inst.params;
  j["noise_variance"] = inst.noise_variance;
  j["sinr_gap"] = inst.sinr_gap;
  j["power"] = inst.power;
  nlohmann::json gains = nlohmann::json::array();
  for (const auto& g : inst.gain) gains.push_back({g.real(), g.imag()});
  j["gain"] = std::move(gains);
  auto points = [](const std::vector<Point>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : ps) arr.push_back({p.x, p.y});
    return arr;
  };
  j["cloud_center"] = points(inst.cloud_center);
  j["bs_pos"] = points(inst.bs_pos);
  j["user_pos"] = points(inst.user_pos);
  return j;
}

inline NetworkInstance instance_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kInstanceFormat)
    throw config_error("not an instance file (bad format tag)");
  if (j.value("version", 0) != kInstanceVersion)
    throw config_error("unsupported instance file version");
  NetworkInstance inst;
  const auto& d = j.at("dims");
  inst.dims = {d.at("clouds").get<int>(), d.at("bs_per_cloud").get<int>(),
               d.at("pzs_per_bs").get<int>(), d.at("users").get<int>()};
  inst.dims.require_valid();
  inst.seed = j.at("seed").get<uint64_t>();
  inst.params = j.at("params").get<ChannelParams>();
  inst.noise_variance = j.at("noise_variance").get<double>();
  inst.sinr_gap = j.at("sinr_gap").get<double>();
  inst.power = j.at("power").get<std::vector<double>>();
  for (const auto& g : j.at("gain"))
    inst.gain.emplace_back(g.at(0).get<double>(), g.at(1).get<double>());
  auto points = [](const nlohmann::json& arr) {
    std::vector<Point> ps;
    for (const auto& p : arr) ps.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return ps;
  };
  inst.cloud_center = points(j.at("cloud_center"));
  inst.bs_pos = points(j.at("bs_pos"));
  inst.user_pos = points(j.at("user_pos"));
  size_t expected = static_cast<size_t>(inst.dims.clouds) * inst.dims.users *
                    inst.dims.bs_per_cloud * inst.dims.pzs_per_bs;
  if (inst.gain.size() != expected) throw config_error("instance file: gain tensor shape mismatch");
  return inst;
}

inline void save_instance(const NetworkInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

inline NetworkInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return instance_from_json(j);
}

}  // namespace mcran
