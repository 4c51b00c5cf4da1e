#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcran {

// Thrown when a requested schedule/solve has no feasible solution,
// as opposed to a caller mistake (std::invalid_argument / std::out_of_range).
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration values (non-physical parameters, malformed files).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Violation of the message-passing contract between cloud agents.
class protocol_error : public std::runtime_error {
public:
  explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

// Network dimensions: C clouds, B base-stations per cloud, Z power-zones
// per BS frame, U users.
struct Dimensions {
  int clouds = 1;
  int bs_per_cloud = 1;
  int pzs_per_bs = 1;
  int users = 1;

  // Total number of power-zones across the network.
  int total_pzs() const { return clouds * bs_per_cloud * pzs_per_bs; }

  bool valid() const {
    return clouds >= 1 && bs_per_cloud >= 1 && pzs_per_bs >= 1 && users >= 1;
  }

  void require_valid() const {
    if (!valid()) throw std::invalid_argument("Dimensions: all counts must be >= 1");
  }

  // A feasible schedule assigns every PZ slot while each user absorbs at
  // most Z slots inside a single cloud, so at least C*B users are needed.
  bool schedulable() const { return users >= clouds * bs_per_cloud; }

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

// One candidate scheduling decision: user `user` served on power-zone `pz`
// of base-station `bs` in cloud `cloud`. Ordered lexicographically on
// (cloud, user, bs, pz); this order is the canonical iteration order
// everywhere (graphs, schedules, tie-breaks).
struct Association {
  int cloud = 0;
  int user = 0;
  int bs = 0;
  int pz = 0;

  friend auto operator<=>(const Association&, const Association&) = default;

  bool within(const Dimensions& d) const {
    return cloud >= 0 && cloud < d.clouds && user >= 0 && user < d.users &&
           bs >= 0 && bs < d.bs_per_cloud && pz >= 0 && pz < d.pzs_per_bs;
  }
};

inline std::string to_string(const Association& a) {
  return "(" + std::to_string(a.cloud) + "," + std::to_string(a.user) + "," +
         std::to_string(a.bs) + "," + std::to_string(a.pz) + ")";
}

// Coordination regime selecting which conflict rules apply.
//   Hybrid:          signal-level inside each cloud, scheduling-level across.
//   SignalLevel:     any BS network-wide may serve any user.
//   SchedulingLevel: each user sticks to exactly one BS.
enum class CoordinationRegime { Hybrid, SignalLevel, SchedulingLevel };

inline const char* to_string(CoordinationRegime r) {
  switch (r) {
    case CoordinationRegime::Hybrid: return "hybrid";
    case CoordinationRegime::SignalLevel: return "signal";
    case CoordinationRegime::SchedulingLevel: return "scheduling";
  }
  return "?";
}

inline CoordinationRegime regime_from_string(const std::string& s) {
  if (s == "hybrid") return CoordinationRegime::Hybrid;
  if (s == "signal") return CoordinationRegime::SignalLevel;
  if (s == "scheduling") return CoordinationRegime::SchedulingLevel;
  throw config_error("unknown regime '" + s + "' (expected hybrid|signal|scheduling)");
}

// Per-association benefit values, flat tensor indexed by (c,u,b,z).
struct UtilityTensor {
  Dimensions dims;
  std::vector<double> pi;  // size C*U*B*Z

  UtilityTensor() = default;
  explicit UtilityTensor(const Dimensions& d)
      : dims(d),
        pi(static_cast<size_t>(d.clouds) * d.users * d.bs_per_cloud * d.pzs_per_bs, 0.0) {}

  size_t index(int c, int u, int b, int z) const {
    return ((static_cast<size_t>(c) * dims.users + u) * dims.bs_per_cloud + b) *
               dims.pzs_per_bs + z;
  }

  double operator()(int c, int u, int b, int z) const { return pi[index(c, u, b, z)]; }
  double& operator()(int c, int u, int b, int z) { return pi[index(c, u, b, z)]; }
  double operator()(const Association& a) const { return pi[index(a.cloud, a.user, a.bs, a.pz)]; }

  double at_checked(int c, int u, int b, int z) const {
    if (!Association{c, u, b, z}.within(dims)) throw std::out_of_range("UtilityTensor: index out of range");
    return (*this)(c, u, b, z);
  }
};

// A set of associations; kept sorted and unique so iteration order and
// floating-point summation order are reproducible.
struct Schedule {
  std::vector<Association> chosen;

  Schedule() = default;
  explicit Schedule(std::vector<Association> as) : chosen(std::move(as)) { normalize(); }

  void normalize() {
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  }

  void insert(const Association& a) {
    auto it = std::lower_bound(chosen.begin(), chosen.end(), a);
    if (it == chosen.end() || *it != a) chosen.insert(it, a);
  }

  void erase(const Association& a) {
    auto it = std::lower_bound(chosen.begin(), chosen.end(), a);
    if (it != chosen.end() && *it == a) chosen.erase(it);
  }

  bool contains(const Association& a) const {
    return std::binary_search(chosen.begin(), chosen.end(), a);
  }

  bool contains_user(int u) const {
    return std::any_of(chosen.begin(), chosen.end(),
                       [u](const Association& a) { return a.user == u; });
  }

  // Distinct users appearing in the schedule, ascending.
  std::vector<int> users() const {
    std::vector<int> us;
    for (const auto& a : chosen) us.push_back(a.user);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    return us;
  }

  size_t size() const { return chosen.size(); }
  bool empty() const { return chosen.empty(); }

  // Canonical total: weights summed in sorted association order, so equal
  // sets always produce bit-identical totals.
  double total_utility(const UtilityTensor& util) const {
    double sum = 0.0;
    for (const auto& a : chosen) sum += util(a);
    return sum;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

}  // namespace mcran
