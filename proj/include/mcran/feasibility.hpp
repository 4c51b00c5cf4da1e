#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mcran/types.hpp"

namespace mcran {

enum class ViolationKind { C1, C2Duplicate, C2Missing, C3, BsExclusivity, Size };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::C1: return "C1";
    case ViolationKind::C2Duplicate: return "C2-duplicate";
    case ViolationKind::C2Missing: return "C2-missing";
    case ViolationKind::C3: return "C3";
    case ViolationKind::BsExclusivity: return "BS-exclusivity";
    case ViolationKind::Size: return "size";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;

  void add(ViolationKind kind, std::string detail) {
    feasible = false;
    violations.push_back({kind, std::move(detail)});
  }

  bool has(ViolationKind kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
};

// Checks a schedule against the regime's constraint set plus the full-size
// requirement |s| = C*B*Z. Hybrid: one cloud per user, every (c,b,z) slot
// exactly once, no user on the same PZ index twice. SignalLevel drops the
// per-user cloud rule. SchedulingLevel binds each user to a single BS.
// Invalid schedules produce verdicts, not exceptions; out-of-range
// associations are a caller error.
inline FeasibilityReport validate_schedule(const Schedule& s, const Dimensions& dims,
                                           CoordinationRegime regime) {
  dims.require_valid();
  for (const auto& a : s.chosen)
    if (!a.within(dims))
      throw std::out_of_range("validate_schedule: association " + to_string(a) +
                              " outside dimensions");

  FeasibilityReport report;
  int z_tot = dims.total_pzs();
  if (static_cast<int>(s.size()) != z_tot)
    report.add(ViolationKind::Size, "schedule has " + std::to_string(s.size()) +
                                        " associations, expected " + std::to_string(z_tot));

  // C2: each (c,b,z) slot exactly once.
  std::map<std::tuple<int, int, int>, int> slot_count;
  for (const auto& a : s.chosen) slot_count[{a.cloud, a.bs, a.pz}]++;
  for (int c = 0; c < dims.clouds; ++c)
    for (int b = 0; b < dims.bs_per_cloud; ++b)
      for (int z = 0; z < dims.pzs_per_bs; ++z) {
        auto it = slot_count.find({c, b, z});
        int n = it == slot_count.end() ? 0 : it->second;
        std::string slot = "(" + std::to_string(c) + "," + std::to_string(b) + "," +
                           std::to_string(z) + ")";
        if (n == 0)
          report.add(ViolationKind::C2Missing, "PZ slot " + slot + " unassigned");
        else if (n > 1)
          report.add(ViolationKind::C2Duplicate,
                     "PZ slot " + slot + " assigned " + std::to_string(n) + " times");
      }

  bool check_c1 = regime == CoordinationRegime::Hybrid ||
                  regime == CoordinationRegime::SchedulingLevel;
  bool check_c3 = regime == CoordinationRegime::Hybrid ||
                  regime == CoordinationRegime::SignalLevel;
  bool check_bs = regime == CoordinationRegime::SchedulingLevel;

  if (check_c1) {
    std::map<int, std::set<int>> user_clouds;
    for (const auto& a : s.chosen) user_clouds[a.user].insert(a.cloud);
    for (const auto& [u, clouds] : user_clouds)
      if (clouds.size() > 1)
        report.add(ViolationKind::C1, "user " + std::to_string(u) + " scheduled in " +
                                          std::to_string(clouds.size()) + " clouds");
  }

  if (check_c3) {
    std::map<std::pair<int, int>, int> user_pz;
    for (const auto& a : s.chosen) user_pz[{a.user, a.pz}]++;
    for (const auto& [key, n] : user_pz)
      if (n > 1)
        report.add(ViolationKind::C3, "user " + std::to_string(key.first) + " on PZ index " +
                                          std::to_string(key.second) + " in " +
                                          std::to_string(n) + " BSs");
  }

  if (check_bs) {
    std::map<int, std::set<std::pair<int, int>>> user_bs;
    for (const auto& a : s.chosen) user_bs[a.user].insert({a.cloud, a.bs});
    for (const auto& [u, bss] : user_bs)
      if (bss.size() > 1)
        report.add(ViolationKind::BsExclusivity, "user " + std::to_string(u) +
                                                     " scheduled in " +
                                                     std::to_string(bss.size()) + " BSs");
  }

  return report;
}

}  // namespace mcran
