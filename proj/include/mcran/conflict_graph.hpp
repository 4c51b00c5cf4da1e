#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mcran/types.hpp"

namespace mcran {

// Fixed-width bitset used for adjacency rows and vertex subsets.
class BitRow {
public:
  BitRow() = default;
  explicit BitRow(size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  size_t size() const { return bits_; }

  void or_with(const BitRow& other) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  }
  void andnot_with(const BitRow& other) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  }
  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool intersects(const BitRow& other) const {
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

private:
  size_t bits_ = 0;
  std::vector<uint64_t> words_;
};

namespace detail {

// Edge rule per regime, for distinct associations.
//   CC1: same user, different cloud.
//   CC2: same (cloud, BS, PZ) slot.
//   CC3: same user, same PZ index.
// SignalLevel drops CC1; SchedulingLevel replaces CC3 by "same user,
// different (cloud, BS)", which also subsumes CC1.
inline bool conflicts(CoordinationRegime regime, const Association& a, const Association& b) {
  bool cc2 = a.cloud == b.cloud && a.bs == b.bs && a.pz == b.pz;
  if (cc2) return true;
  if (a.user != b.user) return false;
  switch (regime) {
    case CoordinationRegime::Hybrid:
      return a.cloud != b.cloud || a.pz == b.pz;
    case CoordinationRegime::SignalLevel:
      return a.pz == b.pz;
    case CoordinationRegime::SchedulingLevel:
      return a.cloud != b.cloud || a.bs != b.bs;
  }
  return false;
}

}  // namespace detail

// Weighted conflict graph over associations for one coordination regime.
// Vertices are sorted lexicographically; adjacency is kept as dense
// per-vertex bit rows so edge tests are O(1). Immutable once built.
class ConflictGraph {
public:
  ConflictGraph() = default;

  ConflictGraph(Dimensions dims, CoordinationRegime regime,
                std::vector<Association> vertices, std::vector<double> weights)
      : dims_(dims), regime_(regime), vertices_(std::move(vertices)),
        weights_(std::move(weights)) {
    build_adjacency();
  }

  const Dimensions& dims() const { return dims_; }
  CoordinationRegime regime() const { return regime_; }
  size_t num_vertices() const { return vertices_.size(); }
  size_t num_edges() const { return num_edges_; }
  const std::vector<Association>& vertices() const { return vertices_; }
  const Association& vertex(size_t i) const { return vertices_[i]; }
  double weight(size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const BitRow& neighbors(size_t i) const { return adjacency_[i]; }
  bool adjacent(size_t i, size_t j) const { return adjacency_[i].test(j); }

  // Index of an association among the vertices, or npos.
  static constexpr size_t npos = static_cast<size_t>(-1);
  size_t index_of(const Association& a) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), a);
    if (it == vertices_.end() || *it != a) return npos;
    return static_cast<size_t>(it - vertices_.begin());
  }

private:
  void build_adjacency() {
    adjacency_.assign(vertices_.size(), BitRow(vertices_.size()));
    num_edges_ = 0;
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j)
        if (detail::conflicts(regime_, vertices_[i], vertices_[j])) {
          adjacency_[i].set(j);
          adjacency_[j].set(i);
          ++num_edges_;
        }
  }

  Dimensions dims_;
  CoordinationRegime regime_ = CoordinationRegime::Hybrid;
  std::vector<Association> vertices_;
  std::vector<double> weights_;
  std::vector<BitRow> adjacency_;
  size_t num_edges_ = 0;
};

// Builds the conflict graph over allowed_clouds x allowed_users x B x Z
// with vertex weights taken straight from the utility tensor. Subsets must
// be non-empty and within range.
inline ConflictGraph build_graph(const UtilityTensor& utilities, CoordinationRegime regime,
                                 const std::vector<int>& allowed_clouds,
                                 const std::vector<int>& allowed_users) {
  const Dimensions& dims = utilities.dims;
  dims.require_valid();
  if (allowed_clouds.empty()) throw std::invalid_argument("build_graph: empty cloud subset");
  if (allowed_users.empty()) throw std::invalid_argument("build_graph: empty user subset");
  for (int c : allowed_clouds)
    if (c < 0 || c >= dims.clouds) throw std::out_of_range("build_graph: cloud index out of range");
  for (int u : allowed_users)
    if (u < 0 || u >= dims.users) throw std::out_of_range("build_graph: user index out of range");

  std::vector<int> clouds = allowed_clouds;
  std::vector<int> users = allowed_users;
  std::sort(clouds.begin(), clouds.end());
  clouds.erase(std::unique(clouds.begin(), clouds.end()), clouds.end());
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  std::vector<Association> vertices;
  std::vector<double> weights;
  vertices.reserve(clouds.size() * users.size() * dims.bs_per_cloud * dims.pzs_per_bs);
  for (int c : clouds)
    for (int u : users)
      for (int b = 0; b < dims.bs_per_cloud; ++b)
        for (int z = 0; z < dims.pzs_per_bs; ++z) {
          vertices.push_back({c, u, b, z});
          weights.push_back(utilities(c, u, b, z));
        }
  return ConflictGraph(dims, regime, std::move(vertices), std::move(weights));
}

// Full graph over every cloud and user.
inline ConflictGraph build_graph(const UtilityTensor& utilities, CoordinationRegime regime) {
  std::vector<int> clouds(utilities.dims.clouds);
  std::vector<int> users(utilities.dims.users);
  for (int c = 0; c < utilities.dims.clouds; ++c) clouds[c] = c;
  for (int u = 0; u < utilities.dims.users; ++u) users[u] = u;
  return build_graph(utilities, regime, clouds, users);
}

// True iff no two chosen associations are adjacent in g. Every association
// must be a vertex of g.
inline bool is_independent(const ConflictGraph& g, const Schedule& s) {
  std::vector<size_t> idx;
  idx.reserve(s.size());
  for (const auto& a : s.chosen) {
    size_t i = g.index_of(a);
    if (i == ConflictGraph::npos)
      throw std::invalid_argument("is_independent: association " + to_string(a) +
                                  " is not a vertex of the graph");
    idx.push_back(i);
  }
  for (size_t x = 0; x < idx.size(); ++x)
    for (size_t y = x + 1; y < idx.size(); ++y)
      if (g.adjacent(idx[x], idx[y])) return false;
  return true;
}

// Plain-text edge list for debugging and cross-implementation diffing:
// one header line with dims and regime, then one line per edge with both
// endpoint associations.
inline void export_edge_list(const ConflictGraph& g, std::ostream& out) {
  out << "mcran-graph C=" << g.dims().clouds << " B=" << g.dims().bs_per_cloud
      << " Z=" << g.dims().pzs_per_bs << " U=" << g.dims().users
      << " regime=" << to_string(g.regime()) << " vertices=" << g.num_vertices()
      << " edges=" << g.num_edges() << "\n";
  for (size_t i = 0; i < g.num_vertices(); ++i)
    for (size_t j = i + 1; j < g.num_vertices(); ++j)
      if (g.adjacent(i, j)) {
        const Association& a = g.vertex(i);
        const Association& b = g.vertex(j);
        out << a.cloud << " " << a.user << " " << a.bs << " " << a.pz << "  " << b.cloud
            << " " << b.user << " " << b.bs << " " << b.pz << "\n";
      }
}

}  // namespace mcran
