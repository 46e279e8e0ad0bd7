#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matchbound/error.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/parallel.hpp"

namespace matchbound {

inline constexpr std::size_t kDefaultEnumerationCap = 12;

/// Index pair into an x-sorted PointSet; u is always the left endpoint.
struct Edge {
  std::size_t u = 0;
  std::size_t w = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline bool edges_cross(const PointSet& ps, const Edge& a, const Edge& b) {
  return segments_properly_cross(ps[a.u], ps[a.w], ps[b.u], ps[b.w]);
}

/// Vertex-disjoint edge set in canonical (sorted) order plus a mate table.
/// Ordering compares mate tables lexicographically with "isolated" smallest,
/// which is exactly the order enumerate_matchings emits.
class Matching {
 public:
  static constexpr int kIsolated = -1;

  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n, kIsolated) {}

  /// Checks index range and disjointness; crossing is checked separately
  /// because it needs coordinates.
  static Matching from_edges(std::size_t n, std::span<const Edge> edges) {
    Matching m(n);
    for (Edge e : edges) {
      if (e.u > e.w) std::swap(e.u, e.w);
      if (e.w >= n) throw UsageError("matching edge index out of range");
      if (e.u == e.w) throw UsageError("matching edge is a loop");
      if (m.mate_[e.u] != kIsolated || m.mate_[e.w] != kIsolated) {
        throw UsageError("matching edges are not vertex-disjoint");
      }
      m.link(e);
    }
    return m;
  }

  std::size_t n() const noexcept { return mate_.size(); }
  std::size_t size() const noexcept { return edges_.size(); }
  std::size_t isolated_count() const noexcept { return n() - 2 * size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool is_isolated(std::size_t p) const { return mate_.at(p) == kIsolated; }
  std::optional<std::size_t> mate(std::size_t p) const {
    const int m = mate_.at(p);
    if (m == kIsolated) return std::nullopt;
    return static_cast<std::size_t>(m);
  }
  std::optional<Edge> edge_of(std::size_t p) const {
    auto q = mate(p);
    if (!q) return std::nullopt;
    return p < *q ? Edge{p, *q} : Edge{*q, p};
  }
  /// Index of e in edges(), if present.
  std::optional<std::size_t> index_of(const Edge& e) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i] == e) return i;
    return std::nullopt;
  }

  Matching with(Edge e) const {
    if (e.u > e.w) std::swap(e.u, e.w);
    if (e.w >= n() || e.u == e.w || !is_isolated(e.u) || !is_isolated(e.w)) {
      throw UsageError("cannot insert edge: endpoints not both isolated");
    }
    Matching out = *this;
    out.link(e);
    return out;
  }

  Matching without(const Edge& e) const {
    auto idx = index_of(e);
    if (!idx) throw UsageError("cannot remove edge: not in matching");
    Matching out = *this;
    out.edges_.erase(out.edges_.begin() + static_cast<std::ptrdiff_t>(*idx));
    out.mate_[e.u] = kIsolated;
    out.mate_[e.w] = kIsolated;
    return out;
  }

  const std::vector<int>& mate_table() const noexcept { return mate_; }

  friend bool operator==(const Matching& a, const Matching& b) { return a.mate_ == b.mate_; }
  friend std::strong_ordering operator<=>(const Matching& a, const Matching& b) { return a.mate_ <=> b.mate_; }

 private:
  void link(const Edge& e) {
    mate_[e.u] = static_cast<int>(e.w);
    mate_[e.w] = static_cast<int>(e.u);
    edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
  }

  std::vector<int> mate_;
  std::vector<Edge> edges_;
};

inline bool is_crossing_free(const PointSet& ps, std::span<const Edge> edges) {
  std::vector<bool> used(ps.size(), false);
  for (const auto& e : edges) {
    if (e.u >= ps.size() || e.w >= ps.size()) throw UsageError("edge index out of range");
    if (e.u >= e.w) throw UsageError("edge must satisfy u < w");
    if (used[e.u] || used[e.w]) return false;
    used[e.u] = used[e.w] = true;
  }
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (edges_cross(ps, edges[i], edges[j])) return false;
  return true;
}

inline bool is_crossing_free(const PointSet& ps, const Matching& m) { return is_crossing_free(ps, m.edges()); }

/// Edge (a, b) between two isolated points crosses nothing in m.
inline bool can_insert(const PointSet& ps, const Matching& m, std::size_t a, std::size_t b) {
  if (a == b || !m.is_isolated(a) || !m.is_isolated(b)) return false;
  const Edge e = a < b ? Edge{a, b} : Edge{b, a};
  for (const auto& f : m.edges())
    if (edges_cross(ps, e, f)) return false;
  return true;
}

inline std::vector<std::size_t> isolated_vertices(const Matching& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.n(); ++i)
    if (m.is_isolated(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration.

/// First-level decision of the backtracking: vertex 0 isolated (nullopt) or
/// matched to the given partner. Subtrees are disjoint and, visited in the
/// order returned by root_choices, concatenate to the full canonical stream.
using RootChoice = std::optional<std::size_t>;

namespace detail {

class Enumerator {
 public:
  Enumerator(const PointSet& ps, const std::function<void(const Matching&)>& visit)
      : ps_(ps), visit_(visit), state_(ps.size(), kUndecided) {}

  void run_subtree(RootChoice root) {
    if (!root) {
      state_[0] = kIsolatedState;
      recurse(1);
      state_[0] = kUndecided;
    } else {
      const Edge e{0, *root};
      push(e);
      recurse(1);
      pop(e);
    }
  }

 private:
  static constexpr int kUndecided = -2;
  static constexpr int kIsolatedState = -1;

  void push(const Edge& e) {
    state_[e.u] = static_cast<int>(e.w);
    state_[e.w] = static_cast<int>(e.u);
    edges_.push_back(e);
  }
  void pop(const Edge& e) {
    state_[e.u] = state_[e.w] = kUndecided;
    edges_.pop_back();
  }

  bool compatible(const Edge& e) const {
    for (const auto& f : edges_)
      if (edges_cross(ps_, e, f)) return false;
    return true;
  }

  void recurse(std::size_t i) {
    const std::size_t n = ps_.size();
    while (i < n && state_[i] != kUndecided) ++i;
    if (i == n) {
      visit_(Matching::from_edges(n, edges_));
      return;
    }
    state_[i] = kIsolatedState;
    recurse(i + 1);
    state_[i] = kUndecided;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (state_[j] != kUndecided) continue;
      const Edge e{i, j};
      if (!compatible(e)) continue;
      push(e);
      recurse(i + 1);
      pop(e);
    }
  }

  const PointSet& ps_;
  const std::function<void(const Matching&)>& visit_;
  std::vector<int> state_;
  std::vector<Edge> edges_;
};

inline void check_cap(const PointSet& ps, std::size_t cap) {
  if (ps.size() > cap) {
    throw UsageError("refusing to enumerate matchings of " + std::to_string(ps.size()) +
                     " points (cap is " + std::to_string(cap) + ")");
  }
}

}  // namespace detail

inline std::vector<RootChoice> root_choices(const PointSet& ps) {
  std::vector<RootChoice> out{std::nullopt};
  for (std::size_t j = 1; j < ps.size(); ++j) out.emplace_back(j);
  return out;
}

inline void enumerate_subtree(const PointSet& ps, RootChoice root, const std::function<void(const Matching&)>& visit,
                              std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(ps, cap);
  if (root && (*root == 0 || *root >= ps.size())) throw UsageError("invalid root choice");
  detail::Enumerator(ps, visit).run_subtree(root);
}

/// Every crossing-free matching of ps (including the empty one) exactly once,
/// in canonical order.
inline void enumerate_matchings(const PointSet& ps, const std::function<void(const Matching&)>& visit,
                                std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(ps, cap);
  for (const auto& r : root_choices(ps)) detail::Enumerator(ps, visit).run_subtree(r);
}

inline std::vector<Matching> all_matchings(const PointSet& ps, std::size_t cap = kDefaultEnumerationCap) {
  std::vector<Matching> out;
  enumerate_matchings(ps, [&](const Matching& m) { out.push_back(m); }, cap);
  return out;
}

struct CountTable {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // counts[m] = Ma_m

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  std::uint64_t at(std::size_t m) const { return m < counts.size() ? counts[m] : 0; }
  friend bool operator==(const CountTable&, const CountTable&) = default;
};

inline CountTable count_by_size(const PointSet& ps, std::size_t cap = kDefaultEnumerationCap) {
  CountTable t{ps.size(), std::vector<std::uint64_t>(ps.size() / 2 + 1, 0)};
  enumerate_matchings(ps, [&](const Matching& m) { ++t.counts[m.size()]; }, cap);
  return t;
}

/// Same table computed by distributing root subtrees over `jobs` workers.
inline CountTable count_by_size_parallel(const PointSet& ps, unsigned jobs, std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(ps, cap);
  const auto roots = root_choices(ps);
  auto parts = parallel_map(roots.size(), jobs, [&](std::size_t i) {
    std::vector<std::uint64_t> c(ps.size() / 2 + 1, 0);
    enumerate_subtree(ps, roots[i], [&](const Matching& m) { ++c[m.size()]; }, cap);
    return c;
  });
  CountTable t{ps.size(), std::vector<std::uint64_t>(ps.size() / 2 + 1, 0)};
  for (const auto& c : parts)
    for (std::size_t m = 0; m < c.size(); ++m) t.counts[m] += c[m];
  return t;
}

// ---------------------------------------------------------------------------
// Text form "u-w u-w ..." in canonical order.

inline std::string write_matching(const Matching& m) {
  std::string out;
  for (const auto& e : m.edges()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.u) + "-" + std::to_string(e.w);
  }
  return out;
}

inline Matching read_matching(const PointSet& ps, std::string_view text) {
  std::vector<Edge> edges;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    const auto dash = tok.find('-');
    std::int64_t a = 0, b = 0;
    if (dash == std::string::npos || !detail::parse_int(std::string_view(tok).substr(0, dash), a) ||
        !detail::parse_int(std::string_view(tok).substr(dash + 1), b) || a < 0 || b < 0) {
      throw UsageError("malformed matching token '" + tok + "'");
    }
    edges.push_back({static_cast<std::size_t>(std::min(a, b)), static_cast<std::size_t>(std::max(a, b))});
  }
  Matching m = Matching::from_edges(ps.size(), edges);
  if (!is_crossing_free(ps, m)) throw UsageError("matching edges cross");
  return m;
}

}  // namespace matchbound
