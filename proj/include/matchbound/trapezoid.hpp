#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "matchbound/error.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/matching.hpp"

namespace matchbound {

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "L" : "R"; }
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

/// Which implementation answers visibility queries. BruteForce tests every
/// edge directly with exact rational heights and never builds cells.
enum class VisibilityMode { Trapezoid, BruteForce };

/// q strictly above the line through e (q not an endpoint of e).
inline bool point_above(const PointSet& ps, std::size_t q, const Edge& e) {
  return orientation(ps[e.u], ps[e.w], ps[q]) == Turn::CounterClockwise;
}

inline bool spans_strictly(const Edge& e, std::size_t q) { return e.u < q && q < e.w; }

namespace detail {

// Height of e at abscissa x as the fraction num / den with den > 0.
struct Height {
  __int128 num;
  __int128 den;
};

inline Height height_at(const PointSet& ps, const Edge& e, std::int64_t x) {
  const Point& a = ps[e.u];
  const Point& b = ps[e.w];
  const __int128 den = b.x - a.x;
  return {static_cast<__int128>(a.y) * den + static_cast<__int128>(b.y - a.y) * (x - a.x), den};
}

inline int compare(const Height& l, const Height& r) {
  const __int128 a = l.num * r.den, b = r.num * l.den;
  return a < b ? -1 : (a > b ? 1 : 0);
}

inline Height height_of_point(const Point& p) { return {p.y, 1}; }

}  // namespace detail

/// One trapezoid. Boundaries are indices into the matching's edge list
/// (nullopt = unbounded); walls are point indices (nullopt = at infinity).
struct Cell {
  std::optional<std::size_t> bottom;
  std::optional<std::size_t> top;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::vector<std::size_t> left_neighbors;
  std::vector<std::size_t> right_neighbors;
};

/// Maximal vertical segment through a point, clipped by the nearest edge
/// strictly below and above it.
struct Wall {
  std::optional<std::size_t> below;
  std::optional<std::size_t> above;
  std::vector<std::size_t> left_cells;
  std::vector<std::size_t> right_cells;
};

class Trapezoidation {
 public:
  Trapezoidation(const PointSet& ps, const Matching& m) : edges_(m.edges().begin(), m.edges().end()) {
    if (m.n() != ps.size()) throw UsageError("matching and point set sizes differ");
    build(ps, m);
  }

  std::size_t cell_count() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  const Wall& wall(std::size_t p) const { return walls_.at(p); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<Edge> edge_below(std::size_t p) const {
    const auto& w = wall(p);
    return w.below ? std::optional<Edge>(edges_[*w.below]) : std::nullopt;
  }
  std::optional<Edge> edge_above(std::size_t p) const {
    const auto& w = wall(p);
    return w.above ? std::optional<Edge>(edges_[*w.above]) : std::nullopt;
  }

  /// q's wall ends on edge index e, i.e. q is vertically visible from e.
  bool wall_touches(std::size_t q, std::size_t e) const {
    const auto& w = wall(q);
    return w.below == e || w.above == e;
  }

 private:
  std::size_t new_cell(std::optional<std::size_t> bottom, std::optional<std::size_t> top,
                       std::optional<std::size_t> left) {
    cells_.push_back(Cell{bottom, top, left, std::nullopt, {}, {}});
    return cells_.size() - 1;
  }

  // Sweep left to right keeping the spanning edges ordered bottom to top.
  // Each slab piece carries the id of the cell it belongs to; pieces pass
  // through a point's abscissa unchanged unless that point's wall cuts them.
  void build(const PointSet& ps, const Matching& m) {
    const std::size_t n = ps.size();
    walls_.assign(n, Wall{});
    std::vector<std::size_t> active;          // edge indices, bottom to top
    std::vector<std::size_t> piece_cell{new_cell(std::nullopt, std::nullopt, std::nullopt)};

    for (std::size_t s = 0; s < n; ++s) {
      std::optional<std::size_t> ending, starting;
      if (auto e = m.edge_of(s)) {
        const std::size_t idx = *m.index_of(*e);
        (e->w == s ? ending : starting) = idx;
      }

      std::vector<std::size_t> common;
      common.reserve(active.size());
      for (auto idx : active)
        if (idx != ending) common.push_back(idx);

      const auto t = static_cast<std::size_t>(
          std::partition_point(common.begin(), common.end(),
                               [&](std::size_t idx) { return point_above(ps, s, edges_[idx]); }) -
          common.begin());

      Wall& wall = walls_[s];
      if (t > 0) wall.below = common[t - 1];
      if (t < common.size()) wall.above = common[t];

      // Left slab pieces grouped by gap of `common`. With an ending edge the
      // gap t is split into two pieces (below and above that edge).
      std::vector<std::size_t> left_gap_cells;
      std::vector<std::size_t> carried(common.size() + 1);
      for (std::size_t j = 0; j < piece_cell.size(); ++j) {
        std::size_t gap = j;
        if (ending && j > t) gap = j - 1;
        if (gap == t) {
          left_gap_cells.push_back(piece_cell[j]);
        } else {
          carried[gap] = piece_cell[j];
        }
      }

      for (auto c : left_gap_cells) cells_[c].right = s;

      std::vector<std::size_t> right_gap_cells;
      const std::optional<std::size_t> gap_bottom = wall.below;
      const std::optional<std::size_t> gap_top = wall.above;
      if (starting) {
        right_gap_cells.push_back(new_cell(gap_bottom, starting, s));
        right_gap_cells.push_back(new_cell(starting, gap_top, s));
      } else {
        right_gap_cells.push_back(new_cell(gap_bottom, gap_top, s));
      }

      for (auto l : left_gap_cells) {
        for (auto r : right_gap_cells) {
          cells_[l].right_neighbors.push_back(r);
          cells_[r].left_neighbors.push_back(l);
        }
      }
      wall.left_cells = left_gap_cells;
      wall.right_cells = right_gap_cells;

      std::vector<std::size_t> next_pieces;
      next_pieces.reserve(common.size() + 2);
      for (std::size_t g = 0; g <= common.size(); ++g) {
        if (g == t) {
          next_pieces.insert(next_pieces.end(), right_gap_cells.begin(), right_gap_cells.end());
        } else {
          next_pieces.push_back(carried[g]);
        }
      }
      piece_cell = std::move(next_pieces);

      active = std::move(common);
      if (starting) active.insert(active.begin() + static_cast<std::ptrdiff_t>(t), *starting);
    }
  }

  std::vector<Edge> edges_;
  std::vector<Cell> cells_;
  std::vector<Wall> walls_;
};

inline Trapezoidation build_trapezoidation(const PointSet& ps, const Matching& m) { return {ps, m}; }

namespace detail {

inline std::size_t require_edge(const Matching& m, const Edge& e) {
  auto idx = m.index_of(e);
  if (!idx) throw UsageError("edge is not part of the matching");
  return *idx;
}

// Direct test: x-slab condition, then no other edge strictly between q and e
// on the vertical line x = x(q).
inline bool visible_brute_force(const PointSet& ps, const Matching& m, std::size_t q, const Edge& e) {
  if (!spans_strictly(e, q)) return false;
  const std::int64_t x = ps[q].x;
  const Height hq = height_of_point(ps[q]);
  const Height he = height_at(ps, e, x);
  const bool q_above = compare(hq, he) > 0;
  for (const auto& f : m.edges()) {
    if (f == e || !spans_strictly(f, q)) continue;
    const Height hf = height_at(ps, f, x);
    const bool between = q_above ? (compare(hf, he) > 0 && compare(hf, hq) < 0)
                                 : (compare(hf, hq) > 0 && compare(hf, he) < 0);
    if (between) return false;
  }
  return true;
}

inline bool counts_for_rank(const Matching& m, std::size_t q, bool left_endpoint_rank) {
  auto e = m.edge_of(q);
  if (!e) return true;
  return left_endpoint_rank ? e->u == q : e->w == q;
}

}  // namespace detail

/// q is vertically visible from e (an edge of m, q not an endpoint of e),
/// from either side of e.
inline bool vertically_visible(std::size_t q, const Edge& e, const PointSet& ps, const Matching& m,
                               VisibilityMode mode = VisibilityMode::Trapezoid) {
  if (q == e.u || q == e.w) throw UsageError("vertically_visible: query point is an endpoint of the edge");
  const std::size_t idx = detail::require_edge(m, e);
  if (mode == VisibilityMode::BruteForce) return detail::visible_brute_force(ps, m, q, e);
  return Trapezoidation(ps, m).wall_touches(q, idx);
}

namespace detail {

inline std::size_t rank_with(const PointSet& ps, const Matching& m, std::size_t p, VisibilityMode mode,
                             const Trapezoidation* trap) {
  auto e = m.edge_of(p);
  if (!e) return 0;
  const bool left = e->u == p;
  const std::size_t idx = *m.index_of(*e);
  std::size_t r = 0;
  for (std::size_t q = e->u + 1; q < e->w; ++q) {
    if (!counts_for_rank(m, q, left)) continue;
    const bool vis =
        mode == VisibilityMode::BruteForce ? visible_brute_force(ps, m, q, *e) : trap->wall_touches(q, idx);
    if (vis) ++r;
  }
  return r;
}

}  // namespace detail

/// 0 when p is unmatched; otherwise the number of isolated points and
/// same-handed endpoints vertically visible from p's edge.
inline std::size_t rank(std::size_t p, const PointSet& ps, const Matching& m,
                        VisibilityMode mode = VisibilityMode::Trapezoid) {
  if (p >= ps.size()) throw UsageError("rank: point index out of range");
  if (m.is_isolated(p)) return 0;
  if (mode == VisibilityMode::BruteForce) return detail::rank_with(ps, m, p, mode, nullptr);
  const Trapezoidation trap(ps, m);
  return detail::rank_with(ps, m, p, mode, &trap);
}

struct RankProfile {
  std::vector<std::size_t> d;  // per point
  std::vector<std::size_t> v;  // v[i] = #points of rank i; size n + 1

  std::size_t v_at(std::size_t i) const { return i < v.size() ? v[i] : 0; }
};

inline RankProfile rank_profile(const PointSet& ps, const Matching& m,
                                VisibilityMode mode = VisibilityMode::Trapezoid) {
  RankProfile rp{std::vector<std::size_t>(ps.size(), 0), std::vector<std::size_t>(ps.size() + 1, 0)};
  std::optional<Trapezoidation> trap;
  if (mode == VisibilityMode::Trapezoid) trap.emplace(ps, m);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    rp.d[p] = detail::rank_with(ps, m, p, mode, trap ? &*trap : nullptr);
    ++rp.v[rp.d[p]];
  }
  return rp;
}

/// Sum over i = 0..k of (k - i) * v_i.
inline long long weighted_rank_sum(const RankProfile& rp, std::size_t k) {
  long long s = 0;
  for (std::size_t i = 0; i <= k; ++i) s += static_cast<long long>(k - i) * static_cast<long long>(rp.v_at(i));
  return s;
}

namespace detail {

inline void require_isolated(const Matching& m, std::size_t p, const char* what) {
  if (p >= m.n()) throw UsageError(std::string(what) + ": point index out of range");
  if (!m.is_isolated(p)) throw UsageError(std::string(what) + ": point is matched");
}

}  // namespace detail

/// Defining point of the far wall of the cell next to p's wall on `side`.
inline std::optional<std::size_t> bifurcation_point(const Trapezoidation& trap, const Matching& m, std::size_t p,
                                                    Side side) {
  detail::require_isolated(m, p, "bifurcation_point");
  const Wall& w = trap.wall(p);
  const auto& adj = side == Side::Left ? w.left_cells : w.right_cells;
  const Cell& c = trap.cell(adj.front());
  return side == Side::Left ? c.left : c.right;
}

inline std::optional<std::size_t> bifurcation_point(std::size_t p, Side side, const PointSet& ps, const Matching& m) {
  detail::require_isolated(m, p, "bifurcation_point");
  return bifurcation_point(Trapezoidation(ps, m), m, p, side);
}

/// Every point whose wall is reachable from p by crossing walls towards
/// `side` only, nearest first. The walk branches where a wall has two cells
/// on the far side; the result is the union of all branches.
inline std::vector<std::size_t> sees_walk(const Trapezoidation& trap, const Matching& m, std::size_t p, Side side) {
  detail::require_isolated(m, p, "sees_walk");
  const Wall& w = trap.wall(p);
  std::queue<std::size_t> todo;
  std::vector<bool> seen_cell(trap.cell_count(), false);
  for (auto c : side == Side::Left ? w.left_cells : w.right_cells) {
    todo.push(c);
    seen_cell[c] = true;
  }
  std::set<std::size_t> reached;
  while (!todo.empty()) {
    const Cell& c = trap.cell(todo.front());
    todo.pop();
    const auto far = side == Side::Left ? c.left : c.right;
    if (!far) continue;
    reached.insert(*far);
    for (auto nb : side == Side::Left ? c.left_neighbors : c.right_neighbors) {
      if (!seen_cell[nb]) {
        seen_cell[nb] = true;
        todo.push(nb);
      }
    }
  }
  std::vector<std::size_t> out(reached.begin(), reached.end());
  if (side == Side::Left) std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> sees_walk(std::size_t p, Side side, const PointSet& ps, const Matching& m) {
  detail::require_isolated(m, p, "sees_walk");
  return sees_walk(Trapezoidation(ps, m), m, p, side);
}

}  // namespace matchbound
