#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchbound/error.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/matching.hpp"
#include "matchbound/trapezoid.hpp"

namespace matchbound {

enum class SideSel { Left, Right, Both };

/// Insertion counts at an isolated point p: h[i] = number of insertable edges
/// (p, q) after which p has rank i, split into l (q left of p) and r.
struct InsertionProfile {
  std::size_t point = 0;
  std::vector<std::size_t> h, l, r;

  const std::vector<std::size_t>& side(Side s) const { return s == Side::Left ? l : r; }
  std::size_t insertions() const {
    std::size_t t = 0;
    for (auto c : h) t += c;
    return t;
  }
};

/// Sum over i = 0..k of (k - i) * counts[i].
inline long long weighted(std::span<const std::size_t> counts, std::size_t k) {
  long long s = 0;
  for (std::size_t i = 0; i <= k && i < counts.size(); ++i)
    s += static_cast<long long>(k - i) * static_cast<long long>(counts[i]);
  return s;
}

inline long long weighted_sum(const InsertionProfile& prof, std::size_t k, SideSel side) {
  if (k < 3 || k > 5) throw UsageError("weighted_sum: k must be 3, 4 or 5");
  switch (side) {
    case SideSel::Left: return weighted(prof.l, k);
    case SideSel::Right: return weighted(prof.r, k);
    case SideSel::Both: break;
  }
  return weighted(prof.h, k);
}

enum class ConstellationClass { IsolatedBifurcation, Good, Bad, Unbounded };

inline const char* to_string(ConstellationClass c) {
  switch (c) {
    case ConstellationClass::IsolatedBifurcation: return "isolated-bifurcation";
    case ConstellationClass::Good: return "good";
    case ConstellationClass::Bad: return "bad";
    case ConstellationClass::Unbounded: return "unbounded";
  }
  return "?";
}

/// One-sided structure at an isolated point. `targets` are the isolated
/// points p can be joined to on this side; `contributors` are the isolated
/// points visible from at least one such candidate edge. members is their
/// union.
struct Constellation {
  std::size_t point = 0;
  Side side = Side::Left;
  std::optional<std::size_t> bifurcation;
  std::optional<Edge> bifurcation_edge;
  std::vector<std::size_t> targets;
  std::vector<std::size_t> contributors;
  std::vector<std::size_t> members;
  std::vector<std::size_t> counts;  // l (or r) vector for this side
};

/// Profile and both constellations of one isolated point, computed together
/// because they share every augmented decomposition.
struct PointAnalysis {
  InsertionProfile profile;
  Constellation left, right;

  const Constellation& constellation(Side s) const { return s == Side::Left ? left : right; }
};

inline PointAnalysis analyze_point(std::size_t p, const PointSet& ps, const Matching& m, const Trapezoidation& trap,
                                   VisibilityMode mode = VisibilityMode::Trapezoid) {
  detail::require_isolated(m, p, "analyze_point");
  const std::size_t n = ps.size();
  PointAnalysis a;
  a.profile.point = p;
  a.profile.h.assign(n + 1, 0);
  a.profile.l.assign(n + 1, 0);
  a.profile.r.assign(n + 1, 0);

  for (Side s : {Side::Left, Side::Right}) {
    Constellation& c = s == Side::Left ? a.left : a.right;
    c.point = p;
    c.side = s;
    c.bifurcation = bifurcation_point(trap, m, p, s);
    if (c.bifurcation) c.bifurcation_edge = m.edge_of(*c.bifurcation);
  }

  std::vector<bool> contrib_l(n, false), contrib_r(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    if (!can_insert(ps, m, p, q)) continue;
    const Edge e = p < q ? Edge{p, q} : Edge{q, p};
    const Matching aug = m.with(e);
    const Side s = q < p ? Side::Left : Side::Right;
    std::optional<Trapezoidation> aug_trap;
    if (mode == VisibilityMode::Trapezoid) aug_trap.emplace(ps, aug);
    const std::size_t d = detail::rank_with(ps, aug, p, mode, aug_trap ? &*aug_trap : nullptr);
    ++a.profile.h[d];
    ++(s == Side::Left ? a.profile.l : a.profile.r)[d];
    (s == Side::Left ? a.left : a.right).targets.push_back(q);

    const std::size_t idx = *aug.index_of(e);
    auto& contrib = s == Side::Left ? contrib_l : contrib_r;
    for (std::size_t v = e.u + 1; v < e.w; ++v) {
      if (!aug.is_isolated(v)) continue;
      const bool vis = mode == VisibilityMode::BruteForce ? detail::visible_brute_force(ps, aug, v, e)
                                                          : aug_trap->wall_touches(v, idx);
      if (vis) contrib[v] = true;
    }
  }

  for (Side s : {Side::Left, Side::Right}) {
    Constellation& c = s == Side::Left ? a.left : a.right;
    const auto& contrib = s == Side::Left ? contrib_l : contrib_r;
    for (std::size_t v = 0; v < n; ++v)
      if (contrib[v]) c.contributors.push_back(v);
    std::set_union(c.targets.begin(), c.targets.end(), c.contributors.begin(), c.contributors.end(),
                   std::back_inserter(c.members));
    c.counts = a.profile.side(s);
  }
  return a;
}

inline PointAnalysis analyze_point(std::size_t p, const PointSet& ps, const Matching& m,
                                   VisibilityMode mode = VisibilityMode::Trapezoid) {
  detail::require_isolated(m, p, "analyze_point");
  return analyze_point(p, ps, m, Trapezoidation(ps, m), mode);
}

inline InsertionProfile insertion_profile(std::size_t p, const PointSet& ps, const Matching& m,
                                          VisibilityMode mode = VisibilityMode::Trapezoid) {
  detail::require_isolated(m, p, "insertion_profile");
  return analyze_point(p, ps, m, mode).profile;
}

inline Constellation extract_constellation(std::size_t p, Side side, const PointSet& ps, const Matching& m,
                                           VisibilityMode mode = VisibilityMode::Trapezoid) {
  detail::require_isolated(m, p, "extract_constellation");
  auto a = analyze_point(p, ps, m, mode);
  return side == Side::Left ? std::move(a.left) : std::move(a.right);
}

inline ConstellationClass classify_constellation(const Constellation& c) {
  if (!c.bifurcation) return ConstellationClass::Unbounded;
  if (!c.bifurcation_edge) return ConstellationClass::IsolatedBifurcation;
  const Edge e = *c.bifurcation_edge;
  for (auto v : c.members)
    if (!spans_strictly(e, v)) return ConstellationClass::Bad;
  return ConstellationClass::Good;
}

inline bool is_good_point(const Trapezoidation& trap, const Matching& m, std::size_t p) {
  detail::require_isolated(m, p, "is_good_point");
  for (Side s : {Side::Left, Side::Right}) {
    auto q = bifurcation_point(trap, m, p, s);
    if (q && m.is_isolated(*q)) return true;
  }
  return false;
}

inline bool is_good_point(std::size_t p, const PointSet& ps, const Matching& m) {
  detail::require_isolated(m, p, "is_good_point");
  return is_good_point(Trapezoidation(ps, m), m, p);
}

// ---------------------------------------------------------------------------
// Edge removal and reconstruction.

struct ReconstructionOutcome {
  Edge removed_edge;
  std::size_t candidates = 0;  // reinsertions consistent with what survives removal
  bool unique = false;         // candidates == 1
  std::optional<Edge> rule_edge;
  bool rule_reproduces = false;
  std::optional<std::size_t> observed_index;  // bad-constellation rule only
  std::size_t candidates_undirected = 0;      // bad-constellation rule only
};

namespace detail {

struct Bifurcations {
  std::optional<std::size_t> left, right;
  friend bool operator==(const Bifurcations&, const Bifurcations&) = default;
};

inline Bifurcations bifurcations(const Trapezoidation& t, const Matching& m, std::size_t p) {
  return {bifurcation_point(t, m, p, Side::Left), bifurcation_point(t, m, p, Side::Right)};
}

// Highest isolated point reached walking from `from` towards `side` without
// passing the wall of `limit`.
inline std::optional<std::size_t> highest_seen_before(const PointSet& ps, const Trapezoidation& t, const Matching& m,
                                                      std::size_t from, Side side, std::size_t limit,
                                                      std::size_t skip_a, std::size_t skip_b) {
  std::optional<std::size_t> best;
  for (auto v : sees_walk(t, m, from, side)) {
    const bool within = side == Side::Left ? v >= limit : v <= limit;
    if (!within || !m.is_isolated(v) || v == skip_a || v == skip_b) continue;
    if (!best || ps[v].y > ps[*best].y) best = v;
  }
  return best;
}

}  // namespace detail

/// a and b isolated with the edge directly below a passing above b, both
/// sharing the same left and the same right bifurcation point. Removes the edge directly below a and counts the
/// edges that could be put back without changing what a and b see.
inline ReconstructionOutcome check_unique_edge_reconstruction(std::size_t a, std::size_t b, const PointSet& ps,
                                                              const Matching& m) {
  if (a >= ps.size() || b >= ps.size() || a == b) throw UsageError("reconstruction: bad point indices");
  if (!m.is_isolated(a) || !m.is_isolated(b)) throw PreconditionError("a and b must both be isolated");
  const Trapezoidation trap(ps, m);
  const auto fa = detail::bifurcations(trap, m, a);
  const auto fb = detail::bifurcations(trap, m, b);
  const auto below_a = trap.edge_below(a);
  if (!below_a || !spans_strictly(*below_a, b) || point_above(ps, b, *below_a)) {
    throw PreconditionError("a and b must be separated by at least one edge");
  }
  if (!fa.left || !fa.right || fa != fb) {
    throw PreconditionError("a and b do not share both bifurcation points");
  }

  ReconstructionOutcome out;
  out.removed_edge = *below_a;
  const Matching reduced = m.without(*below_a);
  const Trapezoidation rtrap(ps, reduced);

  auto u = detail::highest_seen_before(ps, rtrap, reduced, a, Side::Left, *fa.left, a, b);
  auto w = detail::highest_seen_before(ps, rtrap, reduced, a, Side::Right, *fa.right, a, b);
  if (u && w && *u < a && a < *w) {
    out.rule_edge = Edge{*u, *w};
    out.rule_reproduces = *out.rule_edge == *below_a;
  }

  for (std::size_t x = 0; x < a; ++x) {
    if (x == b || !reduced.is_isolated(x)) continue;
    for (std::size_t y = a + 1; y < ps.size(); ++y) {
      if (y == b || !can_insert(ps, reduced, x, y)) continue;
      const Matching cand = reduced.with({x, y});
      const Trapezoidation ct(ps, cand);
      if (ct.edge_below(a) != Edge{x, y}) continue;
      if (detail::bifurcations(ct, cand, a) != fa || detail::bifurcations(ct, cand, b) != fb) continue;
      ++out.candidates;
    }
  }
  out.unique = out.candidates == 1;
  return out;
}

/// Removes the bifurcation edge (q, q') of a bad constellation and locates q'
/// by its position among the isolated points q sees towards q'.
inline ReconstructionOutcome check_bad_constellation_removal(std::size_t p, Side side, const PointSet& ps,
                                                             const Matching& m,
                                                             VisibilityMode mode = VisibilityMode::Trapezoid) {
  detail::require_isolated(m, p, "check_bad_constellation_removal");
  const Constellation c = extract_constellation(p, side, ps, m, mode);
  if (classify_constellation(c) != ConstellationClass::Bad) {
    throw PreconditionError("constellation is not bad");
  }
  const std::size_t q = *c.bifurcation;
  const Edge e = *c.bifurcation_edge;
  const std::size_t other = e.u == q ? e.w : e.u;

  ReconstructionOutcome out;
  out.removed_edge = e;
  const Matching reduced = m.without(e);
  const Trapezoidation rtrap(ps, reduced);
  // Position of r among the isolated points q reaches walking towards r.
  auto index_from_q = [&](std::size_t r) -> std::optional<std::size_t> {
    std::size_t i = 0;
    for (auto v : sees_walk(rtrap, reduced, q, r > q ? Side::Right : Side::Left)) {
      if (!reduced.is_isolated(v) || v == p) continue;
      if (v == r) return i;
      ++i;
    }
    return std::nullopt;
  };
  out.observed_index = index_from_q(other);
  if (out.observed_index) {
    out.rule_edge = q < other ? Edge{q, other} : Edge{other, q};
    out.rule_reproduces = *out.rule_edge == e;
  }

  // Valid reinsertions: (q, r) restores the same bad constellation at p and
  // r sits at the recorded index. Those on the same side of q as q' are the
  // candidates; the undirected count ignores the side.
  for (std::size_t r = 0; r < ps.size(); ++r) {
    if (!out.observed_index || r == q || r == p || !can_insert(ps, reduced, q, r)) continue;
    if (index_from_q(r) != out.observed_index) continue;
    const Edge f = q < r ? Edge{q, r} : Edge{r, q};
    const Matching cand = reduced.with(f);
    const Constellation cc = extract_constellation(p, side, ps, cand, mode);
    if (cc.bifurcation != q || cc.bifurcation_edge != f) continue;
    if (classify_constellation(cc) != ConstellationClass::Bad || cc.counts != c.counts) continue;
    ++out.candidates_undirected;
    if ((r > q) == (other > q)) ++out.candidates;
  }
  out.unique = out.candidates == 1;
  return out;
}

}  // namespace matchbound
