#include <gtest/gtest.h>

#include "matchbound/insertion.hpp"

using namespace matchbound;

namespace {

PointSet mirrored(const PointSet& ps) {
  std::vector<Point> out;
  for (const auto& p : ps) out.push_back({-p.x, p.y});
  return PointSet(out);
}

Matching mirrored(const Matching& m) {
  const std::size_t n = m.n();
  std::vector<Edge> es;
  for (const auto& e : m.edges()) es.push_back({n - 1 - e.w, n - 1 - e.u});
  return Matching::from_edges(n, es);
}

bool contains_all(const Matching& big, const Matching& small) {
  for (const auto& e : small.edges())
    if (!big.index_of(e)) return false;
  return true;
}

}  // namespace

TEST(Profile, TwoPointsSingleInsertion) {
  const PointSet ps({{0, 0}, {1, 1}});
  const auto prof = insertion_profile(0, ps, Matching(2));
  EXPECT_EQ(prof.r[0], 1u);
  EXPECT_EQ(prof.insertions(), 1u);
  EXPECT_EQ(prof.l[0], 0u);
}

TEST(Profile, ApexOverTwoPoints) {
  const PointSet ps({{0, 0}, {4, 0}, {2, 3}});
  const std::size_t apex = 1;
  ASSERT_EQ(ps[apex], (Point{2, 3}));
  // Each edge from the apex spans only half the base, so the other base
  // point is outside its x-range and nothing is visible: both ranks are 0.
  const auto prof = insertion_profile(apex, ps, Matching(3));
  EXPECT_EQ(prof.h[0], 2u);
  EXPECT_EQ(prof.h[1], 0u);
  EXPECT_EQ(prof.l[0], 1u);
  EXPECT_EQ(prof.r[0], 1u);
  for (std::size_t q : {0u, 2u})
    EXPECT_EQ(rank(apex, ps, Matching(3).with({std::min(q, apex), std::max(q, apex)}), VisibilityMode::BruteForce), 0u);
}

TEST(Profile, BaseEndpointSeesApexOnce) {
  const PointSet ps({{0, 0}, {4, 0}, {2, 3}});
  // (4,0)-(0,0) has the apex above its interior; (4,0)-(2,3) sees nothing.
  const auto prof = insertion_profile(2, ps, Matching(3));
  EXPECT_EQ(prof.h[0], 1u);
  EXPECT_EQ(prof.h[1], 1u);
  EXPECT_EQ(prof.l[0], 1u);
  EXPECT_EQ(prof.l[1], 1u);
  EXPECT_EQ(prof.r[0] + prof.r[1], 0u);
}

TEST(Profile, MatchedPointIsUsageError) {
  const PointSet ps({{0, 0}, {1, 1}});
  const Matching m = Matching(2).with({0, 1});
  EXPECT_THROW(insertion_profile(0, ps, m), UsageError);
  EXPECT_THROW(extract_constellation(0, Side::Left, ps, m), UsageError);
  EXPECT_THROW(is_good_point(0, ps, m), UsageError);
}

TEST(WeightedSum, Examples) {
  InsertionProfile prof;
  prof.h = {1, 0, 0, 0, 0};
  EXPECT_EQ(weighted_sum(prof, 4, SideSel::Both), 4);
  prof.l = {0, 2, 2, 2};
  EXPECT_EQ(weighted_sum(prof, 4, SideSel::Left), 12);
  prof.l = {0, 0, 3, 5};
  EXPECT_EQ(weighted_sum(prof, 4, SideSel::Left), 11);
  prof.l = {0, 1, 3, 2};
  EXPECT_EQ(weighted_sum(prof, 4, SideSel::Left), 11);
}

TEST(WeightedSum, RejectsUnsupportedOrder) {
  InsertionProfile prof;
  EXPECT_THROW(weighted_sum(prof, 2, SideSel::Both), UsageError);
  EXPECT_THROW(weighted_sum(prof, 6, SideSel::Both), UsageError);
}

TEST(ConstellationTest, TwoPointsLeft) {
  const PointSet ps({{0, 0}, {1, 1}});
  const auto c = extract_constellation(1, Side::Left, ps, Matching(2));
  EXPECT_EQ(c.bifurcation, 0u);
  EXPECT_FALSE(c.bifurcation_edge);
  EXPECT_EQ(c.members, (std::vector<std::size_t>{0}));
  EXPECT_EQ(classify_constellation(c), ConstellationClass::IsolatedBifurcation);
  EXPECT_EQ(classify_constellation(extract_constellation(1, Side::Right, ps, Matching(2))),
            ConstellationClass::Unbounded);
}

TEST(ConstellationTest, BelowEdge) {
  const PointSet ps({{0, 3}, {5, 0}, {10, 3}});
  const Matching m = Matching(3).with({0, 2});
  const auto c = extract_constellation(1, Side::Left, ps, m);
  EXPECT_EQ(c.bifurcation, 0u);
  EXPECT_EQ(c.bifurcation_edge, (Edge{0, 2}));
  EXPECT_TRUE(c.members.empty());
  EXPECT_EQ(classify_constellation(c), ConstellationClass::Good);
  EXPECT_FALSE(is_good_point(1, ps, m));
}

TEST(ConstellationTest, MemberOutsideSpanIsBad) {
  Constellation c;
  c.bifurcation = 2;
  c.bifurcation_edge = Edge{2, 5};
  c.members = {1, 3};
  EXPECT_EQ(classify_constellation(c), ConstellationClass::Bad);
  c.members = {3, 4};
  EXPECT_EQ(classify_constellation(c), ConstellationClass::Good);
}

TEST(GoodPoint, TwoPoints) {
  const PointSet ps({{0, 0}, {1, 1}});
  EXPECT_TRUE(is_good_point(0, ps, Matching(2)));
  EXPECT_TRUE(is_good_point(1, ps, Matching(2)));
}

TEST(Invariants, ProfilesAndConstellations) {
  for (std::size_t n = 2; n <= 7; ++n)
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const PointSet ps = generate_point_set(n, seed, 1000);
      const auto all = all_matchings(ps);
      for (const auto& m : all)
        for (auto p : isolated_vertices(m)) {
          const auto a = analyze_point(p, ps, m);
          std::size_t expected = 0;
          for (const auto& big : all)
            if (big.size() == m.size() + 1 && !big.is_isolated(p) && contains_all(big, m)) ++expected;
          EXPECT_EQ(a.profile.insertions(), expected);
          for (std::size_t i = 0; i < a.profile.h.size(); ++i)
            EXPECT_EQ(a.profile.h[i], a.profile.l[i] + a.profile.r[i]);
          for (Side s : {Side::Left, Side::Right}) {
            const auto& c = a.constellation(s);
            for (auto v : c.members) EXPECT_TRUE(m.is_isolated(v));
            if (c.bifurcation_edge)
              EXPECT_TRUE(c.bifurcation_edge->u == *c.bifurcation || c.bifurcation_edge->w == *c.bifurcation);
          }
        }
    }
}

TEST(Invariants, BruteForceVisibilityAgrees) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PointSet ps = generate_point_set(6, seed, 1000);
    for (const auto& m : all_matchings(ps))
      for (auto p : isolated_vertices(m)) {
        const auto a = analyze_point(p, ps, m, VisibilityMode::Trapezoid);
        const auto b = analyze_point(p, ps, m, VisibilityMode::BruteForce);
        EXPECT_EQ(a.profile.h, b.profile.h);
        EXPECT_EQ(a.left.members, b.left.members);
        EXPECT_EQ(a.right.members, b.right.members);
      }
  }
}

TEST(Invariants, MirrorSwapsSides) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const PointSet ps = generate_point_set(7, seed, 1000);
    const PointSet mps = mirrored(ps);
    const std::size_t n = ps.size();
    for (const auto& m : all_matchings(ps)) {
      const Matching mm = mirrored(m);
      for (auto p : isolated_vertices(m)) {
        const auto a = analyze_point(p, ps, m);
        const auto b = analyze_point(n - 1 - p, mps, mm);
        EXPECT_EQ(a.profile.l, b.profile.r);
        EXPECT_EQ(a.profile.r, b.profile.l);
        EXPECT_EQ(weighted_sum(a.profile, 4, SideSel::Both), weighted_sum(b.profile, 4, SideSel::Both));
        EXPECT_EQ(classify_constellation(a.left), classify_constellation(b.right));
      }
    }
  }
}

// Pointwise bounds over a small exhaustive corpus. The verifier runs the same
// checks at scale; this keeps an independent copy close to the definitions.
TEST(Bounds, PointwiseCorpus) {
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < (n == 8 ? 6u : 12u); ++seed) {
      const PointSet ps = generate_point_set(n, seed, 1000);
      for (const auto& m : all_matchings(ps)) {
        const Trapezoidation t(ps, m);
        for (auto p : isolated_vertices(m)) {
          const auto a = analyze_point(p, ps, m, t);
          EXPECT_LE(weighted_sum(a.profile, 4, SideSel::Both), 24);
          EXPECT_LE(weighted_sum(a.profile, 5, SideSel::Both), 48);
          for (Side s : {Side::Left, Side::Right}) {
            const SideSel sel = s == Side::Left ? SideSel::Left : SideSel::Right;
            EXPECT_LE(weighted_sum(a.profile, 3, sel), 6);
            const auto cls = classify_constellation(a.constellation(s));
            if (cls == ConstellationClass::IsolatedBifurcation) {
              EXPECT_LE(weighted_sum(a.profile, 4, sel), 10);
              EXPECT_LE(weighted_sum(a.profile, 5, sel), 17);
              EXPECT_LE(a.profile.side(s)[0], 1u);
            }
            if (weighted_sum(a.profile, 4, sel) >= 11) EXPECT_TRUE(a.constellation(s).bifurcation_edge);
          }
          if (is_good_point(t, m, p)) {
            EXPECT_LE(weighted_sum(a.profile, 4, SideSel::Both), 22);
            EXPECT_LE(weighted_sum(a.profile, 5, SideSel::Both), 41);
          }
        }
      }
    }
}

TEST(Reconstruction, PreconditionsChecked) {
  const PointSet ps({{0, 3}, {5, 0}, {10, 3}});
  const Matching m = Matching(3).with({0, 2});
  EXPECT_THROW(check_unique_edge_reconstruction(0, 1, ps, m), PreconditionError);
  // Nothing separates the two apexes when no edge is present.
  const PointSet four({{0, 0}, {3, 5}, {6, 1}, {9, 4}});
  EXPECT_THROW(check_unique_edge_reconstruction(1, 2, four, Matching(4)), PreconditionError);
  EXPECT_THROW(check_unique_edge_reconstruction(1, 1, four, Matching(4)), UsageError);
}

TEST(Reconstruction, SharedBifurcationUniqueAndRoundTrip) {
  std::size_t tried = 0;
  for (std::size_t n = 4; n <= 7; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PointSet ps = generate_point_set(n, seed, 1000);
      for (const auto& m : all_matchings(ps)) {
        const auto iso = isolated_vertices(m);
        for (auto a : iso)
          for (auto b : iso) {
            if (a == b) continue;
            try {
              const auto out = check_unique_edge_reconstruction(a, b, ps, m);
              ++tried;
              EXPECT_TRUE(out.unique) << write_point_set(ps) << write_matching(m) << a << " " << b;
              EXPECT_TRUE(out.rule_reproduces);
              EXPECT_EQ(m.without(out.removed_edge).with(*out.rule_edge), m);
            } catch (const PreconditionError&) {
            }
          }
      }
    }
  EXPECT_GT(tried, 0u);
}

TEST(BadConstellation, GoodInputRejected) {
  const PointSet ps({{0, 3}, {5, 0}, {10, 3}});
  const Matching m = Matching(3).with({0, 2});
  EXPECT_THROW(check_bad_constellation_removal(1, Side::Left, ps, m), PreconditionError);
}

TEST(BadConstellation, UniqueAndRoundTrip) {
  std::size_t tried = 0;
  for (std::size_t n = 4; n <= 7; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PointSet ps = generate_point_set(n, seed, 1000);
      for (const auto& m : all_matchings(ps))
        for (auto p : isolated_vertices(m))
          for (Side s : {Side::Left, Side::Right}) {
            if (classify_constellation(extract_constellation(p, s, ps, m)) != ConstellationClass::Bad) continue;
            const auto out = check_bad_constellation_removal(p, s, ps, m);
            ++tried;
            EXPECT_TRUE(out.unique) << write_point_set(ps) << write_matching(m) << p;
            EXPECT_TRUE(out.rule_reproduces);
            EXPECT_GE(out.candidates_undirected, out.candidates);
            ASSERT_TRUE(out.rule_edge);
            EXPECT_EQ(m.without(out.removed_edge).with(*out.rule_edge), m);
          }
    }
  EXPECT_GT(tried, 0u);
}
