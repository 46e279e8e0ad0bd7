#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "matchbound/geom.hpp"

using namespace matchbound;

namespace {

// Independent sign of (q-p) x (r-p) in arbitrary precision.
int oracle_sign(const Point& p, const Point& q, const Point& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int v = (cpp_int(q.x) - p.x) * (cpp_int(r.y) - p.y) - (cpp_int(q.y) - p.y) * (cpp_int(r.x) - p.x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// Dense-sample oracle: cd lies strictly above ab at every sampled x of the
// common x-range.
bool sampled_strictly_above(Point a, Point b, Point c, Point d) {
  constexpr int kSteps = 10000;
  auto y_at = [](Point p, Point q, double x) {
    return static_cast<double>(p.y) + (x - p.x) * static_cast<double>(q.y - p.y) / static_cast<double>(q.x - p.x);
  };
  const double lo = std::max(std::min(a.x, b.x), std::min(c.x, d.x));
  const double hi = std::min(std::max(a.x, b.x), std::max(c.x, d.x));
  for (int i = 0; i <= kSteps; ++i) {
    const double x = lo + (hi - lo) * i / kSteps;
    if (y_at(c, d, x) <= y_at(a, b, x)) return false;
  }
  return true;
}

}  // namespace

TEST(Orientation, CounterClockwiseTriple) {
  EXPECT_EQ(orientation({0, 0}, {2, 0}, {0, 3}), Turn::CounterClockwise);
}

TEST(Orientation, SwapGivesClockwise) { EXPECT_EQ(orientation({0, 0}, {0, 3}, {2, 0}), Turn::Clockwise); }

TEST(Orientation, NearBoundCoordinatesMatchOracle) {
  const Point p{0, 0}, q{1048575, 1}, r{2097150, 3};
  EXPECT_EQ(oracle_sign(p, q, r), 1);
  EXPECT_EQ(orientation(p, q, r), Turn::CounterClockwise);
}

TEST(Orientation, CollinearThrows) { EXPECT_THROW(orientation({0, 0}, {1, 1}, {2, 2}), DegenerateInputError); }

TEST(Orientation, ExtremeCornersMatchOracle) {
  const std::int64_t L = kCoordinateLimit;
  const std::vector<Point> pts{{-L, -L}, {L, L - 1}, {-L + 1, L}, {L, -L}, {0, 1}, {-L, L}};
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& c : pts) {
        if (a == b || b == c || a == c) continue;
        const int s = oracle_sign(a, b, c);
        if (s == 0) {
          EXPECT_TRUE(collinear(a, b, c));
          continue;
        }
        EXPECT_EQ(orientation(a, b, c), s > 0 ? Turn::CounterClockwise : Turn::Clockwise);
      }
}

TEST(Orientation, CyclicAndSwapSymmetryOnRandomSets) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PointSet ps = generate_point_set(9, seed, 1000);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j)
        for (std::size_t k = 0; k < ps.size(); ++k) {
          if (i == j || j == k || i == k) continue;
          const Turn t = orientation(ps[i], ps[j], ps[k]);
          EXPECT_EQ(t, orientation(ps[j], ps[k], ps[i]));
          EXPECT_NE(t, orientation(ps[i], ps[k], ps[j]));
          EXPECT_EQ(oracle_sign(ps[i], ps[j], ps[k]) > 0, t == Turn::CounterClockwise);
        }
  }
}

TEST(SegmentsCross, XConfiguration) { EXPECT_TRUE(segments_properly_cross({0, 0}, {2, 2}, {0, 2}, {2, 0})); }

TEST(SegmentsCross, DisjointSlabs) { EXPECT_FALSE(segments_properly_cross({0, 0}, {1, 5}, {2, 0}, {3, 5})); }

TEST(SegmentsCross, StrictlyAboveAgreesWithSampling) {
  EXPECT_FALSE(segments_properly_cross({0, 0}, {10, 1}, {1, 4}, {9, 2}));
  EXPECT_TRUE(sampled_strictly_above({0, 0}, {10, 1}, {1, 4}, {9, 2}));
}

TEST(SegmentsCross, SharedEndpointIsUsageError) {
  EXPECT_THROW(segments_properly_cross({0, 0}, {2, 2}, {2, 2}, {3, 0}), UsageError);
}

TEST(SegmentsCross, SymmetricOnRandomSets) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet ps = generate_point_set(8, seed, 50);
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = a + 1; b < 8; ++b)
        for (std::size_t c = 0; c < 8; ++c)
          for (std::size_t d = c + 1; d < 8; ++d) {
            if (c == a || c == b || d == a || d == b) continue;
            const bool x = segments_properly_cross(ps[a], ps[b], ps[c], ps[d]);
            EXPECT_EQ(x, segments_properly_cross(ps[c], ps[d], ps[a], ps[b]));
            EXPECT_EQ(x, segments_properly_cross(ps[b], ps[a], ps[c], ps[d]));
            EXPECT_EQ(x, segments_properly_cross(ps[a], ps[b], ps[d], ps[c]));
          }
  }
}

TEST(GeneralPosition, CollinearTripleReported) {
  const std::vector<Point> pts{{0, 0}, {1, 1}, {2, 2}};
  const auto rep = validate_general_position(pts);
  ASSERT_EQ(rep.collinear_triples.size(), 1u);
  EXPECT_EQ(rep.collinear_triples[0], (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_FALSE(rep.ok());
}

TEST(GeneralPosition, DuplicateXReported) {
  const std::vector<Point> pts{{0, 0}, {0, 5}};
  const auto rep = validate_general_position(pts);
  ASSERT_EQ(rep.duplicate_x.size(), 1u);
  EXPECT_EQ(rep.duplicate_x[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(GeneralPosition, ValidTripleOk) {
  const std::vector<Point> pts{{0, 0}, {3, 1}, {1, 4}};
  EXPECT_TRUE(validate_general_position(pts).ok());
}

TEST(PointSetType, SortsByX) {
  const PointSet ps({{5, 0}, {-1, 2}, {3, 7}});
  EXPECT_EQ(ps[0], (Point{-1, 2}));
  EXPECT_EQ(ps[1], (Point{3, 7}));
  EXPECT_EQ(ps[2], (Point{5, 0}));
}

TEST(PointSetType, RejectsOutOfBound) {
  EXPECT_THROW(PointSet({{kCoordinateLimit + 1, 0}}), UsageError);
  EXPECT_NO_THROW(PointSet({{kCoordinateLimit, -kCoordinateLimit}}));
}

TEST(PointSetType, RejectsEmpty) { EXPECT_THROW(PointSet(std::vector<Point>{}), UsageError); }

TEST(Generate, SinglePoint) {
  for (std::uint64_t seed : {0ull, 7ull, 123456789ull}) EXPECT_EQ(generate_point_set(1, seed, 10).size(), 1u);
}

TEST(Generate, Deterministic) { EXPECT_EQ(generate_point_set(5, 42, 1000), generate_point_set(5, 42, 1000)); }

TEST(Generate, HundredSeedsInGeneralPosition) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PointSet ps = generate_point_set(9, seed, 1000);
    EXPECT_TRUE(validate_general_position(ps.points()).ok());
    for (const auto& p : ps) {
      EXPECT_LE(std::abs(p.x), 1000);
      EXPECT_LE(std::abs(p.y), 1000);
    }
  }
}

TEST(Generate, InfeasibleExhaustsRetries) { EXPECT_THROW(generate_point_set(4, 1, 1), DegenerateInputError); }

TEST(Generate, ConvexPositionIsValid) {
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(convex_position(n).size(), n);
}

TEST(TextFormat, ReadsTwoPoints) {
  const PointSet ps = read_point_set("0 0\n2 3\n");
  EXPECT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[1], (Point{2, 3}));
}

TEST(TextFormat, RoundTripIsCanonical) {
  const std::string t = "5 1\n-3 4\n0 -2\n";
  const std::string canon = write_point_set(read_point_set(t));
  EXPECT_EQ(canon, "-3 4\n0 -2\n5 1\n");
  EXPECT_EQ(write_point_set(read_point_set(canon)), canon);
}

TEST(TextFormat, DuplicateXNamesLines) {
  try {
    read_point_set("0 0\n0 1\n");
    FAIL() << "expected rejection";
  } catch (const DegenerateInputError& e) {
    EXPECT_NE(std::string(e.what()).find("lines 1 and 2"), std::string::npos) << e.what();
  }
}

TEST(TextFormat, ParseErrorCarriesLine) {
  try {
    read_point_set("0 0\n1 x\n");
    FAIL() << "expected parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(read_point_set("0  0\n"), ParseError);
  EXPECT_THROW(read_point_set("0 0\r\n"), ParseError);
  EXPECT_THROW(read_point_set("1 2 3\n"), ParseError);
}

TEST(TextFormat, CollinearRejected) { EXPECT_THROW(read_point_set("0 0\n1 1\n2 2\n"), DegenerateInputError); }

TEST(Perturb, ExplicitOnly) {
  const std::vector<Point> pts{{0, 0}, {10, 3}, {20, -4}};
  const PointSet a = perturb(pts, 3), b = perturb(pts, 3);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(std::abs(a[i].x - pts[i].x), 1);
    EXPECT_LE(std::abs(a[i].y - pts[i].y), 1);
  }
}

TEST(Digest, StableAndContentBased) {
  EXPECT_EQ(digest(read_point_set("1 2\n3 4\n")), digest(read_point_set("3 4\n1 2\n")));
  EXPECT_NE(digest(read_point_set("1 2\n3 4\n")), digest(read_point_set("1 2\n3 5\n")));
  EXPECT_EQ(digest(read_point_set("1 2\n")).size(), 16u);
}
