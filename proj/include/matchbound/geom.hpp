#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matchbound/error.hpp"

namespace matchbound {

inline constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 20;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

enum class Turn { CounterClockwise, Clockwise };

/// Twice the signed area of (p, q, r). Coordinates up to 2^20 keep every
/// product below 2^43; the 128-bit intermediate leaves room for callers that
/// have not validated their input yet.
inline __int128 cross(const Point& p, const Point& q, const Point& r) {
  const __int128 ax = q.x - p.x, ay = q.y - p.y;
  const __int128 bx = r.x - p.x, by = r.y - p.y;
  return ax * by - ay * bx;
}

inline bool collinear(const Point& p, const Point& q, const Point& r) { return cross(p, q, r) == 0; }

inline Turn orientation(const Point& p, const Point& q, const Point& r) {
  const __int128 d = cross(p, q, r);
  if (d == 0) {
    throw DegenerateInputError("collinear triple in orientation test");
  }
  return d > 0 ? Turn::CounterClockwise : Turn::Clockwise;
}

/// Open segments ab and cd share an interior point. The segments must not
/// share endpoints.
inline bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (a == c || a == d || b == c || b == d) {
    throw UsageError("segments_properly_cross: segments share an endpoint");
  }
  return orientation(a, b, c) != orientation(a, b, d) && orientation(c, d, a) != orientation(c, d, b);
}

struct GeneralPositionReport {
  std::vector<std::array<std::size_t, 3>> collinear_triples;
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_x;

  bool ok() const { return collinear_triples.empty() && duplicate_x.empty(); }
};

/// Indices refer to positions in `pts` as given (not sorted).
inline GeneralPositionReport validate_general_position(std::span<const Point> pts) {
  GeneralPositionReport rep;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i].x == pts[j].x) rep.duplicate_x.emplace_back(i, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        if (collinear(pts[i], pts[j], pts[k])) rep.collinear_triples.push_back({i, j, k});
      }
    }
  }
  return rep;
}

inline std::string describe(const GeneralPositionReport& rep, std::size_t index_base = 0) {
  std::ostringstream os;
  const char* sep = "";
  for (auto [i, j] : rep.duplicate_x) {
    os << sep << "duplicate x-coordinate at " << i + index_base << " and " << j + index_base;
    sep = "; ";
  }
  for (const auto& t : rep.collinear_triples) {
    os << sep << "collinear triple (" << t[0] + index_base << "," << t[1] + index_base << "," << t[2] + index_base
       << ")";
    sep = "; ";
  }
  return os.str();
}

/// Immutable point sequence sorted by strictly increasing x, in general
/// position. Indices everywhere else refer to this sorted order, so "left of"
/// is index comparison.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw UsageError("point set must contain at least one point");
    for (const auto& p : pts_) {
      if (p.x > kCoordinateLimit || p.x < -kCoordinateLimit || p.y > kCoordinateLimit || p.y < -kCoordinateLimit) {
        throw UsageError("coordinate magnitude exceeds 2^20");
      }
    }
    std::sort(pts_.begin(), pts_.end());
    const auto rep = validate_general_position(pts_);
    if (!rep.ok()) throw DegenerateInputError("point set not in general position: " + describe(rep));
  }

  std::size_t size() const noexcept { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  const Point& at(std::size_t i) const {
    if (i >= pts_.size()) throw UsageError("point index out of range");
    return pts_[i];
  }
  std::span<const Point> points() const noexcept { return pts_; }
  auto begin() const noexcept { return pts_.begin(); }
  auto end() const noexcept { return pts_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> pts_;
};

inline Turn orientation(const PointSet& ps, std::size_t a, std::size_t b, std::size_t c) {
  return orientation(ps[a], ps[b], ps[c]);
}

// ---------------------------------------------------------------------------
// Text format: one "x y" pair per line, single space, LF.

inline std::string write_point_set(const PointSet& ps) {
  std::string out;
  for (const auto& p : ps) {
    out += std::to_string(p.x);
    out += ' ';
    out += std::to_string(p.y);
    out += '\n';
  }
  return out;
}

namespace detail {

inline bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  if (s.front() == '+') return false;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace detail

/// Parses the point-set text format. Blank lines are ignored; everything else
/// must be exactly two integers separated by one space.
inline PointSet read_point_set(std::string_view text) {
  std::vector<Point> pts;
  std::vector<std::size_t> line_of;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw ParseError(line_no, "CR line endings are not accepted");
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw ParseError(line_no, "expected two integers separated by one space");
    Point p;
    if (!detail::parse_int(line.substr(0, sp), p.x) || !detail::parse_int(line.substr(sp + 1), p.y)) {
      throw ParseError(line_no, "expected two integers separated by one space");
    }
    if (std::max(std::abs(p.x), std::abs(p.y)) > kCoordinateLimit) {
      throw ParseError(line_no, "coordinate magnitude exceeds 2^20");
    }
    pts.push_back(p);
    line_of.push_back(line_no);
  }
  if (pts.empty()) throw ParseError(line_no, "no points");

  const auto rep = validate_general_position(pts);
  if (!rep.ok()) {
    std::ostringstream os;
    if (!rep.duplicate_x.empty()) {
      auto [i, j] = rep.duplicate_x.front();
      os << "duplicate x-coordinate on lines " << line_of[i] << " and " << line_of[j];
    } else {
      const auto& t = rep.collinear_triples.front();
      os << "collinear points on lines " << line_of[t[0]] << ", " << line_of[t[1]] << " and " << line_of[t[2]];
    }
    throw DegenerateInputError(os.str());
  }
  return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// Generation.

inline constexpr std::size_t kGenerationRetryLimit = 1'000'000;

namespace detail {

// Unbiased draw from [lo, hi] on the raw engine output; std distributions are
// implementation-defined and would break cross-platform reproducibility.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

inline bool compatible(std::span<const Point> pts, const Point& c) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].x == c.x) return false;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (collinear(pts[i], pts[j], c)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Uniform integer points in [-bound, bound]^2, redrawing any point that would
/// break general position. Deterministic in (n, seed, bound).
inline PointSet generate_point_set(std::size_t n, std::uint64_t seed, std::int64_t bound) {
  if (n < 1) throw UsageError("generate_point_set: n must be at least 1");
  if (bound < 0 || bound > kCoordinateLimit) throw UsageError("generate_point_set: bound must be in [0, 2^20]");
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  std::size_t redraws = 0;
  while (pts.size() < n) {
    Point c{detail::draw(rng, -bound, bound), detail::draw(rng, -bound, bound)};
    if (detail::compatible(pts, c)) {
      pts.push_back(c);
    } else if (++redraws >= kGenerationRetryLimit) {
      throw DegenerateInputError("generate_point_set: retry limit reached (parameters infeasible?)");
    }
  }
  return PointSet(std::move(pts));
}

/// n points on the parabola y = x^2: convex position, distinct x, no three
/// collinear.
inline PointSet convex_position(std::size_t n) {
  std::vector<Point> pts;
  const auto half = static_cast<std::int64_t>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<std::int64_t>(i) - half;
    pts.push_back({x, x * x});
  }
  return PointSet(std::move(pts));
}

/// Explicit jitter helper: adds a pseudo-random offset in {-1,0,1}^2 to every
/// point and re-validates. Never applied implicitly.
inline PointSet perturb(std::span<const Point> pts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out(pts.begin(), pts.end());
  for (auto& p : out) {
    p.x += detail::draw(rng, -1, 1);
    p.y += detail::draw(rng, -1, 1);
  }
  return PointSet(std::move(out));
}

/// FNV-1a over the canonical text; stable identity for reports.
inline std::string digest(const PointSet& ps) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : write_point_set(ps)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace matchbound
