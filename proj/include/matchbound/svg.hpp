#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "matchbound/geom.hpp"
#include "matchbound/matching.hpp"
#include "matchbound/trapezoid.hpp"

namespace matchbound {

struct SvgStyle {
  double width = 640.0;
  double margin = 40.0;   // pixels between the point hull and the frame
  double radius = 4.0;
};

namespace detail {

class SvgCanvas {
 public:
  SvgCanvas(const PointSet& ps, const SvgStyle& st) : st_(st) {
    lo_x_ = hi_x_ = lo_y_ = hi_y_ = 0;
    if (ps.size() > 0) {
      lo_x_ = hi_x_ = static_cast<double>(ps[0].x);
      lo_y_ = hi_y_ = static_cast<double>(ps[0].y);
    }
    for (const auto& p : ps) {
      lo_x_ = std::min(lo_x_, static_cast<double>(p.x));
      hi_x_ = std::max(hi_x_, static_cast<double>(p.x));
      lo_y_ = std::min(lo_y_, static_cast<double>(p.y));
      hi_y_ = std::max(hi_y_, static_cast<double>(p.y));
    }
    const double span = std::max({hi_x_ - lo_x_, hi_y_ - lo_y_, 1.0});
    scale_ = (st_.width - 2 * st_.margin) / span;
    height_ = (hi_y_ - lo_y_) * scale_ + 2 * st_.margin;
  }

  double px(double x) const { return st_.margin + (x - lo_x_) * scale_; }
  double py(double y) const { return height_ - st_.margin - (y - lo_y_) * scale_; }
  double width() const { return st_.width; }
  double height() const { return height_; }
  // World coordinates of the frame.
  double frame_left() const { return lo_x_ - st_.margin / scale_; }
  double frame_right() const { return hi_x_ + st_.margin / scale_; }
  double frame_bottom() const { return lo_y_ - st_.margin / scale_; }
  double frame_top() const { return hi_y_ + st_.margin / scale_; }

 private:
  SvgStyle st_;
  double lo_x_, hi_x_, lo_y_, hi_y_;
  double scale_ = 1.0;
  double height_ = 0.0;
};

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline double edge_y(const PointSet& ps, const Edge& e, double x) {
  const auto& a = ps[e.u];
  const auto& b = ps[e.w];
  const double t = (x - static_cast<double>(a.x)) / static_cast<double>(b.x - a.x);
  return static_cast<double>(a.y) + t * static_cast<double>(b.y - a.y);
}

}  // namespace detail

/// Vertical decomposition diagram: shaded cells, walls, edges, points
/// (hollow = isolated). Output bytes depend only on the inputs.
inline std::string render_svg(const PointSet& ps, const Matching& m, const SvgStyle& st = {}) {
  if (m.n() != ps.size()) throw UsageError("render_svg: matching and point set sizes differ");
  if (!is_crossing_free(ps, m)) throw UsageError("render_svg: matching edges cross");
  using detail::num;
  const Trapezoidation trap(ps, m);
  const detail::SvgCanvas cv(ps, st);
  const auto& edges = trap.edges();

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(cv.width()) + "\" height=\"" + num(cv.height()) +
         "\" viewBox=\"0 0 " + num(cv.width()) + " " + num(cv.height()) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(cv.width()) + "\" height=\"" + num(cv.height()) +
         "\" fill=\"white\"/>\n";

  out += "<g id=\"cells\">\n";
  for (std::size_t i = 0; i < trap.cell_count(); ++i) {
    const Cell& c = trap.cell(i);
    const double xl = c.left ? static_cast<double>(ps[*c.left].x) : cv.frame_left();
    const double xr = c.right ? static_cast<double>(ps[*c.right].x) : cv.frame_right();
    auto bottom = [&](double x) { return c.bottom ? detail::edge_y(ps, edges[*c.bottom], x) : cv.frame_bottom(); };
    auto top = [&](double x) { return c.top ? detail::edge_y(ps, edges[*c.top], x) : cv.frame_top(); };
    const char* fill = i % 2 == 0 ? "#e8eef7" : "#f7f0e3";
    out += "<polygon data-cell=\"" + std::to_string(i) + "\" points=\"" + num(cv.px(xl)) + "," + num(cv.py(bottom(xl))) +
           " " + num(cv.px(xr)) + "," + num(cv.py(bottom(xr))) + " " + num(cv.px(xr)) + "," + num(cv.py(top(xr))) + " " +
           num(cv.px(xl)) + "," + num(cv.py(top(xl))) + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"walls\" stroke=\"#888888\" stroke-dasharray=\"4 3\">\n";
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const Wall& w = trap.wall(p);
    const double x = static_cast<double>(ps[p].x);
    const double y0 = w.below ? detail::edge_y(ps, edges[*w.below], x) : cv.frame_bottom();
    const double y1 = w.above ? detail::edge_y(ps, edges[*w.above], x) : cv.frame_top();
    out += "<line data-wall=\"" + std::to_string(p) + "\" x1=\"" + num(cv.px(x)) + "\" y1=\"" + num(cv.py(y0)) +
           "\" x2=\"" + num(cv.px(x)) + "\" y2=\"" + num(cv.py(y1)) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"unbounded\" fill=\"#888888\">\n";
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const Wall& w = trap.wall(p);
    const double X = cv.px(static_cast<double>(ps[p].x));
    if (!w.below) {
      const double Y = cv.py(cv.frame_bottom());
      out += "<polygon data-unbounded=\"" + std::to_string(p) + "-down\" points=\"" + num(X - 4) + "," + num(Y - 6) +
             " " + num(X + 4) + "," + num(Y - 6) + " " + num(X) + "," + num(Y) + "\"/>\n";
    }
    if (!w.above) {
      const double Y = cv.py(cv.frame_top());
      out += "<polygon data-unbounded=\"" + std::to_string(p) + "-up\" points=\"" + num(X - 4) + "," + num(Y + 6) +
             " " + num(X + 4) + "," + num(Y + 6) + " " + num(X) + "," + num(Y) + "\"/>\n";
    }
  }
  out += "</g>\n";

  out += "<g id=\"edges\" stroke=\"#1f3a93\" stroke-width=\"2\">\n";
  for (const auto& e : edges) {
    out += "<line data-edge=\"" + std::to_string(e.u) + "-" + std::to_string(e.w) + "\" x1=\"" +
           num(cv.px(static_cast<double>(ps[e.u].x))) + "\" y1=\"" + num(cv.py(static_cast<double>(ps[e.u].y))) +
           "\" x2=\"" + num(cv.px(static_cast<double>(ps[e.w].x))) + "\" y2=\"" +
           num(cv.py(static_cast<double>(ps[e.w].y))) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"points\">\n";
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const bool iso = m.is_isolated(p);
    out += "<circle data-point=\"" + std::to_string(p) + "\" class=\"" + (iso ? "isolated" : "matched") + "\" cx=\"" +
           num(cv.px(static_cast<double>(ps[p].x))) + "\" cy=\"" + num(cv.py(static_cast<double>(ps[p].y))) +
           "\" r=\"" + num(st.radius) + "\" fill=\"" + (iso ? "white" : "#1f3a93") +
           "\" stroke=\"#1f3a93\" stroke-width=\"1.5\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace matchbound
