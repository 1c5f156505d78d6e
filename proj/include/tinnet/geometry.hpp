#pragma once

// Planar helpers for the simulator: bucket grid for nearest-neighbour
// queries, Voronoi cells by half-plane clipping, uniform sampling in convex
// polygons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace tinnet::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  double area() const { return (x1 - x0) * (y1 - y0); }

  static Rect centered(double side) { return {-0.5 * side, -0.5 * side, 0.5 * side, 0.5 * side}; }
};

using Polygon = std::vector<Point>;

inline Polygon to_polygon(const Rect& r) { return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}; }

// Keeps the part of `poly` that is at least as close to `site` as to `other`.
inline void clip_to_bisector(Polygon& poly, Point site, Point other, Polygon& scratch) {
  // points p with (p - m) . (other - site) <= 0, m the midpoint
  const double nx = other.x - site.x;
  const double ny = other.y - site.y;
  const double c = 0.5 * (nx * (other.x + site.x) + ny * (other.y + site.y));
  scratch.clear();
  const std::size_t n = poly.size();
  bool any_outside = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (nx * poly[i].x + ny * poly[i].y > c) {
      any_outside = true;
      break;
    }
  }
  if (!any_outside) return;
  double da = nx * poly[n - 1].x + ny * poly[n - 1].y - c;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i == 0 ? n - 1 : i - 1];
    const Point b = poly[i];
    const double db = nx * b.x + ny * b.y - c;
    if (da <= 0.0) scratch.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      scratch.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    da = db;
  }
  poly.swap(scratch);
}

inline double polygon_area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(s);
}

// Uniform point in a convex polygon: pick a fan triangle by area, then a
// uniform point in it. Consumes exactly three uniforms.
template <typename Urbg>
Point sample_in_convex_polygon(const Polygon& poly, Urbg& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u_tri = unif(rng);
  double r1 = unif(rng);
  double r2 = unif(rng);
  const Point o = poly[0];
  auto tri_area = [&](std::size_t k) {
    const Point a = poly[k];
    const Point b = poly[k + 1];
    return 0.5 * std::abs((a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y));
  };
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) total += tri_area(k);
  double target = u_tri * total;
  std::size_t k = 1;
  for (; k + 2 < poly.size(); ++k) {
    const double a = tri_area(k);
    if (target < a) break;
    target -= a;
  }
  if (r1 + r2 > 1.0) {
    r1 = 1.0 - r1;
    r2 = 1.0 - r2;
  }
  const Point a = poly[k];
  const Point b = poly[k + 1];
  return {o.x + r1 * (a.x - o.x) + r2 * (b.x - o.x), o.y + r1 * (a.y - o.y) + r2 * (b.y - o.y)};
}

// Uniform bucket grid over a rectangle. Points outside the bounds are clamped
// into the border buckets, so queries stay exact for any point set.
class SpatialGrid {
 public:
  SpatialGrid() = default;

  SpatialGrid(std::span<const Point> pts, Rect bounds, double cell_size) { rebuild(pts, bounds, cell_size); }

  void rebuild(std::span<const Point> pts, Rect bounds, double cell_size) {
    pts_ = pts;
    bounds_ = bounds;
    cell_ = cell_size;
    nx_ = std::max(1, static_cast<int>(std::ceil((bounds.x1 - bounds.x0) / cell_size)));
    ny_ = std::max(1, static_cast<int>(std::ceil((bounds.y1 - bounds.y0) / cell_size)));
    start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    for (const Point& p : pts) ++start_[bucket(p) + 1];
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    items_.resize(pts.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) items_[fill[bucket(pts[i])]++] = static_cast<int>(i);
  }

  double cell_size() const { return cell_; }
  std::span<const Point> points() const { return pts_; }

  // Nearest point other than `exclude`; {-1, inf} when there is none.
  std::pair<int, double> nearest(Point q, int exclude = -1) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    visit_rings(q, [&](int idx, double /*ring_lower_bound*/) {
      if (idx == exclude) return;
      const double d2 = dist2(q, pts_[idx]);
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    }, [&](double lower_bound) { return best >= 0 && lower_bound * lower_bound >= best_d2; });
    return {best, best_d2};
  }

  // Calls visit(index, lower_bound) for points ring by ring around q until
  // stop(lower_bound) holds, where lower_bound bounds the distance from q to
  // every point not yet visited.
  template <typename Visit, typename Stop>
  void visit_rings(Point q, Visit&& visit, Stop&& stop) const {
    const int cx = clamp_x(q);
    const int cy = clamp_y(q);
    const int max_ring = std::max(nx_, ny_);
    auto visit_bucket = [&](int x, int y) {
      if (x < 0 || x >= nx_) return;
      const std::size_t b = static_cast<std::size_t>(y) * nx_ + x;
      for (int k = start_[b]; k < start_[b + 1]; ++k) visit(items_[k], 0.0);
    };
    for (int r = 0; r <= max_ring; ++r) {
      const int x_lo = cx - r, x_hi = cx + r, y_lo = cy - r, y_hi = cy + r;
      for (int y = std::max(0, y_lo); y <= std::min(ny_ - 1, y_hi); ++y) {
        if (y == y_lo || y == y_hi) {
          for (int x = std::max(0, x_lo); x <= std::min(nx_ - 1, x_hi); ++x) visit_bucket(x, y);
        } else {
          visit_bucket(x_lo, y);
          visit_bucket(x_hi, y);
        }
      }
      if (stop(ring_lower_bound(q, cx, cy, r))) return;
    }
  }

 private:
  int clamp_x(Point p) const {
    return std::clamp(static_cast<int>(std::floor((p.x - bounds_.x0) / cell_)), 0, nx_ - 1);
  }
  int clamp_y(Point p) const {
    return std::clamp(static_cast<int>(std::floor((p.y - bounds_.y0) / cell_)), 0, ny_ - 1);
  }
  std::size_t bucket(Point p) const { return static_cast<std::size_t>(clamp_y(p)) * nx_ + clamp_x(p); }

  // Distance from q to the outside of the block of buckets within ring r of
  // (cx, cy); +inf once the block covers the whole grid.
  double ring_lower_bound(Point q, int cx, int cy, int r) const {
    const bool full = cx - r <= 0 && cy - r <= 0 && cx + r >= nx_ - 1 && cy + r >= ny_ - 1;
    if (full) return std::numeric_limits<double>::infinity();
    double d = std::numeric_limits<double>::infinity();
    if (cx - r > 0) d = std::min(d, q.x - (bounds_.x0 + (cx - r) * cell_));
    if (cx + r < nx_ - 1) d = std::min(d, bounds_.x0 + (cx + r + 1) * cell_ - q.x);
    if (cy - r > 0) d = std::min(d, q.y - (bounds_.y0 + (cy - r) * cell_));
    if (cy + r < ny_ - 1) d = std::min(d, bounds_.y0 + (cy + r + 1) * cell_ - q.y);
    return std::max(d, 0.0);
  }

  std::span<const Point> pts_;
  Rect bounds_;
  double cell_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<int> start_;
  std::vector<int> items_;
};

// Reusable buffers for voronoi_cell.
struct VoronoiScratch {
  Polygon poly;
  Polygon tmp;
};

// Voronoi cell of site i, clipped to `window`, written into scratch.poly.
// A neighbour farther than twice the current cell radius cannot cut the
// cell, which ends the ring search.
inline const Polygon& voronoi_cell(const SpatialGrid& grid, int i, const Rect& window, VoronoiScratch& s) {
  const auto pts = grid.points();
  const Point site = pts[i];
  Polygon& poly = s.poly;
  poly.assign({{window.x0, window.y0}, {window.x1, window.y0}, {window.x1, window.y1}, {window.x0, window.y1}});
  double radius2 = 0.0;
  auto refresh_radius = [&] {
    radius2 = 0.0;
    for (const Point& v : poly) radius2 = std::max(radius2, dist2(site, v));
  };
  refresh_radius();
  grid.visit_rings(site, [&](int j, double) {
    if (j == i || dist2(site, pts[j]) > 4.0 * radius2) return;
    const std::size_t before = poly.size();
    clip_to_bisector(poly, site, pts[j], s.tmp);
    if (poly.size() != before || !s.tmp.empty()) refresh_radius();
  }, [&](double lower_bound) { return lower_bound * lower_bound > 4.0 * radius2; });
  // Start from a vertex fixed by the cell alone, so that polygon sampling does
  // not depend on the clipping order (and with it on the grid layout).
  auto key = [](const Point& v) { return v.x + 0.6180339887498949 * v.y; };
  std::rotate(poly.begin(), std::min_element(poly.begin(), poly.end(), [&](const Point& a, const Point& b) {
                return key(a) < key(b);
              }), poly.end());
  return poly;
}

inline Polygon voronoi_cell(const SpatialGrid& grid, int i, const Rect& window) {
  VoronoiScratch s;
  return voronoi_cell(grid, i, window, s);
}

}  // namespace tinnet::geometry
