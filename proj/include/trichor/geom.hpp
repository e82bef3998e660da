#pragma once

// Exact planar primitives, validated point sets and the example generators.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "trichor/errors.hpp"

namespace trichor {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Coordinates are kept within +-2^60 so that every orientation determinant
/// fits exactly in a 128-bit integer.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 60;

enum class Orientation : int { CW = -1, Collinear = 0, CCW = 1 };

inline int orient_sign(const Point& a, const Point& b, const Point& c) {
  const __int128 bx = static_cast<__int128>(b.x) - a.x;
  const __int128 by = static_cast<__int128>(b.y) - a.y;
  const __int128 cx = static_cast<__int128>(c.x) - a.x;
  const __int128 cy = static_cast<__int128>(c.y) - a.y;
  const __int128 det = bx * cy - by * cx;
  return (det > 0) - (det < 0);
}

inline Orientation orient(const Point& a, const Point& b, const Point& c) {
  return static_cast<Orientation>(orient_sign(a, b, c));
}

inline bool ccw(const Point& a, const Point& b, const Point& c) { return orient_sign(a, b, c) > 0; }

/// Strict convexity of the quadrilateral a,b,c,d taken in this cyclic order,
/// with either orientation.
inline bool is_strictly_convex_quad(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int s0 = orient_sign(a, b, c);
  if (s0 == 0) return false;
  return orient_sign(b, c, d) == s0 && orient_sign(c, d, a) == s0 && orient_sign(d, a, b) == s0;
}

/// Strictly inside the CCW triangle (a,b,c).
inline bool strictly_inside(const Point& p, const Point& a, const Point& b, const Point& c) {
  return ccw(a, b, p) && ccw(b, c, p) && ccw(c, a, p);
}

/// Indices of the convex hull vertices in CCW order (no collinear points kept).
inline std::vector<int> convex_hull(std::span<const Point> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (n < 3) return idx;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && orient_sign(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && orient_sign(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// A set of distinct points, no three collinear. Immutable.
class PointSet {
 public:
  PointSet() = default;

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

  friend PointSet validate_general_position(std::vector<Point> points);

 private:
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {}
  std::vector<Point> points_;
};

namespace detail {

inline void check_coordinates(std::span<const Point> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (p.x > kMaxCoordinate || p.x < -kMaxCoordinate || p.y > kMaxCoordinate || p.y < -kMaxCoordinate) {
      throw CoordinateOutOfRange("coordinate of point " + std::to_string(i) + " exceeds 2^60");
    }
  }
}

/// Throws on the first duplicate or collinear triple found, scanning in
/// lexicographic index order.
inline void check_general_position(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i] == pts[j]) throw DuplicatePoint(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (orient_sign(pts[i], pts[j], pts[k]) == 0) throw CollinearTriple(i, j, k);
      }
    }
  }
}

inline bool in_general_position(std::span<const Point> pts) {
  try {
    check_general_position(pts);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace detail

inline PointSet validate_general_position(std::vector<Point> points) {
  if (points.empty()) throw Error("point set must contain at least one point");
  detail::check_coordinates(points);
  detail::check_general_position(points);
  return PointSet(std::move(points));
}

/// S together with a CCW frame triangle that strictly contains every point of S.
/// Vertex numbering used downstream: base points 0..n-1, frame n, n+1, n+2.
class AugmentedPointSet {
 public:
  const PointSet& base() const { return base_; }
  const std::array<Point, 3>& frame() const { return frame_; }
  std::size_t interior_count() const { return base_.size(); }

  std::vector<Point> all_points() const {
    std::vector<Point> all(base_.points().begin(), base_.points().end());
    all.insert(all.end(), frame_.begin(), frame_.end());
    return all;
  }

  /// Checks containment and general position of the combined set.
  static AugmentedPointSet with_frame(std::vector<Point> base, std::array<Point, 3> frame) {
    if (orient_sign(frame[0], frame[1], frame[2]) < 0) std::swap(frame[1], frame[2]);
    if (orient_sign(frame[0], frame[1], frame[2]) == 0) throw Error("degenerate frame triangle");
    std::vector<Point> all = base;
    all.insert(all.end(), frame.begin(), frame.end());
    detail::check_coordinates(all);
    detail::check_general_position(all);
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (!strictly_inside(base[i], frame[0], frame[1], frame[2])) {
        throw Error("point " + std::to_string(i) + " is not strictly inside the frame");
      }
    }
    AugmentedPointSet s;
    s.base_ = base.empty() ? PointSet() : validate_general_position(std::move(base));
    s.frame_ = frame;
    return s;
  }

  /// Same frame, point `q` removed from the base.
  AugmentedPointSet without(std::size_t q) const {
    std::vector<Point> rest;
    for (std::size_t i = 0; i < base_.size(); ++i) {
      if (i != q) rest.push_back(base_[i]);
    }
    return with_frame(std::move(rest), frame_);
  }

 private:
  PointSet base_;
  std::array<Point, 3> frame_{};
};

/// Axis-aligned right triangle about four times the bounding box of S. Each
/// corner is nudged outward along its own parabola (k, k^2) until the combined
/// set is in general position; a parabola meets any line at most twice, so only
/// finitely many steps can fail.
inline AugmentedPointSet augment(const PointSet& s) {
  std::int64_t xmin = s[0].x, xmax = s[0].x, ymin = s[0].y, ymax = s[0].y;
  for (const auto& p : s.points()) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const std::int64_t side = std::max(xmax - xmin, ymax - ymin) + 1;
  if (side > kMaxCoordinate / 8) throw CoordinateOutOfRange("point set too wide to frame within 2^60");
  const std::int64_t x0 = xmin - side;
  const std::int64_t y0 = ymin - side;
  const std::int64_t leg = 4 * side;
  std::vector<Point> base(s.points().begin(), s.points().end());
  for (std::int64_t k = 0; k < 10000; ++k) {
    const std::array<Point, 3> frame{Point{x0 - k, y0 - k * k}, Point{x0 + leg + k * k, y0 - k},
                                     Point{x0 - k * k, y0 + leg + k}};
    bool inside = true;
    for (const auto& p : base) inside = inside && strictly_inside(p, frame[0], frame[1], frame[2]);
    if (!inside) continue;
    std::vector<Point> all = base;
    all.insert(all.end(), frame.begin(), frame.end());
    if (detail::in_general_position(all)) return AugmentedPointSet::with_frame(base, frame);
  }
  throw ExhaustedRetries("could not place a frame in general position");
}

/// n points on the parabola y = x^2.
inline PointSet gen_convex(std::size_t n) {
  if (n < 3) throw Error("gen_convex needs n >= 3");
  std::vector<Point> pts;
  for (std::size_t t = 0; t < n; ++t) {
    const auto v = static_cast<std::int64_t>(t);
    pts.push_back({v, v * v});
  }
  return validate_general_position(std::move(pts));
}

/// n points on a concave cap over the bottom frame edge (A,B). The cap and A,B
/// lie on y = x(W - x), and the apex sits above every tangent of the cap, so
/// the only freedom left is triangulating the convex (n+2)-gon A,s_1..s_n,B.
inline AugmentedPointSet gen_convex_arc_in_triangle(std::size_t n) {
  if (n < 1) throw Error("gen_convex_arc_in_triangle needs n >= 1");
  const auto width = static_cast<std::int64_t>(2 * (n + 1));
  std::vector<Point> arc;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto x = static_cast<std::int64_t>(2 * i);
    arc.push_back({x, x * (width - x)});
  }
  const Point a{0, 0};
  const Point b{width, 0};
  for (std::int64_t h = width * width; h < width * width + 10000; ++h) {
    const Point apex{width / 2, h};
    std::vector<Point> all = arc;
    all.insert(all.end(), {a, b, apex});
    if (detail::in_general_position(all)) return AugmentedPointSet::with_frame(arc, {a, b, apex});
  }
  throw ExhaustedRetries("could not place the arc apex in general position");
}

/// Deterministic random set: std::mt19937_64 seeded with `seed`, coordinates
/// drawn as `engine() % side` on a side x side grid with side = max(16, 4 n^2),
/// rejecting any draw that duplicates or is collinear with accepted points.
inline PointSet gen_random(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error("gen_random needs n >= 1");
  const std::uint64_t side = std::max<std::uint64_t>(16, 4 * n * n);
  std::mt19937_64 engine(seed);
  std::vector<Point> pts;
  std::size_t attempts = 0;
  const std::size_t limit = 1000 * n + 1000;
  while (pts.size() < n) {
    if (++attempts > limit) throw ExhaustedRetries("grid too small for " + std::to_string(n) + " points");
    const Point p{static_cast<std::int64_t>(engine() % side), static_cast<std::int64_t>(engine() % side)};
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      if (pts[i] == p) ok = false;
      for (std::size_t j = i + 1; j < pts.size() && ok; ++j) {
        if (orient_sign(pts[i], pts[j], p) == 0) ok = false;
      }
    }
    if (ok) pts.push_back(p);
  }
  return validate_general_position(std::move(pts));
}

// Point-set text format: a count line, then one "x y" line per point.

inline void write_points(std::ostream& os, std::span<const Point> pts) {
  os << pts.size() << '\n';
  for (const auto& p : pts) os << p.x << ' ' << p.y << '\n';
}

inline std::string points_to_string(std::span<const Point> pts) {
  std::ostringstream os;
  write_points(os, pts);
  return os.str();
}

inline std::vector<Point> read_points(std::istream& is) {
  long long count = 0;
  if (!(is >> count) || count < 0) throw ParseError("expected a point count");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    Point p;
    if (!(is >> p.x >> p.y)) throw ParseError("expected coordinates for point " + std::to_string(i));
    pts.push_back(p);
  }
  return pts;
}

}  // namespace trichor
