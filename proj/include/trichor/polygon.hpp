#pragma once

// Triangulation counts of simple polygons, chord-constrained counts and the
// Catalan family.

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "trichor/errors.hpp"
#include "trichor/geom.hpp"
#include "trichor/numeric.hpp"

namespace trichor {

/// A simple polygon in CCW order whose vertices are in general position.
/// `ids` optionally maps boundary positions to vertex indices of a point set.
class SimplePolygon {
 public:
  static SimplePolygon make(std::vector<Point> boundary, std::optional<Point> kernel_witness = std::nullopt,
                            std::vector<int> ids = {}) {
    const std::size_t k = boundary.size();
    if (k < 3) throw NotSimple("a polygon needs at least 3 vertices");
    if (!ids.empty() && ids.size() != k) throw Error("vertex id list does not match the boundary");
    detail::check_coordinates(boundary);
    try {
      detail::check_general_position(boundary);
    } catch (const Error& e) {
      throw NotSimple(std::string("boundary vertices not in general position: ") + e.what());
    }
    __int128 area2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const Point& p = boundary[i];
      const Point& q = boundary[(i + 1) % k];
      area2 += static_cast<__int128>(p.x) * q.y - static_cast<__int128>(q.x) * p.y;
    }
    if (area2 <= 0) throw NotSimple("boundary is not in CCW order");
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 2; j < k; ++j) {
        if (i == 0 && j == k - 1) continue;
        if (segments_cross(boundary[i], boundary[(i + 1) % k], boundary[j], boundary[(j + 1) % k])) {
          throw NotSimple("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
      }
    }
    if (kernel_witness) {
      for (std::size_t i = 0; i < k; ++i) {
        if (!ccw(boundary[i], boundary[(i + 1) % k], *kernel_witness)) {
          throw NotSimple("kernel witness does not see edge " + std::to_string(i));
        }
      }
    }
    SimplePolygon p;
    p.boundary_ = std::move(boundary);
    p.ids_ = std::move(ids);
    p.witness_ = kernel_witness;
    return p;
  }

  std::size_t size() const { return boundary_.size(); }
  const Point& operator[](std::size_t i) const { return boundary_[i]; }
  const std::vector<Point>& boundary() const { return boundary_; }
  const std::vector<int>& ids() const { return ids_; }
  const std::optional<Point>& kernel_witness() const { return witness_; }

  /// Proper crossing of two closed segments (general position assumed).
  static bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    return orient_sign(a, b, c) * orient_sign(a, b, d) < 0 && orient_sign(c, d, a) * orient_sign(c, d, b) < 0;
  }

 private:
  std::vector<Point> boundary_;
  std::vector<int> ids_;
  std::optional<Point> witness_;
};

/// Internal chord between two non-adjacent boundary positions.
struct Chord {
  int a = 0;
  int b = 0;
};

inline bool is_convex(const SimplePolygon& p) {
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!ccw(p[(i + k - 1) % k], p[i], p[(i + 1) % k])) return false;
  }
  return true;
}

namespace detail {

/// Is b strictly inside the interior angle at boundary position i?
inline bool in_cone(std::span<const Point> v, std::size_t i, const Point& b) {
  const std::size_t k = v.size();
  const Point& a = v[i];
  const Point& prev = v[(i + k - 1) % k];
  const Point& next = v[(i + 1) % k];
  if (orient_sign(prev, a, next) > 0) return ccw(a, next, b) && ccw(a, b, prev);
  return !(orient_sign(a, b, next) >= 0 && orient_sign(b, a, prev) >= 0);
}

/// Two vertices see each other iff the open segment lies strictly inside the
/// polygon. Vertices are in general position, so no vertex can graze it.
inline bool sees(std::span<const Point> v, std::size_t i, std::size_t j) {
  const std::size_t k = v.size();
  if (!in_cone(v, i, v[j]) || !in_cone(v, j, v[i])) return false;
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t f = (e + 1) % k;
    if (e == i || e == j || f == i || f == j) continue;
    if (SimplePolygon::segments_cross(v[i], v[j], v[e], v[f])) return false;
  }
  return true;
}

/// ok[i*k+j]: boundary edge or valid diagonal.
inline std::vector<char> visibility_table(std::span<const Point> v) {
  const std::size_t k = v.size();
  std::vector<char> ok(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    ok[i * k + j] = ok[j * k + i] = 1;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      ok[i * k + j] = ok[j * k + i] = sees(v, i, j) ? 1 : 0;
    }
  }
  return ok;
}

/// Interval DP over boundary positions: f(i,j) counts triangulations of the
/// sub-polygon i..j closed by the side (i,j). No validation of the input.
inline BigCount count_triangulations_unchecked(std::span<const Point> v) {
  const std::size_t k = v.size();
  if (k < 3) return 1;
  const auto ok = visibility_table(v);
  std::vector<BigCount> f(k * k, 0);
  for (std::size_t i = 0; i + 1 < k; ++i) f[i * k + i + 1] = 1;
  for (std::size_t gap = 2; gap < k; ++gap) {
    for (std::size_t i = 0; i + gap < k; ++i) {
      const std::size_t j = i + gap;
      if (!ok[i * k + j]) continue;
      BigCount sum = 0;
      for (std::size_t m = i + 1; m < j; ++m) {
        if (ok[i * k + m] && ok[m * k + j]) sum += f[i * k + m] * f[m * k + j];
      }
      f[i * k + j] = std::move(sum);
    }
  }
  return f[k - 1];
}

}  // namespace detail

inline BigCount count_triangulations(const SimplePolygon& p) {
  return detail::count_triangulations_unchecked(p.boundary());
}

inline bool is_valid_chord(const SimplePolygon& p, const Chord& c) {
  const auto k = static_cast<int>(p.size());
  if (c.a < 0 || c.b < 0 || c.a >= k || c.b >= k || c.a == c.b) return false;
  const int d = std::abs(c.a - c.b);
  if (d == 1 || d == k - 1) return false;
  return detail::sees(p.boundary(), static_cast<std::size_t>(c.a), static_cast<std::size_t>(c.b));
}

namespace detail {

inline bool chords_interleave(const Chord& x, const Chord& y) {
  auto between = [](int lo, int hi, int v) { return lo < v && v < hi; };
  const int a = std::min(x.a, x.b);
  const int b = std::max(x.a, x.b);
  if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
  return between(a, b, y.a) != between(a, b, y.b);
}

inline BigCount count_with_chords(std::span<const Point> all, std::vector<int> positions, std::vector<Chord> chords) {
  if (chords.empty()) {
    std::vector<Point> pts;
    for (int i : positions) pts.push_back(all[i]);
    return count_triangulations_unchecked(pts);
  }
  const Chord c = chords.back();
  chords.pop_back();
  std::vector<int> left;
  std::vector<int> right;
  bool in_left = true;
  for (int v : positions) {
    const bool endpoint = v == c.a || v == c.b;
    if (endpoint) {
      left.push_back(v);
      right.push_back(v);
      in_left = !in_left;
    } else {
      (in_left ? left : right).push_back(v);
    }
  }
  auto contains = [](const std::vector<int>& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  std::vector<Chord> to_left;
  std::vector<Chord> to_right;
  for (const auto& d : chords) {
    if (contains(left, d.a) && contains(left, d.b)) {
      to_left.push_back(d);
    } else {
      to_right.push_back(d);
    }
  }
  return count_with_chords(all, std::move(left), std::move(to_left)) *
         count_with_chords(all, std::move(right), std::move(to_right));
}

}  // namespace detail

/// Number of triangulations of `p` that contain every chord in `required`.
inline BigCount tr_with_chords(const SimplePolygon& p, std::span<const Chord> required) {
  std::vector<Chord> chords;
  for (const auto& c : required) {
    if (!is_valid_chord(p, c)) {
      throw InvalidChord("chord (" + std::to_string(c.a) + "," + std::to_string(c.b) + ") is not an internal diagonal");
    }
    const bool dup = std::any_of(chords.begin(), chords.end(), [&](const Chord& d) {
      return std::min(c.a, c.b) == std::min(d.a, d.b) && std::max(c.a, c.b) == std::max(d.a, d.b);
    });
    if (!dup) chords.push_back(c);
  }
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      if (detail::chords_interleave(chords[i], chords[j])) throw CrossingChords("required chords cross");
    }
  }
  std::vector<int> positions(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) positions[i] = static_cast<int>(i);
  return detail::count_with_chords(p.boundary(), std::move(positions), std::move(chords));
}

/// C_m = binom(2m, m) / (m + 1).
inline BigCount catalan(unsigned m) {
  BigCount c = 1;
  for (unsigned i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

inline BigCount binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigCount b = 1;
  for (unsigned i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// C^(r)_n = sum_{i=0..r} (-1)^i binom(r,i) C_{n-i}: triangulations of a polygon
/// with r pairwise non-adjacent, minimally blocking reflex vertices.
inline BigCount catalan_generalized(unsigned n, unsigned r) {
  if (2 * r > n) throw OutOfRange("need r <= n/2 (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  BigCount sum = 0;
  for (unsigned i = 0; i <= r; ++i) {
    const BigCount term = binomial(r, i) * catalan(n - i);
    if (i % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

namespace detail {

inline bool point_on_open_segment(const Point& a, const Point& b, const Point& c) {
  if (orient_sign(a, b, c) != 0) return false;
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y) && c != a && c != b;
}

/// Crossing-number test for the doubled midpoint of (a,b) against a polygon
/// given by doubled coordinates.
inline bool midpoint_inside(const std::vector<Point>& poly, const Point& a, const Point& b) {
  const Point m{a.x + b.x, a.y + b.y};
  bool inside = false;
  const std::size_t k = poly.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point u{2 * poly[i].x, 2 * poly[i].y};
    const Point w{2 * poly[(i + 1) % k].x, 2 * poly[(i + 1) % k].y};
    if ((u.y > m.y) == (w.y > m.y)) continue;
    const int s = orient_sign(u, w, m);
    if ((w.y > u.y && s > 0) || (w.y < u.y && s < 0)) inside = !inside;
  }
  return inside;
}

/// Segment (x,y) of sub-polygon `sub` is an internal diagonal: no boundary
/// crossing, no vertex on it, midpoint inside.
inline bool brute_diagonal(const std::vector<Point>& sub, std::size_t x, std::size_t y) {
  const std::size_t k = sub.size();
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t f = (e + 1) % k;
    if (e != x && e != y && point_on_open_segment(sub[x], sub[y], sub[e])) return false;
    if (e == x || e == y || f == x || f == y) continue;
    if (SimplePolygon::segments_cross(sub[x], sub[y], sub[e], sub[f])) return false;
  }
  return midpoint_inside(sub, sub[x], sub[y]);
}

inline BigCount brute_force(const std::vector<Point>& sub) {
  const std::size_t k = sub.size();
  if (k < 3) return 1;
  if (k == 3) return 1;
  // The triangle on edge (sub[0], sub[1]) picks its apex m; recurse on both sides.
  BigCount total = 0;
  for (std::size_t m = 2; m < k; ++m) {
    const bool side1 = m == 2 || brute_diagonal(sub, 1, m);
    const bool side2 = m == k - 1 || brute_diagonal(sub, m, 0);
    if (!side1 || !side2) continue;
    std::vector<Point> left(sub.begin() + 1, sub.begin() + static_cast<std::ptrdiff_t>(m) + 1);
    std::vector<Point> right(sub.begin() + static_cast<std::ptrdiff_t>(m), sub.end());
    right.push_back(sub[0]);
    total += brute_force(left) * brute_force(right);
  }
  return total;
}

}  // namespace detail

/// Ear recursion from a fixed boundary edge with midpoint-in-polygon
/// visibility; an oracle independent of the DP.
inline BigCount brute_force_count(const SimplePolygon& p) {
  if (p.size() > 12) throw TooLarge("brute force is limited to 12 vertices");
  return detail::brute_force(p.boundary());
}

/// Convex (n+2-r)-gon on a parabola with r reflex vertices at odd positions
/// 1,3,..,2r-1, each pushed just inside the chord joining its two neighbours.
inline SimplePolygon reflex_template(unsigned n, unsigned r) {
  if (2 * r > n) throw OutOfRange("reflex_template needs r <= n/2");
  const unsigned k = n + 2;
  std::vector<Point> pts;
  for (unsigned t = 0; t < k; ++t) {
    const auto x = static_cast<std::int64_t>(t);
    pts.push_back({8 * x, 8 * x * x});
  }
  for (unsigned i = 0; i < r; ++i) {
    const unsigned t = 2 * i + 1;
    const auto x = static_cast<std::int64_t>(t);
    // Chord midpoint is at 8x^2+8; the next chord over passes 8x^2+16.
    bool placed = false;
    for (std::int64_t lift = 9; lift < 16 && !placed; ++lift) {
      pts[t] = {8 * x, 8 * x * x + lift};
      placed = detail::in_general_position(pts);
    }
    if (!placed) throw ExhaustedRetries("no general-position spot for reflex vertex " + std::to_string(t));
  }
  return SimplePolygon::make(std::move(pts));
}

/// Random polygon star-shaped about the origin, integer coordinates in a disc of
/// radius 1000, vertices in general position.
template <class Rng>
SimplePolygon random_star_polygon(std::size_t k, Rng& rng) {
  if (k < 3) throw Error("need at least 3 vertices");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> radius(250.0, 1000.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> th(k);
    for (auto& t : th) t = angle(rng);
    std::sort(th.begin(), th.end());
    std::vector<Point> pts;
    for (double t : th) {
      const double r = radius(rng);
      pts.push_back({static_cast<std::int64_t>(std::llround(r * std::cos(t))),
                     static_cast<std::int64_t>(std::llround(r * std::sin(t)))});
    }
    const Point origin{0, 0};
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = ccw(origin, pts[i], pts[(i + 1) % k]);
    if (!ok || !detail::in_general_position(pts)) continue;
    return SimplePolygon::make(std::move(pts), origin);
  }
  throw ExhaustedRetries("could not draw a star-shaped polygon");
}

inline SimplePolygon read_polygon(std::istream& is) { return SimplePolygon::make(read_points(is)); }

inline void write_polygon(std::ostream& os, const SimplePolygon& p) { write_points(os, p.boundary()); }

}  // namespace trichor
