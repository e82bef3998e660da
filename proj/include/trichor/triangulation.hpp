#pragma once

// Triangle soup with adjacency over a fixed vertex domain. Values are
// immutable; flip() returns a new triangulation.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "trichor/errors.hpp"
#include "trichor/geom.hpp"

namespace trichor {

/// The vertex set a triangulation lives on. Points [0, base_count) are the
/// tracked points (S); for an augmented domain the last three are the frame.
struct Domain {
  std::vector<Point> points;
  std::size_t base_count = 0;
  std::vector<int> hull;
  bool augmented = false;

  // Lexicographic numbering of unordered pairs (i<j), used by EdgeKey.
  std::vector<std::uint32_t> pair_index;  // n*n, symmetric
  std::vector<std::pair<int, int>> pair_of;

  std::size_t size() const { return points.size(); }
  bool is_frame(int v) const { return augmented && static_cast<std::size_t>(v) >= base_count; }
  std::size_t index(int a, int b) const { return pair_index[static_cast<std::size_t>(a) * size() + b]; }
};

using DomainPtr = std::shared_ptr<const Domain>;

namespace detail {

inline DomainPtr finish_domain(Domain d) {
  const std::size_t n = d.points.size();
  d.pair_index.assign(n * n, 0);
  d.pair_of.clear();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto idx = static_cast<std::uint32_t>(d.pair_of.size());
      d.pair_index[i * n + j] = idx;
      d.pair_index[j * n + i] = idx;
      d.pair_of.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return std::make_shared<const Domain>(std::move(d));
}

}  // namespace detail

inline DomainPtr make_domain(const AugmentedPointSet& s) {
  Domain d;
  d.points = s.all_points();
  d.base_count = s.interior_count();
  d.augmented = true;
  const int n = static_cast<int>(d.base_count);
  d.hull = {n, n + 1, n + 2};
  return detail::finish_domain(std::move(d));
}

/// Plain point set: hull edges are fixed, every point is tracked.
inline DomainPtr make_domain(const PointSet& s) {
  if (s.size() < 3) throw Error("a plain point set needs at least 3 points to triangulate");
  Domain d;
  d.points.assign(s.points().begin(), s.points().end());
  d.base_count = s.size();
  d.augmented = false;
  d.hull = convex_hull(d.points);
  return detail::finish_domain(std::move(d));
}

/// Unordered vertex pair, stored with a < b.
struct EdgeRef {
  int a = 0;
  int b = 0;

  EdgeRef() = default;
  EdgeRef(int u, int v) : a(std::min(u, v)), b(std::max(u, v)) {}

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// Bitset over all vertex pairs of the domain; the canonical form of an edge set.
class EdgeKey {
 public:
  EdgeKey() = default;
  explicit EdgeKey(std::size_t pairs) : words_((pairs + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int bit = std::countr_zero(bits);
        f(w * 64 + static_cast<std::size_t>(bit));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// 64-bit FNV-1a over the lexicographically sorted edge list, each endpoint fed
/// as a 4-byte little-endian integer.
inline std::uint64_t fnv1a_edges(const std::vector<EdgeRef>& sorted_edges) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& e : sorted_edges) {
    feed(static_cast<std::uint32_t>(e.a));
    feed(static_cast<std::uint32_t>(e.b));
  }
  return h;
}

using Tri = std::array<int, 3>;

class Triangulation {
 public:
  /// Fan over the hull from its first vertex, then every remaining point is
  /// inserted into the face containing it.
  static Triangulation initial(DomainPtr domain) {
    const auto& pts = domain->points;
    const auto& hull = domain->hull;
    std::vector<Tri> tris;
    for (std::size_t i = 1; i + 1 < hull.size(); ++i) tris.push_back({hull[0], hull[i], hull[i + 1]});
    std::vector<bool> on_hull(pts.size(), false);
    for (int h : hull) on_hull[h] = true;
    for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
      if (on_hull[v]) continue;
      for (std::size_t t = 0; t < tris.size(); ++t) {
        const Tri tri = tris[t];
        if (strictly_inside(pts[v], pts[tri[0]], pts[tri[1]], pts[tri[2]])) {
          tris[t] = {tri[0], tri[1], v};
          tris.push_back({tri[1], tri[2], v});
          tris.push_back({tri[2], tri[0], v});
          break;
        }
      }
    }
    return from_triangles(std::move(domain), std::move(tris));
  }

  /// Builds adjacency from a CCW triangle list. Throws if a triangle is not CCW
  /// or an edge is shared by more than two triangles.
  static Triangulation from_triangles(DomainPtr domain, std::vector<Tri> tris) {
    Triangulation t;
    t.domain_ = std::move(domain);
    t.tris_ = std::move(tris);
    t.rebuild();
    return t;
  }

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  std::size_t vertex_count() const { return domain_->size(); }
  const std::vector<Tri>& triangles() const { return tris_; }
  /// neighbors()[t][k]: triangle across the edge opposite tris[t][k], or -1.
  const std::vector<Tri>& neighbors() const { return adj_; }
  std::size_t edge_count() const { return key_.count(); }
  std::size_t inner_face_count() const { return tris_.size(); }
  const EdgeKey& key() const { return key_; }

  std::vector<EdgeRef> edges() const {
    std::vector<EdgeRef> out;
    key_.for_each([&](std::size_t i) {
      const auto& [a, b] = domain_->pair_of[i];
      out.emplace_back(a, b);
    });
    return out;
  }

  bool has_edge(EdgeRef e) const {
    if (!valid_vertex(e.a) || !valid_vertex(e.b) || e.a == e.b) return false;
    return key_.test(domain_->index(e.a, e.b));
  }

  bool is_boundary(EdgeRef e) const {
    const auto [t, k] = locate(e);
    return adj_[t][k] < 0;
  }

  bool is_flippable(EdgeRef e) const {
    const auto [t, k] = locate(e);
    return flippable_at(t, k);
  }

  Triangulation flip(EdgeRef e) const {
    const auto [t, k] = locate(e);
    if (!flippable_at(t, k)) {
      throw NotFlippable("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") is not flippable");
    }
    return flipped_at(t, k);
  }

  /// Is the edge opposite tris[t][k] interior with a strictly convex quadrilateral?
  bool flippable_at(int t, int k) const {
    const int u = adj_[t][k];
    if (u < 0) return false;
    const auto& pts = domain_->points;
    const Tri& tri = tris_[t];
    const int p = tri[k];
    const int a = tri[(k + 1) % 3];
    const int b = tri[(k + 2) % 3];
    const int q = opposite_vertex(u, a, b);
    return ccw(pts[p], pts[a], pts[q]) && ccw(pts[q], pts[b], pts[p]);
  }

  /// Flip without checking convexity; caller guarantees flippable_at(t, k).
  Triangulation flipped_at(int t, int k) const {
    Triangulation r = *this;
    const int u = adj_[t][k];
    const Tri tri = tris_[t];
    const int p = tri[k];
    const int a = tri[(k + 1) % 3];
    const int b = tri[(k + 2) % 3];
    const int ku = index_in(u, opposite_vertex(u, a, b));
    const Tri other = tris_[u];
    const int q = other[ku];
    // tri = (p,a,b), other = (q,b,a); new faces (p,a,q) at t and (q,b,p) at u.
    const int n_pa = adj_[t][(k + 2) % 3];
    const int n_bp = adj_[t][(k + 1) % 3];
    const int n_qb = adj_[u][(ku + 2) % 3];
    const int n_aq = adj_[u][(ku + 1) % 3];
    r.tris_[t] = {p, a, q};
    r.adj_[t] = {n_aq, u, n_pa};
    r.tris_[u] = {q, b, p};
    r.adj_[u] = {n_bp, t, n_qb};
    if (n_aq >= 0) r.replace_neighbor(n_aq, u, t);
    if (n_bp >= 0) r.replace_neighbor(n_bp, t, u);
    r.key_.reset(domain_->index(a, b));
    r.key_.set(domain_->index(p, q));
    return r;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(vertex_count(), 0);
    key_.for_each([&](std::size_t i) {
      const auto& [a, b] = domain_->pair_of[i];
      ++deg[a];
      ++deg[b];
    });
    return deg;
  }

  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < static_cast<int>(vertex_count()); ++w) {
      if (w != v && key_.test(domain_->index(v, w))) ++d;
    }
    return d;
  }

  /// Neighbours of an interior vertex in CCW order around it.
  std::vector<int> link(int v) const {
    std::unordered_map<int, int> next;
    for (const auto& tri : tris_) {
      for (int k = 0; k < 3; ++k) {
        if (tri[k] == v) next[tri[(k + 1) % 3]] = tri[(k + 2) % 3];
      }
    }
    std::vector<int> ring;
    if (next.empty()) return ring;
    int start = next.begin()->first;
    for (const auto& [a, b] : next) start = std::min(start, a);
    int cur = start;
    do {
      ring.push_back(cur);
      auto it = next.find(cur);
      if (it == next.end()) throw Error("vertex " + std::to_string(v) + " is not interior");
      cur = it->second;
    } while (cur != start && ring.size() <= next.size());
    if (cur != start) throw Error("inconsistent link around vertex " + std::to_string(v));
    return ring;
  }

  std::uint64_t fingerprint() const { return fnv1a_edges(edges()); }

  /// Empty when every structural invariant holds, else a description of the first failure.
  std::optional<std::string> check_invariants() const {
    const auto& pts = domain_->points;
    const std::size_t n = vertex_count();
    const std::size_t h = domain_->hull.size();
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Tri& tri = tris_[t];
      if (!ccw(pts[tri[0]], pts[tri[1]], pts[tri[2]])) return "triangle " + std::to_string(t) + " not CCW";
      for (int k = 0; k < 3; ++k) {
        const int u = adj_[t][k];
        const int a = tri[(k + 1) % 3];
        const int b = tri[(k + 2) % 3];
        if (u < 0) continue;
        const int ku = find_directed(u, b, a);
        if (ku < 0 || adj_[u][ku] != static_cast<int>(t)) return "adjacency not an involution at " + std::to_string(t);
      }
    }
    if (edge_count() != 3 * n - 3 - h) return "edge count " + std::to_string(edge_count());
    if (tris_.size() != 2 * n - 2 - h) return "face count " + std::to_string(tris_.size());
    __int128 area = 0;
    for (const auto& tri : tris_) area += twice_area(pts[tri[0]], pts[tri[1]], pts[tri[2]]);
    __int128 hull_area = 0;
    for (std::size_t i = 1; i + 1 < h; ++i) {
      hull_area += twice_area(pts[domain_->hull[0]], pts[domain_->hull[i]], pts[domain_->hull[i + 1]]);
    }
    if (area != hull_area) return std::string("triangles do not tile the hull");
    std::size_t boundary = 0;
    for (const auto& a : adj_) boundary += std::count(a.begin(), a.end(), -1);
    if (boundary != h) return std::string("boundary edge count differs from hull size");
    return std::nullopt;
  }

  friend bool operator==(const Triangulation& x, const Triangulation& y) { return x.key_ == y.key_; }

  /// (triangle, local index) of the edge, such that the edge is opposite tris[t][k].
  std::pair<int, int> locate(EdgeRef e) const {
    if (!has_edge(e)) {
      throw UnknownEdge("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") not in triangulation");
    }
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      for (int k = 0; k < 3; ++k) {
        const int a = tris_[t][(k + 1) % 3];
        const int b = tris_[t][(k + 2) % 3];
        if (EdgeRef(a, b) == e) return {t, k};
      }
    }
    throw UnknownEdge("edge key and triangle list disagree");
  }

  /// Triangle containing the directed edge a->b in its CCW order, or -1.
  int triangle_with_directed(int a, int b) const {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (find_directed(t, a, b) >= 0) return t;
    }
    return -1;
  }

 private:
  Triangulation() = default;

  static __int128 twice_area(const Point& a, const Point& b, const Point& c) {
    return (static_cast<__int128>(b.x) - a.x) * (static_cast<__int128>(c.y) - a.y) -
           (static_cast<__int128>(b.y) - a.y) * (static_cast<__int128>(c.x) - a.x);
  }

  bool valid_vertex(int v) const { return v >= 0 && static_cast<std::size_t>(v) < vertex_count(); }

  int index_in(int t, int v) const {
    for (int k = 0; k < 3; ++k) {
      if (tris_[t][k] == v) return k;
    }
    return -1;
  }

  int opposite_vertex(int t, int a, int b) const {
    for (int v : tris_[t]) {
      if (v != a && v != b) return v;
    }
    return -1;
  }

  /// Local index k with edge tris[t][k+1] -> tris[t][k+2] equal to a->b, or -1.
  int find_directed(int t, int a, int b) const {
    for (int k = 0; k < 3; ++k) {
      if (tris_[t][(k + 1) % 3] == a && tris_[t][(k + 2) % 3] == b) return k;
    }
    return -1;
  }

  void replace_neighbor(int t, int from, int to) {
    for (auto& x : adj_[t]) {
      if (x == from) {
        x = to;
        return;
      }
    }
  }

  void rebuild() {
    const auto& pts = domain_->points;
    const std::size_t n = vertex_count();
    key_ = EdgeKey(domain_->pair_of.size());
    adj_.assign(tris_.size(), Tri{-1, -1, -1});
    std::unordered_map<std::size_t, std::pair<int, int>> directed;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      const Tri& tri = tris_[t];
      if (!ccw(pts[tri[0]], pts[tri[1]], pts[tri[2]])) throw Error("triangle " + std::to_string(t) + " is not CCW");
      for (int k = 0; k < 3; ++k) {
        const int a = tri[(k + 1) % 3];
        const int b = tri[(k + 2) % 3];
        if (!directed.emplace(static_cast<std::size_t>(a) * n + b, std::pair{t, k}).second) {
          throw Error("directed edge used twice");
        }
        key_.set(domain_->index(a, b));
      }
    }
    for (const auto& [code, tk] : directed) {
      const std::size_t a = code / n;
      const std::size_t b = code % n;
      auto it = directed.find(b * n + a);
      if (it != directed.end()) adj_[tk.first][tk.second] = it->second.first;
    }
  }

  DomainPtr domain_;
  std::vector<Tri> tris_;
  std::vector<Tri> adj_;
  EdgeKey key_;
};

/// Interior-point degree histogram and frame degrees of a triangulation of S+.
struct DegreeVector {
  std::map<int, std::size_t> v;
  std::array<int, 3> frame_degrees{};

  std::size_t count(int i) const {
    auto it = v.find(i);
    return it == v.end() ? 0 : it->second;
  }
};

inline DegreeVector degree_vector(const Triangulation& t) {
  const Domain& d = t.domain();
  if (!d.augmented) throw Error("degree_vector requires a triangulation of an augmented set");
  const auto deg = t.degrees();
  DegreeVector dv;
  for (std::size_t i = 0; i < d.base_count; ++i) ++dv.v[deg[i]];
  for (int k = 0; k < 3; ++k) dv.frame_degrees[k] = deg[d.base_count + k];
  return dv;
}

/// {"n": vertex count, "edges": [[i,j],...]} with i<j, sorted lexicographically.
inline nlohmann::json to_json(const Triangulation& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges()) edges.push_back({e.a, e.b});
  return {{"n", t.vertex_count()}, {"edges", std::move(edges)}};
}

}  // namespace trichor
