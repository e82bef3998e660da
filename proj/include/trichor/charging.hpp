#pragma once

// Vints, holes and supports, flip-trees with rigid cores, the (7-i)/supp
// charging scheme and the instance-wide audits built on it.
//
// A vint is a (point, triangulation) pair for a point of S (never a frame
// vertex). The 3-vint v = (p, T) owns a flip-tree whose root-containing
// subtrees are exactly the vints that flip down to v; the vint of a j-edge
// subtree has degree j + 3 and its hole is the union of the subtree's faces.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "trichor/enumerate.hpp"
#include "trichor/errors.hpp"
#include "trichor/geom.hpp"
#include "trichor/numeric.hpp"
#include "trichor/polygon.hpp"
#include "trichor/triangulation.hpp"

namespace trichor {

struct Vint {
  int point = -1;
  int degree = 0;
  std::uint64_t fingerprint = 0;
};

inline Vint make_vint(const Triangulation& t, int p) {
  const Domain& d = t.domain();
  if (p < 0 || static_cast<std::size_t>(p) >= d.base_count || !d.augmented) {
    throw Error("vertex " + std::to_string(p) + " is not an interior point of S+");
  }
  return {p, t.degree(p), t.fingerprint()};
}

/// The star-shaped polygon left by removing p and its edges; ids are the link.
inline SimplePolygon hole_of(const Triangulation& t, int p) {
  make_vint(t, p);
  const auto link = t.link(p);
  std::vector<Point> pts;
  for (int v : link) pts.push_back(t.domain().points[v]);
  return SimplePolygon::make(std::move(pts), t.domain().points[p], link);
}

/// Number of triangulations of the hole.
inline BigCount support(const Triangulation& t, int p) { return count_triangulations(hole_of(t, p)); }

/// Memoized hole counts keyed by the CCW vertex-id cycle, for one domain.
class SupportCache {
 public:
  const BigCount& get(const Domain& d, std::vector<int> cycle) {
    const auto first = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), first, cycle.end());
    auto it = memo_.find(cycle);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    std::vector<Point> pts;
    pts.reserve(cycle.size());
    for (int v : cycle) pts.push_back(d.points[v]);
    return memo_.emplace(std::move(cycle), detail::count_triangulations_unchecked(pts)).first->second;
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  struct CycleHash {
    std::size_t operator()(const std::vector<int>& c) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (int v : c) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 0x100000001b3ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::vector<int>, BigCount, CycleHash> memo_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Parent-array tree with node 0 as root.
struct RootedTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;

  std::size_t size() const { return parent.size(); }
  std::size_t edge_count() const { return parent.empty() ? 0 : parent.size() - 1; }

  int add_child(int p) {
    const int id = static_cast<int>(parent.size());
    parent.push_back(p);
    children.emplace_back();
    if (p >= 0) children[p].push_back(id);
    return id;
  }

  static RootedTree root_only() {
    RootedTree t;
    t.add_child(-1);
    return t;
  }

  int level(int v) const {
    int l = 0;
    while (parent[v] >= 0) {
      v = parent[v];
      ++l;
    }
    return l;
  }
};

/// Calls f(nodes) once per subtree containing the root; `nodes` lists the
/// non-root members (one per tree edge). Throws CapExceeded past `cap`.
template <class F>
std::size_t for_each_root_subtree(const RootedTree& tree, F&& f, std::size_t cap = 1'000'000) {
  std::vector<int> chosen;
  std::vector<int> frontier(tree.children[0].begin(), tree.children[0].end());
  std::size_t emitted = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == frontier.size()) {
      if (++emitted > cap) throw CapExceeded("flip-tree has more than " + std::to_string(cap) + " subtrees");
      f(static_cast<const std::vector<int>&>(chosen));
      return;
    }
    rec(pos + 1);
    const int v = frontier[pos];
    chosen.push_back(v);
    const std::size_t old = frontier.size();
    frontier.insert(frontier.end(), tree.children[v].begin(), tree.children[v].end());
    rec(pos + 1);
    frontier.resize(old);
    chosen.pop_back();
  };
  rec(0);
  return emitted;
}

struct FlipTreeNode {
  int face = -1;         // face of T (root: -1, its region is the three faces at p)
  Tri triangle{};        // CCW; for the root, the three neighbours of p
  int apex = -1;         // vertex of the dual edge (root: -1)
  int parent = -1;
  int from = -1;         // dual edge (from, to), CCW as seen from p
  int to = -1;
  int opposite = -1;     // vertex of the parent region facing the dual edge
  bool rigid = false;
  int level = 0;
  std::array<int, 3> slot{-1, -1, -1};  // root: edges (n0,n1),(n1,n2),(n2,n0); else (from,apex),(apex,to)
};

class FlipTree {
 public:
  int point = -1;
  std::array<int, 3> neighbours{};  // CCW link of the 3-vint
  std::array<int, 3> root_faces{};  // face with directed edge neighbours[i] -> neighbours[i+1]
  std::vector<FlipTreeNode> nodes;  // nodes[0] is the root

  std::size_t edge_count() const { return nodes.size() - 1; }

  RootedTree shape() const {
    RootedTree t;
    for (const auto& n : nodes) t.add_child(n.parent);
    return t;
  }

  int apex_or_point(int node) const { return node == 0 ? point : nodes[node].apex; }

  /// CCW hole boundary of the vint for the subtree whose non-root members are
  /// flagged in `in`.
  std::vector<int> boundary(const std::vector<char>& in) const {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i) walk(0, i, neighbours[i], neighbours[(i + 1) % 3], in, out);
    return out;
  }

  std::vector<int> boundary_of(const std::vector<int>& members) const { return boundary(flags(members)); }

  std::vector<char> flags(const std::vector<int>& members) const {
    std::vector<char> in(nodes.size(), 0);
    for (int v : members) in[v] = 1;
    return in;
  }

  /// Graphviz export: nodes labelled by apex index, rigid edges solid, others dashed.
  std::string to_dot() const {
    std::ostringstream os;
    os << "graph fliptree {\n";
    os << "  n0 [label=\"v" << point << "\", shape=box];\n";
    for (std::size_t i = 1; i < nodes.size(); ++i) os << "  n" << i << " [label=\"" << nodes[i].apex << "\"];\n";
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      os << "  n" << nodes[i].parent << " -- n" << i << " [style=" << (nodes[i].rigid ? "solid" : "dashed")
         << ", label=\"" << nodes[i].from << "-" << nodes[i].to << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

 private:
  void walk(int node, int slot, int s, int e, const std::vector<char>& in, std::vector<int>& out) const {
    const int c = nodes[node].slot[slot];
    if (c >= 0 && in[c]) {
      const int w = nodes[c].apex;
      walk(c, 0, s, w, in, out);
      walk(c, 1, w, e, in, out);
    } else {
      out.push_back(s);
    }
  }
};

namespace detail {

/// face index by directed edge a->b (CCW inside the face), -1 if none.
class DirectedFaces {
 public:
  explicit DirectedFaces(const Triangulation& t) : n_(t.vertex_count()), face_(n_ * n_, -1) {
    const auto& tris = t.triangles();
    for (int f = 0; f < static_cast<int>(tris.size()); ++f) {
      for (int k = 0; k < 3; ++k) face_[tris[f][k] * n_ + tris[f][(k + 1) % 3]] = f;
    }
  }
  int operator()(int a, int b) const { return face_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<int> face_;
};

inline int third_vertex(const Tri& t, int a, int b) {
  for (int v : t) {
    if (v != a && v != b) return v;
  }
  return -1;
}

}  // namespace detail

/// Root: the triangle of the three neighbours. A root edge gets a child when it
/// is flippable in T; a deeper edge (s,e) gets one when the face beyond it and
/// the triangle (s,e,p) form a convex quadrilateral. An edge is rigid when its
/// dual edge cannot be flipped inside the union of the two adjacent regions.
inline FlipTree build_flip_tree(const Triangulation& t, int p) {
  const Vint v = make_vint(t, p);
  if (v.degree != 3) throw NotA3Vint("vertex " + std::to_string(p) + " has degree " + std::to_string(v.degree));
  const auto& pts = t.domain().points;
  const auto link = t.link(p);
  const detail::DirectedFaces faces(t);

  FlipTree tree;
  tree.point = p;
  tree.neighbours = {link[0], link[1], link[2]};
  for (int i = 0; i < 3; ++i) tree.root_faces[i] = faces(link[i], link[(i + 1) % 3]);
  FlipTreeNode root;
  root.triangle = {link[0], link[1], link[2]};
  tree.nodes.push_back(root);

  std::function<void(int, int, int, int, int)> expand = [&](int parent, int slot, int s, int e, int o) {
    const int f = faces(e, s);
    if (f < 0) return;  // hull edge
    const int w = detail::third_vertex(t.triangles()[f], s, e);
    if (!(ccw(pts[p], pts[s], pts[w]) && ccw(pts[p], pts[w], pts[e]))) return;
    FlipTreeNode node;
    node.face = f;
    node.triangle = {s, w, e};
    node.apex = w;
    node.parent = parent;
    node.from = s;
    node.to = e;
    node.opposite = o;
    node.rigid = !(ccw(pts[o], pts[s], pts[w]) && ccw(pts[o], pts[w], pts[e]));
    node.level = tree.nodes[parent].level + 1;
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);
    tree.nodes[parent].slot[slot] = id;
    expand(id, 0, s, w, e);
    expand(id, 1, w, e, s);
  };
  for (int i = 0; i < 3; ++i) expand(0, i, link[i], link[(i + 1) % 3], link[(i + 2) % 3]);
  return tree;
}

/// The triangulation of the vint for a subtree: T with the subtree's region
/// re-triangulated as a fan from p.
inline Triangulation fan_retriangulation(const Triangulation& t, const FlipTree& tree, const std::vector<int>& members) {
  std::vector<char> drop(t.triangles().size(), 0);
  for (int f : tree.root_faces) drop[f] = 1;
  for (int v : members) drop[tree.nodes[v].face] = 1;
  std::vector<Tri> tris;
  for (std::size_t f = 0; f < t.triangles().size(); ++f) {
    if (!drop[f]) tris.push_back(t.triangles()[f]);
  }
  const auto ring = tree.boundary_of(members);
  for (std::size_t i = 0; i < ring.size(); ++i) tris.push_back({tree.point, ring[i], ring[(i + 1) % ring.size()]});
  return Triangulation::from_triangles(t.domain_ptr(), std::move(tris));
}

namespace detail {

inline std::vector<EdgeRef> dual_edges(const FlipTree& tree, const std::vector<int>& members) {
  std::vector<EdgeRef> out;
  for (int v : members) out.emplace_back(tree.nodes[v].from, tree.nodes[v].to);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

struct ChargingVint {
  std::vector<int> members;  // flip-tree nodes of the subtree (root implied)
  std::vector<EdgeRef> dual_edges;
  int degree = 0;
  std::vector<int> hole;  // CCW boundary ids
  Triangulation triangulation;
};

/// One entry per root-containing subtree, in canonical order (size, then dual edges).
inline std::vector<ChargingVint> enumerate_charging_vints(const Triangulation& t, const FlipTree& tree,
                                                          std::size_t cap = 1'000'000) {
  std::vector<std::vector<int>> subtrees;
  for_each_root_subtree(tree.shape(), [&](const std::vector<int>& m) { subtrees.push_back(m); }, cap);
  std::vector<ChargingVint> out;
  for (auto& m : subtrees) {
    auto duals = detail::dual_edges(tree, m);
    out.push_back({m, duals, static_cast<int>(m.size()) + 3, tree.boundary_of(m), fan_retriangulation(t, tree, m)});
  }
  std::sort(out.begin(), out.end(), [](const ChargingVint& a, const ChargingVint& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.dual_edges < b.dual_edges;
  });
  return out;
}

inline std::vector<ChargingVint> enumerate_charging_vints(const Triangulation& t, int p, std::size_t cap = 1'000'000) {
  return enumerate_charging_vints(t, build_flip_tree(t, p), cap);
}

struct LevelStats {
  int lambda1 = 0;
  int lambda2 = 0;
  int lambda3 = 0;
  int nu2 = 0;    // level-1 nodes with two children
  int deep = 0;   // edges at level >= 4
  int m = 0;      // edge count

  /// Branching limits of a core: lambda1<=3, lambda2<=2 lambda1, lambda3<=2 lambda2, 2 nu2<=lambda2.
  bool within_limits() const {
    return lambda1 <= 3 && lambda2 <= 2 * lambda1 && lambda3 <= 2 * lambda2 && 2 * nu2 <= lambda2;
  }
};

inline LevelStats level_stats(const RootedTree& tree) {
  LevelStats s;
  s.m = static_cast<int>(tree.edge_count());
  for (std::size_t v = 1; v < tree.size(); ++v) {
    const int l = tree.level(static_cast<int>(v));
    if (l == 1) {
      ++s.lambda1;
      if (tree.children[v].size() == 2) ++s.nu2;
    } else if (l == 2) {
      ++s.lambda2;
    } else if (l == 3) {
      ++s.lambda3;
    } else {
      ++s.deep;
    }
  }
  return s;
}

/// Maximal root-containing subtree of rigid edges.
struct RigidCore {
  RootedTree tree;
  std::vector<int> flip_nodes;  // core node -> flip-tree node
  LevelStats stats;
};

inline RigidCore rigid_core(const FlipTree& ft) {
  RigidCore core;
  core.tree = RootedTree::root_only();
  core.flip_nodes = {0};
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [fnode, cnode] = stack.back();
    stack.pop_back();
    for (int c : ft.nodes[fnode].slot) {
      if (c < 0 || !ft.nodes[c].rigid) continue;
      const int id = core.tree.add_child(cnode);
      core.flip_nodes.push_back(c);
      stack.emplace_back(c, id);
    }
  }
  core.stats = level_stats(core.tree);
  return core;
}

/// Sum of (4 - j) over root-containing subtrees with j edges, restricted to j
/// in [min_j, max_j].
inline Rational subtree_census(const RootedTree& tree, int min_j, int max_j) {
  long long sum = 0;
  for_each_root_subtree(tree, [&](const std::vector<int>& m) {
    const int j = static_cast<int>(m.size());
    if (j >= min_j && j <= max_j) sum += 4 - j;
  });
  return Rational(sum);
}

inline Rational contr_plus_census(const RootedTree& core) { return subtree_census(core, 0, 3); }

/// 4 + C(l1,3) + l1^2 + 2 l1 + (l1+1) l2 + l3 + nu2, for cores without level-4 edges.
inline Rational contr_plus_closed_form(const LevelStats& s) {
  if (s.deep > 0) throw HasDeepEdges("core has edges below level 3");
  const long long l1 = s.lambda1;
  const long long choose3 = l1 * (l1 - 1) * (l1 - 2) / 6;
  return Rational(4 + choose3 + l1 * l1 + 2 * l1 + (l1 + 1) * s.lambda2 + s.lambda3 + s.nu2);
}

/// Positive charge from the core's subtrees; closed form when it applies.
inline Rational contr_plus(const RootedTree& core) {
  const auto s = level_stats(core);
  if (s.deep > 0) return contr_plus_census(core);
  return contr_plus_closed_form(s);
}

/// Negative charge from the core's subtrees with at least 5 edges.
inline Rational contr_minus(const RootedTree& core) {
  return subtree_census(core, 5, std::numeric_limits<int>::max());
}

struct ChargeContribution {
  std::size_t edges = 0;
  int degree = 3;
  BigCount support = 1;
  Rational amount = 0;
  std::vector<EdgeRef> dual_edges;
};

struct ChargeOptions {
  std::size_t subtree_cap = 1'000'000;
  bool keep_contributions = true;
};

struct ChargeReport {
  int point = -1;
  std::uint64_t fingerprint = 0;
  std::vector<ChargeContribution> contributions;  // canonical order
  Rational total = 0;
  std::map<int, std::size_t> chargers_by_degree;  // degree -> number of vints charging
  std::size_t subtrees = 0;
};

namespace detail {

/// Exact sum of (4-j)/supp grouped by support, so each 3-vint costs one division per distinct support.
class SupportBuckets {
 public:
  void add(const BigCount& support, long long weight) {
    for (auto& [s, w] : buckets_) {
      if (s == support) {
        w += weight;
        return;
      }
    }
    buckets_.emplace_back(support, weight);
  }
  Rational total() const {
    Rational r = 0;
    for (const auto& [s, w] : buckets_) {
      if (w != 0) r += Rational(BigCount(w), s);
    }
    return r;
  }

 private:
  std::vector<std::pair<BigCount, long long>> buckets_;
};

}  // namespace detail

/// Charge received by the 3-vint (p, T): each j-edge subtree of its flip-tree is a
/// (j+3)-vint u sending (4 - j)/supp(u).
inline ChargeReport charge(const Triangulation& t, int p, SupportCache* cache = nullptr, const ChargeOptions& opts = {}) {
  SupportCache local;
  SupportCache& memo = cache ? *cache : local;
  const FlipTree tree = build_flip_tree(t, p);
  ChargeReport rep;
  rep.point = p;
  rep.fingerprint = t.fingerprint();
  detail::SupportBuckets buckets;
  std::vector<char> in(tree.nodes.size(), 0);
  rep.subtrees = for_each_root_subtree(
      tree.shape(),
      [&](const std::vector<int>& members) {
        for (int v : members) in[v] = 1;
        const BigCount& s = memo.get(t.domain(), tree.boundary(in));
        for (int v : members) in[v] = 0;
        const auto j = static_cast<long long>(members.size());
        buckets.add(s, 4 - j);
        ++rep.chargers_by_degree[static_cast<int>(j) + 3];
        if (opts.keep_contributions) {
          rep.contributions.push_back(
              {members.size(), static_cast<int>(j) + 3, s, Rational(BigCount(4 - j), s), detail::dual_edges(tree, members)});
        }
      },
      opts.subtree_cap);
  rep.total = buckets.total();
  std::sort(rep.contributions.begin(), rep.contributions.end(), [](const auto& a, const auto& b) {
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.dual_edges < b.dual_edges;
  });
  return rep;
}

/// 28 17/28: the charge of the worst flip-tree known; exceeding it is noteworthy, not an error.
inline Rational known_worst_charge() { return Rational(801, 28); }

inline Rational charge_ceiling() { return Rational(30); }

/// C_{i-1} - C_{i-2}: most i-vints that can charge one 3-vint.
inline BigCount charger_bound(int degree) {
  if (degree < 3) return 0;
  return catalan(static_cast<unsigned>(degree - 1)) - catalan(static_cast<unsigned>(degree - 2));
}

inline unsigned thread_count_from_env() {
  if (const char* env = std::getenv("TRICHOR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct AuditOptions {
  std::optional<std::size_t> enumeration_cap;
  std::size_t subtree_cap = 1'000'000;
  unsigned threads = 0;  // 0: TRICHOR_THREADS, else hardware concurrency
};

struct AuditReport {
  std::size_t n = 0;
  BigCount triangulations = 0;
  BigCount three_vints = 0;
  Rational max_charge = 0;
  std::optional<std::pair<std::uint64_t, int>> argmax;  // (fingerprint, point)
  BigCount outgoing = 0;   // sum over all vints of (7 - deg)
  Rational received = 0;   // sum over 3-vints of their charge
  std::map<int, std::size_t> max_chargers;  // degree -> max number charging one 3-vint
  Rational vhat3 = 0;
  std::size_t above_known_worst = 0;
  std::size_t at_or_above_ceiling = 0;
  std::size_t max_subtrees = 0;

  bool conserved() const { return Rational(outgoing) == received; }
  bool charge_bound_ok() const { return at_or_above_ceiling == 0; }
  bool charger_bound_ok() const {
    for (const auto& [deg, c] : max_chargers) {
      if (BigCount(c) > charger_bound(deg)) return false;
    }
    return true;
  }
  bool vhat_bound_ok() const { return 30 * vhat3 >= Rational(static_cast<long long>(n)); }
  bool ok() const { return conserved() && charge_bound_ok() && charger_bound_ok() && vhat_bound_ok(); }
};

namespace detail {

struct AuditPartial {
  long long outgoing = 0;
  long long three_vints = 0;
  long long v3_total = 0;
  Rational received = 0;
  std::optional<Rational> max_charge;
  std::optional<std::pair<std::uint64_t, int>> argmax;
  std::map<int, std::size_t> max_chargers;
  std::size_t above_known_worst = 0;
  std::size_t at_or_above_ceiling = 0;
  std::size_t max_subtrees = 0;

  void merge(const AuditPartial& o) {
    outgoing += o.outgoing;
    three_vints += o.three_vints;
    v3_total += o.v3_total;
    received += o.received;
    if (o.max_charge && (!max_charge || *o.max_charge > *max_charge)) {
      max_charge = o.max_charge;
      argmax = o.argmax;
    }
    for (const auto& [d, c] : o.max_chargers) max_chargers[d] = std::max(max_chargers[d], c);
    above_known_worst += o.above_known_worst;
    at_or_above_ceiling += o.at_or_above_ceiling;
    max_subtrees = std::max(max_subtrees, o.max_subtrees);
  }
};

inline void audit_one(const Triangulation& t, SupportCache& cache, std::size_t subtree_cap, AuditPartial& acc) {
  const Domain& d = t.domain();
  const auto deg = t.degrees();
  ChargeOptions copts;
  copts.subtree_cap = subtree_cap;
  copts.keep_contributions = false;
  const Rational worst = known_worst_charge();
  const Rational ceiling = charge_ceiling();
  for (std::size_t p = 0; p < d.base_count; ++p) {
    acc.outgoing += 7 - deg[p];
    if (deg[p] != 3) continue;
    ++acc.three_vints;
    ++acc.v3_total;
    const auto rep = charge(t, static_cast<int>(p), &cache, copts);
    acc.received += rep.total;
    if (!acc.max_charge || rep.total > *acc.max_charge) {
      acc.max_charge = rep.total;
      acc.argmax = std::pair{rep.fingerprint, static_cast<int>(p)};
    }
    for (const auto& [dg, c] : rep.chargers_by_degree) acc.max_chargers[dg] = std::max(acc.max_chargers[dg], c);
    if (rep.total > worst) ++acc.above_known_worst;
    if (rep.total >= ceiling) ++acc.at_or_above_ceiling;
    acc.max_subtrees = std::max(acc.max_subtrees, rep.subtrees);
  }
}

}  // namespace detail

/// Charges every 3-vint of every triangulation of S+ and checks conservation,
/// the charge ceiling, the charger-count bound and 30 vhat_3 >= n.
inline AuditReport audit(const AugmentedPointSet& s, const AuditOptions& opts = {}) {
  const DomainPtr domain = make_domain(s);
  const unsigned threads = opts.threads ? opts.threads : thread_count_from_env();
  std::vector<SupportCache> caches(threads);
  detail::AuditPartial total;
  std::vector<Triangulation> batch;
  constexpr std::size_t kBatch = 4096;
  std::size_t count = 0;

  auto flush = [&] {
    if (batch.empty()) return;
    std::vector<detail::AuditPartial> parts(threads);
    const std::size_t per = (batch.size() + threads - 1) / threads;
    auto work = [&](unsigned w) {
      const std::size_t lo = w * per;
      const std::size_t hi = std::min(batch.size(), lo + per);
      for (std::size_t i = lo; i < hi; ++i) detail::audit_one(batch[i], caches[w], opts.subtree_cap, parts[w]);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (const auto& part : parts) total.merge(part);
    batch.clear();
  };

  EnumerationOptions eopts;
  eopts.cap = opts.enumeration_cap;
  const bool complete = for_each_triangulation(
      domain,
      [&](const Triangulation& t) {
        ++count;
        batch.push_back(t);
        if (batch.size() >= kBatch) flush();
      },
      eopts);
  flush();
  if (!complete) throw CapExceeded("audit needs an exhaustive enumeration");

  AuditReport rep;
  rep.n = s.interior_count();
  rep.triangulations = count;
  rep.three_vints = total.three_vints;
  rep.max_charge = total.max_charge.value_or(Rational(0));
  rep.argmax = total.argmax;
  rep.outgoing = total.outgoing;
  rep.received = total.received;
  rep.max_chargers = total.max_chargers;
  rep.vhat3 = Rational(BigCount(total.v3_total), BigCount(count));
  rep.above_known_worst = total.above_known_worst;
  rep.at_or_above_ceiling = total.at_or_above_ceiling;
  rep.max_subtrees = total.max_subtrees;
  return rep;
}

struct StructuralReport {
  std::size_t rule1_checked = 0;
  std::size_t rule1_violations = 0;
  std::size_t monotone_checked = 0;
  std::size_t monotone_violations = 0;
  std::size_t bound_checked = 0;
  std::size_t bound_violations = 0;
  std::size_t convex_equalities = 0;  // convex holes meeting C_{deg-2}
  std::size_t strict_nonconvex = 0;   // non-convex holes strictly below it

  bool ok() const { return rule1_violations == 0 && monotone_violations == 0 && bound_violations == 0; }
};

/// A rigid level-1 or level-2 core edge D with two non-rigid children E, F:
/// flipping E and flipping F cannot both make D's dual edge flippable.
/// Returns (checked, violations) for one flip-tree.
inline std::pair<std::size_t, std::size_t> check_single_flip_rule(const Triangulation& t, const FlipTree& tree) {
  const auto& pts = t.domain().points;
  std::vector<char> in_core(tree.nodes.size(), 0);
  in_core[0] = 1;
  for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
    // parents precede children in node order
    in_core[v] = tree.nodes[v].rigid && in_core[tree.nodes[v].parent];
  }
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
    const auto& d = tree.nodes[v];
    if (!in_core[v] || d.level > 2) continue;
    const int e = d.slot[0];
    const int f = d.slot[1];
    if (e < 0 || f < 0 || tree.nodes[e].rigid || tree.nodes[f].rigid) continue;
    ++checked;
    auto frees_d = [&](int child) {
      const int w = tree.nodes[child].apex;
      return ccw(pts[d.opposite], pts[d.from], pts[w]) && ccw(pts[d.opposite], pts[w], pts[d.to]);
    };
    if (frees_d(e) && frees_d(f)) ++violations;
  }
  return {checked, violations};
}

/// Over every triangulation of S+: the single-flip rule on every flip-tree,
/// supp(u) >= supp(u') for every single down-flip u -> u', and
/// 1 <= supp(u) <= C_{deg-2} with equality exactly for convex holes.
inline StructuralReport check_structural_rules(const AugmentedPointSet& s, const EnumerationOptions& eopts = {}) {
  const DomainPtr domain = make_domain(s);
  SupportCache cache;
  StructuralReport rep;
  const bool complete = for_each_triangulation(
      domain,
      [&](const Triangulation& t) {
        const auto deg = t.degrees();
        for (std::size_t pi = 0; pi < domain->base_count; ++pi) {
          const int p = static_cast<int>(pi);
          const auto link = t.link(p);
          const BigCount& supp = cache.get(*domain, link);
          ++rep.bound_checked;
          const BigCount cap = catalan(static_cast<unsigned>(deg[p] - 2));
          std::vector<Point> ring;
          for (int v : link) ring.push_back(domain->points[v]);
          const bool convex = is_convex(SimplePolygon::make(ring, domain->points[p]));
          const bool at_cap = supp == cap;
          if (supp < 1 || supp > cap || at_cap != convex) ++rep.bound_violations;
          if (convex && at_cap) ++rep.convex_equalities;
          if (!convex && supp < cap) ++rep.strict_nonconvex;
          if (deg[p] == 3) {
            const auto [c, v] = check_single_flip_rule(t, build_flip_tree(t, p));
            rep.rule1_checked += c;
            rep.rule1_violations += v;
            continue;
          }
          const BigCount supp_u = supp;
          for (int q : link) {
            const EdgeRef e(p, q);
            if (!t.is_flippable(e)) continue;
            const Triangulation down = t.flip(e);
            ++rep.monotone_checked;
            if (cache.get(*domain, down.link(p)) > supp_u) ++rep.monotone_violations;
          }
        }
      },
      eopts);
  if (!complete) throw CapExceeded("structural check needs an exhaustive enumeration");
  return rep;
}

// JSON surfaces.

inline nlohmann::json fraction_json(const Rational& q) {
  return {{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

inline nlohmann::json to_json(const ChargeReport& r) {
  nlohmann::json contributions = nlohmann::json::array();
  for (const auto& c : r.contributions) {
    nlohmann::json duals = nlohmann::json::array();
    for (const auto& e : c.dual_edges) duals.push_back({e.a, e.b});
    contributions.push_back({{"edges", c.edges},
                             {"degree", c.degree},
                             {"support", c.support.str()},
                             {"amount", fraction_json(c.amount)},
                             {"dual_edges", std::move(duals)}});
  }
  nlohmann::json by_degree = nlohmann::json::object();
  for (const auto& [d, c] : r.chargers_by_degree) by_degree[std::to_string(d)] = c;
  return {{"point", r.point},
          {"fingerprint", hex64(r.fingerprint)},
          {"total", fraction_json(r.total)},
          {"total_decimal", to_decimal(r.total, 6)},
          {"chargers_by_degree", std::move(by_degree)},
          {"contributions", std::move(contributions)}};
}

inline nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json chargers = nlohmann::json::object();
  for (const auto& [d, c] : r.max_chargers) {
    chargers[std::to_string(d)] = {{"max", c}, {"bound", charger_bound(d).str()}};
  }
  nlohmann::json j = {{"n", r.n},
                      {"triangulations", r.triangulations.str()},
                      {"three_vints", r.three_vints.str()},
                      {"max_charge", fraction_json(r.max_charge)},
                      {"max_charge_decimal", to_decimal(r.max_charge, 6)},
                      {"max_charge_mixed", to_mixed(r.max_charge)},
                      {"charge_bound_ok", r.charge_bound_ok()},
                      {"above_known_worst", r.above_known_worst},
                      {"outgoing", r.outgoing.str()},
                      {"received", fraction_json(r.received)},
                      {"conserved", r.conserved()},
                      {"max_chargers", std::move(chargers)},
                      {"charger_bound_ok", r.charger_bound_ok()},
                      {"vhat3", fraction_json(r.vhat3)},
                      {"vhat3_decimal", to_decimal(r.vhat3, 6)},
                      {"vhat_bound_ok", r.vhat_bound_ok()}};
  if (r.argmax) j["argmax"] = {{"fingerprint", hex64(r.argmax->first)}, {"point", r.argmax->second}};
  return j;
}

inline nlohmann::json to_json(const StructuralReport& r) {
  return {{"rule1_checked", r.rule1_checked},
          {"rule1_violations", r.rule1_violations},
          {"monotone_checked", r.monotone_checked},
          {"monotone_violations", r.monotone_violations},
          {"bound_checked", r.bound_checked},
          {"bound_violations", r.bound_violations},
          {"convex_equalities", r.convex_equalities},
          {"strict_nonconvex", r.strict_nonconvex},
          {"ok", r.ok()}};
}

}  // namespace trichor
