#pragma once

// Exhaustive traversal of the flip graph, exact counts and degree statistics.

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "trichor/errors.hpp"
#include "trichor/geom.hpp"
#include "trichor/numeric.hpp"
#include "trichor/triangulation.hpp"

namespace trichor {

enum class Traversal { BreadthFirst, DepthFirst };

struct EnumerationOptions {
  std::optional<std::size_t> cap;  // stop after this many triangulations
  Traversal order = Traversal::BreadthFirst;
  bool keep_fingerprints = false;
};

struct EnumerationStats {
  double seconds = 0.0;
  std::size_t frontier_peak = 0;
};

struct EnumerationResult {
  std::size_t n = 0;  // tracked points
  BigCount count = 0;
  std::map<int, BigCount> degree_totals;  // degree i -> sum over T of v_i(T)
  bool exhaustive = true;
  std::vector<std::uint64_t> fingerprints;  // visit order, when requested
  EnumerationStats stats;

  BigCount degree_total(int i) const {
    auto it = degree_totals.find(i);
    return it == degree_totals.end() ? BigCount(0) : it->second;
  }
};

namespace detail {

struct KeyedTriangulation {
  std::uint64_t hash;
  EdgeKey key;

  friend bool operator==(const KeyedTriangulation& a, const KeyedTriangulation& b) { return a.key == b.key; }
};

struct KeyedHash {
  std::size_t operator()(const KeyedTriangulation& k) const { return static_cast<std::size_t>(k.hash); }
};

}  // namespace detail

/// Visits every triangulation of the domain exactly once, calling
/// `visit(const Triangulation&)`. Dedup is by the full edge key; the fingerprint
/// only buckets. Returns false if the cap stopped the traversal early.
template <class Visitor>
bool for_each_triangulation(const DomainPtr& domain, Visitor&& visit, const EnumerationOptions& opts = {},
                            EnumerationStats* stats = nullptr) {
  std::unordered_set<detail::KeyedTriangulation, detail::KeyedHash> seen;
  std::deque<Triangulation> frontier;
  std::size_t visited = 0;
  std::size_t peak = 0;

  auto admit = [&](Triangulation t) {
    const auto fp = t.fingerprint();
    if (seen.insert({fp, t.key()}).second) frontier.push_back(std::move(t));
  };
  admit(Triangulation::initial(domain));

  while (!frontier.empty()) {
    peak = std::max(peak, frontier.size());
    if (opts.cap && visited >= *opts.cap) {
      if (stats) stats->frontier_peak = peak;
      return false;
    }
    Triangulation cur = opts.order == Traversal::BreadthFirst ? std::move(frontier.front()) : std::move(frontier.back());
    if (opts.order == Traversal::BreadthFirst) {
      frontier.pop_front();
    } else {
      frontier.pop_back();
    }
    ++visited;
    visit(static_cast<const Triangulation&>(cur));
    const auto& adj = cur.neighbors();
    for (int t = 0; t < static_cast<int>(adj.size()); ++t) {
      for (int k = 0; k < 3; ++k) {
        // each interior edge once, from its lower-indexed triangle
        if (adj[t][k] > t && cur.flippable_at(t, k)) admit(cur.flipped_at(t, k));
      }
    }
  }
  if (stats) stats->frontier_peak = peak;
  return true;
}

inline EnumerationResult enumerate_domain(const DomainPtr& domain, const EnumerationOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  EnumerationResult r;
  r.n = domain->base_count;
  std::map<int, std::size_t> totals;
  std::size_t count = 0;
  const bool complete = for_each_triangulation(
      domain,
      [&](const Triangulation& t) {
        ++count;
        const auto deg = t.degrees();
        for (std::size_t i = 0; i < domain->base_count; ++i) ++totals[deg[i]];
        if (opts.keep_fingerprints) r.fingerprints.push_back(t.fingerprint());
      },
      opts, &r.stats);
  r.count = count;
  for (const auto& [i, c] : totals) r.degree_totals[i] = c;
  r.exhaustive = complete;
  r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// All triangulations of S+ (degrees tracked for the interior points only).
inline EnumerationResult enumerate_all(const AugmentedPointSet& s, const EnumerationOptions& opts = {}) {
  return enumerate_domain(make_domain(s), opts);
}

/// All triangulations of a plain point set; hull edges are fixed.
inline EnumerationResult enumerate_all(const PointSet& s, const EnumerationOptions& opts = {}) {
  return enumerate_domain(make_domain(s), opts);
}

inline void require_exhaustive(const EnumerationResult& r) {
  if (!r.exhaustive) throw CapExceeded("enumeration stopped at the cap after " + to_string(r.count) + " triangulations");
}

/// Expected number of degree-i points over a uniformly random triangulation.
inline Rational vhat(const EnumerationResult& r, int i) {
  require_exhaustive(r);
  return Rational(r.degree_total(i), r.count);
}

inline Rational vhat(const AugmentedPointSet& s, int i, const EnumerationOptions& opts = {}) {
  return vhat(enumerate_all(s, opts), i);
}

struct V3RecursionReport {
  BigCount lhs = 0;  // sum over T in Tr(S+) of v3(T)
  BigCount rhs = 0;  // sum over q in S of tri(S+ \ {q})
  std::vector<BigCount> deletions;
  bool holds = false;
};

/// Both sides of  sum_T v3(T) = sum_q tri(S+ \ {q}), each by enumeration.
inline V3RecursionReport check_v3_recursion(const AugmentedPointSet& s, const EnumerationOptions& opts = {}) {
  V3RecursionReport rep;
  const auto full = enumerate_all(s, opts);
  require_exhaustive(full);
  rep.lhs = full.degree_total(3);
  for (std::size_t q = 0; q < s.interior_count(); ++q) {
    const auto part = enumerate_all(s.without(q), opts);
    require_exhaustive(part);
    rep.deletions.push_back(part.count);
    rep.rhs += part.count;
  }
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

/// ceil((1/delta)^n): the count bound implied by vhat_3 >= delta * n.
inline BigCount tri_upper_bound(unsigned n, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw OutOfRange("delta must lie in (0, 1]");
  return ceil(pow(Rational(1) / delta, n));
}

/// Reporting helper for the lower-bound direction: (1/delta)^n, no ceiling.
inline Rational tri_lower_bound_form(unsigned n, const Rational& delta) {
  if (delta <= 0) throw OutOfRange("delta must be positive");
  return pow(Rational(1) / delta, n);
}

}  // namespace trichor
