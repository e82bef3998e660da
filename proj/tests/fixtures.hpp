#pragma once

// Instances shared by the test suites.

#include <random>
#include <string>
#include <vector>

#include "trichor/trichor.hpp"

namespace trichor::fixtures {

/// Two nested triangles inside the frame (nine points in all).
inline AugmentedPointSet nested_triangles() {
  return AugmentedPointSet::with_frame({{-41, -31}, {47, -23}, {-3, 52}, {-9, -7}, {11, -5}, {1, 12}},
                                       {Point{-200, -150}, Point{210, -140}, Point{3, 230}});
}

inline AugmentedPointSet random_augmented(std::size_t n, std::uint64_t seed) { return augment(gen_random(n, seed)); }

struct NamedInstance {
  std::string name;
  AugmentedPointSet set;
};

/// Convex sets framed (3..7), arc sets (1..7), and `randoms` random sets with
/// 4..8 points.
inline std::vector<NamedInstance> corpus(std::size_t randoms = 50) {
  std::vector<NamedInstance> out;
  for (std::size_t n = 3; n <= 7; ++n) out.push_back({"convex" + std::to_string(n), augment(gen_convex(n))});
  for (std::size_t n = 1; n <= 7; ++n) out.push_back({"arc" + std::to_string(n), gen_convex_arc_in_triangle(n)});
  for (std::size_t i = 0; i < randoms; ++i) {
    const std::size_t n = 4 + i % 5;
    out.push_back({"random" + std::to_string(n) + "_" + std::to_string(i), random_augmented(n, i)});
  }
  return out;
}

/// Tree with at most 3 children at the root and 2 elsewhere, no deeper than `max_level`.
template <class Rng>
RootedTree random_core(Rng& rng, int max_level = 3) {
  RootedTree t = RootedTree::root_only();
  std::bernoulli_distribution keep(std::uniform_real_distribution<double>(0.3, 0.95)(rng));
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [v, level] = stack.back();
    stack.pop_back();
    if (level == max_level) continue;
    const int slots = v == 0 ? 3 : 2;
    for (int s = 0; s < slots; ++s) {
      if (!keep(rng)) continue;
      stack.emplace_back(t.add_child(v), level + 1);
    }
  }
  return t;
}

/// Complete tree: 3 root children, then 2 per node, down to `levels`.
inline RootedTree complete_core(int levels) {
  RootedTree t = RootedTree::root_only();
  std::vector<int> frontier{0};
  for (int l = 0; l < levels; ++l) {
    std::vector<int> next;
    for (int v : frontier) {
      for (int s = 0; s < (v == 0 ? 3 : 2); ++s) next.push_back(t.add_child(v));
    }
    frontier = next;
  }
  return t;
}

inline RootedTree path_tree(int edges) {
  RootedTree t = RootedTree::root_only();
  for (int i = 0; i < edges; ++i) t.add_child(i);
  return t;
}

}  // namespace trichor::fixtures
