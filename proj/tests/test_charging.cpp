#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trichor/trichor.hpp"

using namespace trichor;

namespace {

AugmentedPointSet single_point() { return augment(validate_general_position({{0, 0}})); }

/// Visits every (triangulation, 3-vint) pair of the instance.
template <class F>
void for_each_three_vint(const AugmentedPointSet& s, F&& f) {
  for_each_triangulation(make_domain(s), [&](const Triangulation& t) {
    const auto deg = t.degrees();
    for (int p = 0; p < static_cast<int>(s.interior_count()); ++p) {
      if (deg[p] == 3) f(t, p);
    }
  });
}

bool in_core(const FlipTree& tree, int v) {
  for (; v > 0; v = tree.nodes[v].parent) {
    if (!tree.nodes[v].rigid) return false;
  }
  return true;
}

FlipTree synthetic_tree(const std::vector<std::pair<int, bool>>& parent_rigid) {
  FlipTree t;
  t.nodes.emplace_back();
  for (const auto& [parent, rigid] : parent_rigid) {
    FlipTreeNode n;
    n.parent = parent;
    n.rigid = rigid;
    n.level = t.nodes[parent].level + 1;
    auto& slots = t.nodes[parent].slot;
    *std::find(slots.begin(), slots.end(), -1) = static_cast<int>(t.nodes.size());
    t.nodes.push_back(n);
  }
  return t;
}

}  // namespace

TEST(Hole, ThreeVintIsTriangle) {
  const auto t = Triangulation::initial(make_domain(single_point()));
  const auto h = hole_of(t, 0);
  EXPECT_EQ(h.size(), 3U);
  EXPECT_EQ(count_triangulations(h), 1);
  EXPECT_EQ(support(t, 0), 1);
  EXPECT_EQ(h.kernel_witness(), t.domain().points[0]);
}

TEST(Hole, FrameVertexIsNotAVint) {
  const auto t = Triangulation::initial(make_domain(single_point()));
  EXPECT_THROW(hole_of(t, 1), Error);
  EXPECT_THROW(make_vint(t, 3), Error);
}

TEST(Hole, ConvexAndReflexLinks) {
  // every vint over the corpus: convex hole -> C_{deg-2}; reflex 4-gon -> 1
  bool saw_convex4 = false;
  bool saw_convex5 = false;
  bool saw_reflex4 = false;
  for (const auto& inst : fixtures::corpus(6)) {
    for_each_triangulation(make_domain(inst.set), [&](const Triangulation& t) {
      for (int p = 0; p < static_cast<int>(inst.set.interior_count()); ++p) {
        const auto h = hole_of(t, p);
        const auto c = count_triangulations(h);
        ASSERT_EQ(static_cast<int>(h.size()), t.degree(p));
        if (is_convex(h)) {
          EXPECT_EQ(c, catalan(static_cast<unsigned>(h.size() - 2)));
          saw_convex4 = saw_convex4 || h.size() == 4;
          saw_convex5 = saw_convex5 || h.size() == 5;
        } else if (h.size() == 4) {
          EXPECT_EQ(c, 1);
          saw_reflex4 = true;
        }
      }
    });
  }
  EXPECT_TRUE(saw_convex4 && saw_convex5 && saw_reflex4);
}

TEST(Support, MatchesReachableThreeVints) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto s = fixtures::random_augmented(5 + seed % 2, seed);
    for_each_triangulation(make_domain(s), [&](const Triangulation& t) {
      for (int p = 0; p < static_cast<int>(s.interior_count()); ++p) {
        ASSERT_EQ(support(t, p), BigCount(oracle::reachable_three_vints(t, p).size()));
      }
    });
  }
}

TEST(SupportCache, RotationInvariantKey) {
  const auto s = fixtures::random_augmented(6, 1);
  const auto d = make_domain(s);
  SupportCache cache;
  std::size_t vints = 0;
  for_each_triangulation(d, [&](const Triangulation& t) {
    for (int p = 0; p < 6; ++p) {
      auto link = t.link(p);
      std::rotate(link.begin(), link.begin() + 1, link.end());
      ASSERT_EQ(cache.get(*d, link), support(t, p));
      ++vints;
    }
  });
  EXPECT_EQ(cache.hits() + cache.misses(), vints);
  EXPECT_GT(cache.hits(), 0U);
}

TEST(FlipTree, SinglePointIsRootOnly) {
  const auto t = Triangulation::initial(make_domain(single_point()));
  const auto tree = build_flip_tree(t, 0);
  EXPECT_EQ(tree.nodes.size(), 1U);
  const auto vints = enumerate_charging_vints(t, tree);
  ASSERT_EQ(vints.size(), 1U);
  EXPECT_EQ(vints[0].triangulation, t);
  const auto rep = charge(t, 0);
  EXPECT_EQ(rep.total, Rational(4));
  ASSERT_EQ(rep.contributions.size(), 1U);
  EXPECT_EQ(rep.contributions[0].edges, 0U);
  EXPECT_EQ(rep.contributions[0].amount, Rational(4));
}

TEST(FlipTree, RejectsHigherDegree) {
  const auto s = gen_convex_arc_in_triangle(3);
  bool threw = false;
  for_each_triangulation(make_domain(s), [&](const Triangulation& t) {
    for (int p = 0; p < 3; ++p) {
      if (t.degree(p) > 3) {
        EXPECT_THROW(build_flip_tree(t, p), NotA3Vint);
        threw = true;
      }
    }
  });
  EXPECT_TRUE(threw);
}

TEST(FlipTree, ShapeLimitsAndStarShapedSubtrees) {
  for (const auto& inst : fixtures::corpus(8)) {
    if (inst.set.interior_count() > 6) continue;
    for_each_three_vint(inst.set, [&](const Triangulation& t, int p) {
      const auto tree = build_flip_tree(t, p);
      const auto shape = tree.shape();
      EXPECT_LE(shape.children[0].size(), 3U);
      for (std::size_t v = 1; v < shape.size(); ++v) EXPECT_LE(shape.children[v].size(), 2U);
      for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
        EXPECT_EQ(tree.nodes[v].level, shape.level(static_cast<int>(v)));
      }
      for_each_root_subtree(shape, [&](const std::vector<int>& m) {
        std::vector<Point> ring;
        for (int v : tree.boundary_of(m)) ring.push_back(t.domain().points[v]);
        ASSERT_NO_THROW(SimplePolygon::make(ring, t.domain().points[p])) << inst.name;
        ASSERT_EQ(ring.size(), m.size() + 3);
      });
    });
  }
}

TEST(FlipTree, ArcThreeMiddlePoint) {
  // middle arc point with its two arc neighbours joined
  const auto s = gen_convex_arc_in_triangle(3);
  int trees = 0;
  for_each_triangulation(make_domain(s), [&](const Triangulation& t) {
    if (t.degree(1) != 3) return;
    ++trees;
    const auto tree = build_flip_tree(t, 1);
    const auto vints = enumerate_charging_vints(t, tree);
    const auto expected = oracle::flips_down_to(t, 1);
    std::set<std::uint64_t> got;
    for (const auto& v : vints) got.insert(v.triangulation.fingerprint());
    EXPECT_EQ(got, expected);
  });
  EXPECT_EQ(trees, 2);
}

TEST(Subtrees, PathAndCounts) {
  for (int j = 0; j <= 6; ++j) {
    std::size_t c = 0;
    for_each_root_subtree(fixtures::path_tree(j), [&](const std::vector<int>&) { ++c; });
    EXPECT_EQ(c, static_cast<std::size_t>(j + 1));
  }
  // complete height-3 core: 1 + 3 + 9 + 28 subtrees of sizes 0..3
  std::map<std::size_t, std::size_t> by_size;
  for_each_root_subtree(fixtures::complete_core(3), [&](const std::vector<int>& m) { ++by_size[m.size()]; });
  EXPECT_EQ(by_size[0], 1U);
  EXPECT_EQ(by_size[1], 3U);
  EXPECT_EQ(by_size[2], 9U);
  EXPECT_EQ(by_size[3], 28U);
}

TEST(Subtrees, CapThrows) {
  EXPECT_THROW(for_each_root_subtree(fixtures::complete_core(3), [](const std::vector<int>&) {}, 100),
               CapExceeded);
}

TEST(Bijection, ChargingVintsEqualReverseSearch) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto s = fixtures::random_augmented(5 + seed % 3, seed + 7);
    for_each_three_vint(s, [&](const Triangulation& t, int p) {
      const auto tree = build_flip_tree(t, p);
      const auto vints = enumerate_charging_vints(t, tree);
      std::set<std::uint64_t> got;
      for (const auto& v : vints) {
        ASSERT_FALSE(v.triangulation.check_invariants());
        ASSERT_EQ(v.triangulation.degree(p), v.degree);
        got.insert(v.triangulation.fingerprint());
      }
      ASSERT_EQ(got.size(), vints.size());
      ASSERT_EQ(got, oracle::flips_down_to(t, p));
    });
  }
}

TEST(Bijection, RigidCoreIsSupportOne) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto s = fixtures::random_augmented(6, seed + 30);
    for_each_three_vint(s, [&](const Triangulation& t, int p) {
      const auto tree = build_flip_tree(t, p);
      for (const auto& v : enumerate_charging_vints(t, tree)) {
        const bool core = std::all_of(v.members.begin(), v.members.end(), [&](int m) { return in_core(tree, m); });
        ASSERT_EQ(core, support(v.triangulation, p) == 1);
      }
    });
  }
}

TEST(RigidCore, Extremes) {
  const auto all = synthetic_tree({{0, true}, {0, true}, {1, true}, {1, true}, {3, true}});
  const auto c = rigid_core(all);
  EXPECT_EQ(c.stats.m, 5);
  EXPECT_EQ(c.stats.lambda1, 2);
  EXPECT_EQ(c.stats.lambda2, 2);
  EXPECT_EQ(c.stats.lambda3, 1);
  EXPECT_EQ(c.stats.nu2, 1);
  const auto none = synthetic_tree({{0, false}, {0, false}, {1, true}});
  EXPECT_EQ(rigid_core(none).stats.m, 0);
  const auto mixed = synthetic_tree({{0, true}, {0, false}, {2, true}, {1, true}});
  const auto mc = rigid_core(mixed);
  EXPECT_EQ(mc.stats.m, 2);
  EXPECT_EQ(mc.flip_nodes, (std::vector<int>{0, 1, 4}));
}

TEST(RigidCore, LimitsOnRealTrees) {
  for (const auto& inst : fixtures::corpus(10)) {
    if (inst.set.interior_count() > 6) continue;
    for_each_three_vint(inst.set, [&](const Triangulation& t, int p) {
      const auto tree = build_flip_tree(t, p);
      const auto core = rigid_core(tree);
      EXPECT_TRUE(core.stats.within_limits());
      // maximal: every rigid child of a core node is in the core
      std::set<int> members(core.flip_nodes.begin(), core.flip_nodes.end());
      for (int v : core.flip_nodes) {
        for (int c : tree.nodes[v].slot) {
          if (c >= 0 && tree.nodes[c].rigid) {
            EXPECT_TRUE(members.count(c));
          }
        }
      }
    });
  }
}

TEST(Contr, CompleteHeightThreeIsFiftyNine) {
  const auto core = fixtures::complete_core(3);
  const auto s = level_stats(core);
  EXPECT_EQ(s.lambda1, 3);
  EXPECT_EQ(s.lambda2, 6);
  EXPECT_EQ(s.lambda3, 12);
  EXPECT_EQ(s.nu2, 3);
  EXPECT_EQ(contr_plus_closed_form(s), Rational(59));
  EXPECT_EQ(contr_plus_census(core), Rational(59));
}

TEST(Contr, RootOnly) {
  const auto core = RootedTree::root_only();
  EXPECT_EQ(contr_plus(core), Rational(4));
  EXPECT_EQ(contr_minus(core), Rational(0));
}

TEST(Contr, ClosedFormEqualsCensusOnRandomCores) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    const auto core = fixtures::random_core(rng);
    const auto s = level_stats(core);
    ASSERT_TRUE(s.within_limits());
    ASSERT_EQ(contr_plus_closed_form(s), contr_plus_census(core));
    EXPECT_LE(contr_plus(core), Rational(13 + 9 * s.m, 2));
    EXPECT_LE(contr_minus(core), Rational(std::min(0, 14 - 3 * s.m)));
  }
}

TEST(Contr, DeepCoresFallBackToCensus) {
  const auto core = fixtures::path_tree(5);
  EXPECT_THROW(contr_plus_closed_form(level_stats(core)), HasDeepEdges);
  EXPECT_EQ(contr_plus(core), Rational(4 + 3 + 2 + 1));
}

TEST(Contr, MinusSmallCores) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto core = fixtures::random_core(rng);
    if (core.edge_count() <= 4) {
      EXPECT_EQ(contr_minus(core), Rational(0));
    } else if (core.edge_count() == 5) {
      EXPECT_EQ(contr_minus(core), Rational(-1));
    }
  }
  // m = 6 with two leaves: two subtrees of size 5 plus the whole tree
  RootedTree two_leaves = RootedTree::root_only();
  const int a = two_leaves.add_child(0);
  const int b = two_leaves.add_child(a);
  two_leaves.add_child(b);
  const int c = two_leaves.add_child(0);
  two_leaves.add_child(c);
  two_leaves.add_child(a);
  ASSERT_EQ(two_leaves.edge_count(), 6U);
  EXPECT_LE(contr_minus(two_leaves), Rational(-4));
}

TEST(Charge, TotalIsSumOfContributions) {
  const auto s = fixtures::random_augmented(6, 3);
  SupportCache cache;
  for_each_three_vint(s, [&](const Triangulation& t, int p) {
    const auto rep = charge(t, p, &cache);
    Rational sum = 0;
    for (const auto& c : rep.contributions) {
      sum += c.amount;
      EXPECT_EQ(c.amount, Rational(BigCount(4 - static_cast<long long>(c.edges)), c.support));
      EXPECT_EQ(c.degree, static_cast<int>(c.edges) + 3);
    }
    EXPECT_EQ(sum, rep.total);
    ASSERT_FALSE(rep.contributions.empty());
    EXPECT_EQ(rep.contributions[0].edges, 0U);
    EXPECT_EQ(rep.contributions[0].amount, Rational(4));
    EXPECT_LT(rep.total, charge_ceiling());
    for (std::size_t i = 1; i < rep.contributions.size(); ++i) {
      const auto& x = rep.contributions[i - 1];
      const auto& y = rep.contributions[i];
      EXPECT_TRUE(x.edges < y.edges || (x.edges == y.edges && x.dual_edges < y.dual_edges));
    }
    ChargeOptions fast;
    fast.keep_contributions = false;
    EXPECT_EQ(charge(t, p, nullptr, fast).total, rep.total);
  });
}

TEST(Audit, SinglePoint) {
  const auto rep = audit(single_point());
  EXPECT_EQ(rep.max_charge, Rational(4));
  EXPECT_EQ(rep.outgoing, 4);
  EXPECT_EQ(rep.received, Rational(4));
  EXPECT_TRUE(rep.ok());
}

TEST(Audit, ArcFour) {
  const auto rep = audit(gen_convex_arc_in_triangle(4));
  EXPECT_TRUE(rep.conserved());
  EXPECT_LT(rep.max_charge, Rational(30));
  EXPECT_EQ(rep.triangulations, 14);
  EXPECT_TRUE(rep.ok());
}

TEST(Audit, ConservationAndBoundsOnCorpus) {
  for (const auto& inst : fixtures::corpus(15)) {
    const auto rep = audit(inst.set);
    EXPECT_TRUE(rep.conserved()) << inst.name;
    EXPECT_TRUE(rep.charge_bound_ok()) << inst.name;
    EXPECT_TRUE(rep.charger_bound_ok()) << inst.name;
    EXPECT_TRUE(rep.vhat_bound_ok()) << inst.name;
    EXPECT_EQ(rep.vhat3, vhat(inst.set, 3)) << inst.name;
  }
}

TEST(Audit, ThreadCountDoesNotChangeResult) {
  const auto s = fixtures::random_augmented(7, 4);
  AuditOptions one;
  one.threads = 1;
  AuditOptions four;
  four.threads = 4;
  const auto a = audit(s, one);
  const auto b = audit(s, four);
  EXPECT_EQ(a.max_charge, b.max_charge);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.received, b.received);
  EXPECT_EQ(a.max_chargers, b.max_chargers);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Audit, CapIsAnError) {
  AuditOptions opts;
  opts.enumeration_cap = 3;
  EXPECT_THROW(audit(augment(gen_convex(6)), opts), CapExceeded);
}

TEST(ChargerBound, Values) {
  EXPECT_EQ(charger_bound(4), 3);
  EXPECT_EQ(charger_bound(5), 9);
  EXPECT_EQ(charger_bound(6), 28);
  EXPECT_EQ(charger_bound(3), 1);
}

TEST(Structural, SinglePointIsVacuous) {
  const auto rep = check_structural_rules(single_point());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.rule1_checked, 0U);
  EXPECT_EQ(rep.monotone_checked, 0U);
}

TEST(Structural, RandomSevenCorpus) {
  std::size_t rule1 = 0;
  std::size_t convex = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto rep = check_structural_rules(fixtures::random_augmented(7, seed));
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.monotone_checked, 0U);
    rule1 += rep.rule1_checked;
    convex += rep.convex_equalities;
  }
  EXPECT_GT(convex, 0U);
  RecordProperty("rule1_checked", static_cast<int>(rule1));
}

TEST(Dot, NodeCountsAndStyles) {
  const auto t1 = Triangulation::initial(make_domain(single_point()));
  const auto dot1 = build_flip_tree(t1, 0).to_dot();
  EXPECT_EQ(std::count(dot1.begin(), dot1.end(), '['), 1);
  const auto s = fixtures::random_augmented(6, 12);
  for_each_three_vint(s, [&](const Triangulation& t, int p) {
    const auto tree = build_flip_tree(t, p);
    const auto dot = tree.to_dot();
    const std::regex node(R"(\n  n\d+ \[label)");
    const std::regex solid("style=solid");
    const auto nodes = std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator());
    const auto solids = std::distance(std::sregex_iterator(dot.begin(), dot.end(), solid), std::sregex_iterator());
    EXPECT_EQ(static_cast<std::size_t>(nodes), tree.edge_count() + 1);
    std::size_t rigid = 0;
    for (std::size_t v = 1; v < tree.nodes.size(); ++v) rigid += tree.nodes[v].rigid;
    EXPECT_EQ(static_cast<std::size_t>(solids), rigid);
    EXPECT_EQ(dot.rfind("graph fliptree {", 0), 0U);
    EXPECT_EQ(dot.back(), '\n');
  });
}

TEST(Json, ChargeReportFractions) {
  const auto t = Triangulation::initial(make_domain(single_point()));
  const auto j = to_json(charge(t, 0));
  EXPECT_EQ(j["total"]["num"], "4");
  EXPECT_EQ(j["total"]["den"], "1");
  EXPECT_EQ(j["contributions"].size(), 1U);
  EXPECT_EQ(j["fingerprint"].get<std::string>().size(), 16U);
}
