#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "trichor/trichor.hpp"

using namespace trichor;

namespace {

SimplePolygon convex_polygon(unsigned k) {
  std::vector<Point> pts;
  for (unsigned t = 0; t < k; ++t) pts.push_back({static_cast<std::int64_t>(t), static_cast<std::int64_t>(t * t)});
  return SimplePolygon::make(pts);
}

}  // namespace

TEST(Polygon, RejectsNonSimple) {
  EXPECT_THROW(SimplePolygon::make({{0, 0}, {1, 0}}), NotSimple);
  EXPECT_THROW(SimplePolygon::make({{0, 0}, {0, 1}, {1, 0}}), NotSimple);  // clockwise
  EXPECT_THROW(SimplePolygon::make({{0, 0}, {4, 0}, {0, 3}, {4, 4}}), NotSimple);  // bow tie
  EXPECT_THROW(SimplePolygon::make({{0, 0}, {2, 0}, {4, 0}, {0, 4}}), NotSimple);  // collinear
  EXPECT_THROW(SimplePolygon::make({{0, 0}, {10, 0}, {1, 1}, {0, 10}}, Point{9, 9}), NotSimple);
  EXPECT_NO_THROW(SimplePolygon::make({{0, 0}, {100, 0}, {10, 10}, {0, 100}}, Point{5, 5}));
}

TEST(Count, SmallCases) {
  EXPECT_EQ(count_triangulations(convex_polygon(3)), 1);
  EXPECT_EQ(count_triangulations(convex_polygon(4)), 2);
  EXPECT_EQ(count_triangulations(convex_polygon(5)), 5);
  EXPECT_EQ(count_triangulations(convex_polygon(7)), 42);
  // quadrilateral with a reflex vertex has one diagonal
  EXPECT_EQ(count_triangulations(SimplePolygon::make({{0, 0}, {10, 0}, {2, 2}, {0, 10}})), 1);
}

TEST(Count, ConvexIsCatalan) {
  for (unsigned k = 3; k <= 16; ++k) EXPECT_EQ(count_triangulations(convex_polygon(k)), catalan(k - 2));
}

TEST(Count, OneReflexVertexHexagon) {
  const auto p = reflex_template(4, 1);
  EXPECT_EQ(p.size(), 6U);
  EXPECT_FALSE(is_convex(p));
  EXPECT_EQ(count_triangulations(p), 9);
  EXPECT_EQ(brute_force_count(p), 9);
}

TEST(Count, ReflexTemplatesMatchGeneralizedCatalan) {
  for (unsigned n = 2; n <= 9; ++n) {
    for (unsigned r = 0; 2 * r <= n; ++r) {
      const auto p = reflex_template(n, r);
      EXPECT_EQ(count_triangulations(p), catalan_generalized(n, r)) << "n=" << n << " r=" << r;
    }
  }
}

TEST(Count, BoundsAndConvexEquality) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 3 + rng() % 10;
    const auto p = random_star_polygon(k, rng);
    const auto c = count_triangulations(p);
    EXPECT_GE(c, 1);
    EXPECT_LE(c, catalan(static_cast<unsigned>(k - 2)));
    EXPECT_EQ(c == catalan(static_cast<unsigned>(k - 2)), is_convex(p) || k == 3);
  }
}

TEST(Count, MatchesBruteForceOnStarPolygons) {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_star_polygon(3 + rng() % 10, rng);
    ASSERT_EQ(count_triangulations(p), brute_force_count(p));
  }
}

TEST(BruteForce, SmallAndLimits) {
  EXPECT_EQ(brute_force_count(convex_polygon(4)), 2);
  EXPECT_EQ(brute_force_count(convex_polygon(7)), 42);
  EXPECT_THROW(brute_force_count(convex_polygon(13)), TooLarge);
}

TEST(Chords, ConvexHexagon) {
  const auto p = convex_polygon(6);
  const std::vector<Chord> main{{0, 3}};
  EXPECT_EQ(tr_with_chords(p, main), 4);
  EXPECT_EQ(tr_with_chords(p, std::vector<Chord>{}), 14);
  // brute check: triangulations containing (0,3) split into two quadrilaterals
  const std::vector<Chord> both{{0, 3}, {0, 2}};
  EXPECT_EQ(tr_with_chords(p, both), 2);
  const std::vector<Chord> dup{{0, 3}, {3, 0}};
  EXPECT_EQ(tr_with_chords(p, dup), 4);
}

TEST(Chords, PentagonEar) {
  const std::vector<Chord> ear{{0, 2}};
  EXPECT_EQ(tr_with_chords(convex_polygon(5), ear), 2);
}

TEST(Chords, Errors) {
  const auto p = convex_polygon(6);
  const std::vector<Chord> crossing{{0, 3}, {1, 4}};
  EXPECT_THROW(tr_with_chords(p, crossing), CrossingChords);
  const std::vector<Chord> side{{0, 1}};
  EXPECT_THROW(tr_with_chords(p, side), InvalidChord);
  const auto hex = reflex_template(4, 1);
  const std::vector<Chord> blocked{{0, 2}};
  EXPECT_THROW(tr_with_chords(hex, blocked), InvalidChord);
}

TEST(Chords, FixedEdgeDecomposition) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_star_polygon(6 + rng() % 6, rng);
    // every triangulation has exactly one triangle on the edge (0,1)
    BigCount sum = 0;
    const int k = static_cast<int>(p.size());
    for (int apex = 2; apex < k; ++apex) {
      std::vector<Chord> req;
      if (apex != k - 1) {
        if (!is_valid_chord(p, {0, apex})) continue;
        req.push_back({0, apex});
      }
      if (apex != 2) {
        if (!is_valid_chord(p, {1, apex})) continue;
        req.push_back({1, apex});
      }
      sum += tr_with_chords(p, req);
    }
    EXPECT_EQ(sum, count_triangulations(p));
  }
}

TEST(Catalan, Values) {
  EXPECT_EQ(catalan(0), 1);
  EXPECT_EQ(catalan(3), 5);
  EXPECT_EQ(catalan(4), 14);
  EXPECT_EQ(catalan(5), 42);
  EXPECT_EQ(catalan(6), 132);
  EXPECT_EQ(catalan(10), 16796);
  EXPECT_EQ(catalan(30).str(), "3814986502092304");
}

TEST(Catalan, Generalized) {
  EXPECT_EQ(catalan_generalized(2, 1), 1);
  EXPECT_EQ(catalan_generalized(3, 1), 3);
  EXPECT_EQ(catalan_generalized(4, 2), 6);
  EXPECT_EQ(catalan_generalized(5, 2), 19);
  EXPECT_EQ(catalan_generalized(4, 0), 14);
  EXPECT_THROW(catalan_generalized(3, 2), OutOfRange);
  for (unsigned n = 2; n <= 25; ++n) {
    EXPECT_EQ(catalan_generalized(n, 1), catalan(n) - catalan(n - 1));
    if (n >= 4) {
      EXPECT_EQ(catalan_generalized(n, 2), catalan(n) - 2 * catalan(n - 1) + catalan(n - 2));
    }
  }
}

TEST(PolygonFile, RoundTrip) {
  const auto p = reflex_template(6, 2);
  std::ostringstream os;
  write_polygon(os, p);
  std::istringstream is(os.str());
  const auto q = read_polygon(is);
  EXPECT_EQ(q.boundary(), p.boundary());
}
