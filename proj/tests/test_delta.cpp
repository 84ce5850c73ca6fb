#include <gtest/gtest.h>

#include "support.hpp"

using namespace slist;
using slist::testing::Rng;
using slist::testing::uniform;

namespace {
// {c1, a1, a2, a3, c2} -> {b1, b2, b3} -> {c}
LeveledShape intro_shape() { return LeveledShape::from_values({5, 3, 1}, {{0, 1, 1, 1, 2}, {0, 0, 0}}); }
}  // namespace

TEST(MonotoneMap, RejectsBadValues) {
  EXPECT_THROW(MonotoneMap(2, 2, {1, 0}), std::invalid_argument);
  EXPECT_THROW(MonotoneMap(1, 1, {1}), std::invalid_argument);
  EXPECT_NO_THROW(MonotoneMap(0, 0, {}));
}

TEST(MonotoneMap, CofacesAndCodegeneracies) {
  EXPECT_EQ(MonotoneMap::coface(2, 1).values, (std::vector<Index>{0, 2}));
  EXPECT_EQ(MonotoneMap::codegeneracy(1, 0).values, (std::vector<Index>{0, 0, 1}));
  // d^j d^i = d^i d^{j-1} for i < j
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        EXPECT_EQ(compose(MonotoneMap::coface(n, j), MonotoneMap::coface(n - 1, i)),
                  compose(MonotoneMap::coface(n, i), MonotoneMap::coface(n - 1, j - 1)));
}

TEST(MonotoneMap, EnumerationCount) {
  for (std::size_t d = 0; d <= 4; ++d)
    for (std::size_t c = 0; c <= 4; ++c) EXPECT_EQ(monotone_maps(d, c).size(), slist::testing::multichoose(d, c));
}

TEST(Act, IdentityIsNeutral) {
  auto a = intro_shape();
  EXPECT_EQ(act(MonotoneMap::identity(3), a), a);
}

TEST(Act, IntroFaceD2) {
  auto b = act(MonotoneMap::coface(2, 2), intro_shape());
  EXPECT_EQ(b, LeveledShape::from_values({5, 3}, {{0, 1, 1, 1, 2}}));
}

TEST(Act, DegeneracyOnVertex) {
  LeveledShape a0({3}, {});
  auto b = act(MonotoneMap::codegeneracy(0, 0), a0);
  EXPECT_EQ(b, LeveledShape::from_values({3, 3}, {{0, 1, 2}}));
}

TEST(Act, RespectsComposition) {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = uniform(rng, 0, 3), k = uniform(rng, 0, 3), l = uniform(rng, 0, 3);
    auto alpha = slist::testing::random_shape(rng, n, 3);
    auto theta = slist::testing::random_monotone(rng, k + 1, n + 1);
    auto eta = slist::testing::random_monotone(rng, l + 1, k + 1);
    EXPECT_EQ(act(compose(theta, eta), alpha), act(eta, act(theta, alpha)));
  }
}

TEST(RootedRestriction, Examples) {
  auto a = intro_shape();
  EXPECT_EQ(rooted_restriction(a, 0), a);
  auto d2 = act(MonotoneMap::coface(2, 2), a);
  EXPECT_EQ(rooted_restriction(d2, 1), LeveledShape::from_values({3, 1}, {{0, 0, 0}}));
  EXPECT_THROW(rooted_restriction(d2, 3), std::out_of_range);
}

TEST(RootedDecomposition, IntroFace) {
  auto parts = rooted_decomposition(act(MonotoneMap::coface(2, 2), intro_shape()));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].level_sizes, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(parts[1].level_sizes, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(parts[2].level_sizes, (std::vector<std::size_t>{1, 1}));
}

TEST(RootedDecomposition, EmptyTopLevel) {
  EXPECT_TRUE(rooted_decomposition(LeveledShape::from_values({0, 0}, {{}})).empty());
  auto a = intro_shape();
  EXPECT_EQ(rooted_decomposition(a), std::vector<RootedShape>{a});
}

TEST(RootedDecomposition, OrdinalSumRoundTrip) {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = uniform(rng, 0, 3), k = uniform(rng, 0, 3);
    auto alpha = slist::testing::random_shape(rng, n, 3);
    auto theta = slist::testing::random_monotone(rng, k + 1, n + 1);
    auto b = act(theta, alpha);
    auto parts = rooted_decomposition(b);
    EXPECT_EQ(parts.size(), alpha.size(theta(k)));
    for (Index a = 0; a < parts.size(); ++a) EXPECT_EQ(parts[a], rooted_restriction(b, a));
    EXPECT_EQ(ordinal_sum(parts, k), b);
  }
}

TEST(Upsilon, IdentitiesAreNeutral) {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    auto alpha = slist::testing::random_shape(rng, uniform(rng, 0, 3), 3);
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& g : upsilon_arrows_into(alpha, k)) {
        EXPECT_TRUE(upsilon_invariant_holds(g));
        EXPECT_EQ(compose_upsilon(g, identity_upsilon(g.source)), g);
        EXPECT_EQ(compose_upsilon(identity_upsilon(alpha), g), g);
      }
  }
}

TEST(Upsilon, FaceThenVertex) {
  // a2 a3 over b2 inside the shape (a1 a2 a3 / b1 b2 / c)
  auto alpha = LeveledShape::from_values({3, 2, 1}, {{0, 1, 1}, {0, 0}});
  auto g = make_upsilon(MonotoneMap::coface(2, 2), 1, alpha);
  EXPECT_EQ(g.source, LeveledShape::from_values({2, 1}, {{0, 0}}));
  // vertex 0 of the source, second element: a3
  auto f = make_upsilon(MonotoneMap::simplicial(1, {0}), 1, g.source);
  auto h = compose_upsilon(g, f);
  EXPECT_EQ(h.theta, MonotoneMap::simplicial(2, {0}));
  EXPECT_EQ(h.root_choice, 2u);
  EXPECT_EQ(h.source, LeveledShape({1}, {}));
}

TEST(Upsilon, Associativity) {
  Rng rng(29);
  int done = 0;
  while (done < 200) {
    auto alpha = slist::testing::random_shape(rng, uniform(rng, 0, 3), 3);
    auto ga = upsilon_arrows_into(alpha, uniform(rng, 0, 3));
    if (ga.empty()) continue;
    auto g = ga[uniform(rng, 0, ga.size() - 1)];
    auto fa = upsilon_arrows_into(g.source, uniform(rng, 0, 3));
    if (fa.empty()) continue;
    auto f = fa[uniform(rng, 0, fa.size() - 1)];
    auto ea = upsilon_arrows_into(f.source, uniform(rng, 0, 3));
    if (ea.empty()) continue;
    auto e = ea[uniform(rng, 0, ea.size() - 1)];
    auto lhs = compose_upsilon(compose_upsilon(g, f), e);
    auto rhs = compose_upsilon(g, compose_upsilon(f, e));
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE(upsilon_invariant_holds(lhs));
    ++done;
  }
}

TEST(Upsilon, RejectsShapeMismatch) {
  auto alpha = LeveledShape::from_values({2, 1}, {{0, 0}});
  auto g = identity_upsilon(alpha);
  auto f = identity_upsilon(LeveledShape({1}, {}));
  EXPECT_THROW(compose_upsilon(g, f), std::invalid_argument);
}

TEST(EnumerateRooted, SmallCounts) {
  EXPECT_EQ(enumerate_rooted(1, 2).size(), 3u);
  EXPECT_EQ(enumerate_rooted(0, 1).size(), 1u);
  EXPECT_EQ(enumerate_rooted(2, 1).size(), 3u);
}

TEST(EnumerateRooted, MatchesProductFormulaAndIsSorted) {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t B = 0; B <= 3; ++B) {
      auto shapes = enumerate_rooted(n, B);
      EXPECT_EQ(shapes.size(), slist::testing::rooted_count(n, B)) << n << " " << B;
      std::set<std::string> keys;
      for (const auto& s : shapes) {
        EXPECT_TRUE(s.is_rooted());
        keys.insert(shape_key(s));
      }
      EXPECT_EQ(keys.size(), shapes.size());
      for (std::size_t t = 1; t < shapes.size(); ++t) {
        auto key = [](const LeveledShape& s) {
          std::vector<std::vector<Index>> v{std::vector<Index>(s.level_sizes.begin(), s.level_sizes.end())};
          for (const auto& m : s.maps) v.push_back(m.values);
          return v;
        };
        EXPECT_LT(key(shapes[t - 1]), key(shapes[t]));
      }
    }
}
