#include <gtest/gtest.h>

#include <set>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fiblang;
using namespace fiblang::testing;

namespace {

SetValuedFunctor constant_singleton(CatPtr C) {
  SetValuedFunctor W{C, Variance::contravariant, {}, {}};
  for (std::size_t i = 0; i < C->object_count(); ++i) W.sets.push_back({"*"});
  for (std::size_t i = 0; i < C->morphism_count(); ++i) W.actions.push_back({0});
  return W;
}

}  // namespace

TEST(Elements, ConstantSingletonGivesBase) {
  Tower fx;
  auto el = elements(constant_singleton(fx.base));
  EXPECT_TRUE(is_isomorphism(el.projection));
  EXPECT_TRUE(validate_category(*el.total).ok());
  EXPECT_EQ(el.total->id(Ob{0}), "(A|*)");
}

TEST(Elements, FixturePresheafGivesFixtureTotal) {
  Tower fx;
  auto el = elements(fx.W);
  ASSERT_EQ(el.total->object_count(), 8u);
  EXPECT_EQ(el.total->morphism_count(), fx.total->morphism_count());
  EXPECT_TRUE(validate_category(*el.total).ok());
  EXPECT_TRUE(is_discrete_fibration(el.projection).ok());
  // each lift "X -> Y" of the fixture appears as "(u|Y)" from (c|X) to (c'|Y)
  for (auto m : fx.total->morphisms()) {
    const auto u = fx.p(m);
    const auto y = fx.total->id(fx.total->tgt(m));
    auto n = el.total->find_morphism(element_id(fx.base->id(u), y));
    ASSERT_TRUE(n.has_value()) << fx.total->id(m);
    EXPECT_EQ(el.total->id(el.total->src(*n)),
              element_id(fx.base->id(fx.base->src(u)), fx.total->id(fx.total->src(m))));
  }
}

TEST(Elements, EmptyFibreLeavesProjectionNonSurjective) {
  auto ar = arrow_category();
  // contravariant: W(f) maps W(B) into W(A), so the empty set sits over B
  auto W = make_set_functor(ar, Variance::contravariant, {{"A", {"t"}}, {"B", {}}}, {{"f", {}}});
  auto el = elements(W);
  ASSERT_EQ(el.total->object_count(), 1u);
  EXPECT_EQ(el.total->id(Ob{0}), "(A|t)");
  EXPECT_EQ(el.total->morphism_count(), 1u);
  EXPECT_TRUE(fibre(el.projection, "B").elements.empty());
  EXPECT_TRUE(is_discrete_fibration(el.projection).ok());
  // with the empty set over A instead, only the covariant reading is a functor
  auto K = make_set_functor(ar, Variance::covariant, {{"A", {}}, {"B", {"t"}}}, {{"f", {}}});
  auto ek = elements(K);
  ASSERT_EQ(ek.total->object_count(), 1u);
  EXPECT_EQ(ek.total->id(Ob{0}), "(B|t)");
  EXPECT_THROW(make_set_functor(ar, Variance::contravariant, {{"A", {}}, {"B", {"t"}}}, {{"f", {}}}), MalformedSpec);
}

TEST(Elements, InvalidPresheafThrows) {
  Tower fx;
  auto W = fx.W;
  W.actions[fx.base->morphism("gf").index][0] = 1;
  EXPECT_THROW(elements(W), InvalidFunctor);
}

TEST(Elements, CovariantKeysByDomainElement) {
  auto ar = arrow_category();
  auto K = make_set_functor(ar, Variance::covariant, {{"A", {"a0", "a1"}}, {"B", {"b"}}},
                            {{"f", {{"a0", "b"}, {"a1", "b"}}}});
  auto el = elements(K);
  EXPECT_TRUE(is_discrete_opfibration(el.projection).ok());
  auto m = el.total->morphism("(f|a1)");
  EXPECT_EQ(el.total->id(el.total->src(m)), "(A|a1)");
  EXPECT_EQ(el.total->id(el.total->tgt(m)), "(B|b)");
}

TEST(Straighten, IdentityIsConstantSingleton) {
  Tower fx;
  auto W = straighten(identity_functor(fx.base));
  for (auto c : fx.base->objects()) EXPECT_EQ(W.sets[c.index], std::vector<std::string>{fx.base->id(c)});
  EXPECT_TRUE(validate_set_functor(W).ok());
}

TEST(Straighten, FixtureGivesFixturePresheaf) {
  Tower fx;
  auto W = straighten(fx.p);
  EXPECT_EQ(W.sets, fx.W.sets);
  EXPECT_EQ(W.actions, fx.W.actions);
}

TEST(Straighten, ProductProjectionIsConstant) {
  auto G = share(mcg({"a", "b", "c"}));
  auto X = share(discrete_category({"x1", "x2"}));
  auto pr = product(X, G);
  auto W = straighten(pr.proj_b);
  for (auto a : G->objects()) EXPECT_EQ(W.sets[a.index].size(), 2u);
  for (auto m : G->morphisms()) {
    // bijective, and keeps the X coordinate
    const auto& act = W.actions[m.index];
    std::set<std::size_t> image(act.begin(), act.end());
    EXPECT_EQ(image.size(), 2u);
    for (std::size_t i = 0; i < act.size(); ++i) {
      auto from = pr.cat->object(W.sets[G->tgt(m).index][i]);
      auto to = pr.cat->object(W.sets[G->src(m).index][act[i]]);
      EXPECT_EQ(pr.proj_a(from), pr.proj_a(to));
    }
  }
}

TEST(Straighten, RequiresDiscreteFibration) {
  auto ws = load(fixture_path("negative/missing_lift.json"));
  EXPECT_THROW(straighten(ws.functor("p").spec), NotDiscreteFibration);
}

TEST(Roundtrip, ConstantSingleton) {
  Tower fx;
  auto W = constant_singleton(fx.base);
  auto iso = roundtrip_presheaf(W);
  EXPECT_TRUE(iso.checked);
  for (auto c : fx.base->objects()) EXPECT_EQ(iso.forward[c.index], std::vector<std::size_t>{0});
  auto fi = roundtrip_fibration(identity_functor(fx.base));
  EXPECT_TRUE(fi.checked);
  EXPECT_TRUE(is_isomorphism(fi.forward));
}

TEST(Roundtrip, FixtureBothWays) {
  Tower fx;
  EXPECT_TRUE(roundtrip_presheaf(fx.W).checked);
  auto fi = roundtrip_fibration(fx.p);
  EXPECT_TRUE(fi.checked);
  EXPECT_EQ(compose_functors(fi.forward, fi.backward), identity_functor(fx.total));
  EXPECT_EQ(fx.total->id(fi.forward(Ob{0})), "A0");
}

TEST(Roundtrip, RandomPresheaves) {
  Rng rng(seed_from_env() ^ 0x9e37);
  for (int i = 0; i < 100; ++i) {
    auto C = share(random_category(rng, 5));
    auto W = random_presheaf(rng, C, 4);
    ASSERT_TRUE(validate_set_functor(W).ok());
    EXPECT_TRUE(roundtrip_presheaf(W).checked);
    auto el = elements(W);
    EXPECT_TRUE(roundtrip_fibration(el.projection).checked);
    for (auto c : C->objects()) EXPECT_EQ(fibre(el.projection, c).elements.size(), W.sets[c.index].size());
  }
}

TEST(FullFaithfulness, SmallCounts) {
  // identity base, two presheaves with 2 and 3 elements: 3^2 maps
  auto one = share(terminal_category());
  auto V = make_set_functor(one, Variance::contravariant, {{"*", {"a", "b"}}}, {});
  auto W = make_set_functor(one, Variance::contravariant, {{"*", {"x", "y", "z"}}}, {});
  EXPECT_EQ(count_natural_transformations(V, W), 9u);
  EXPECT_EQ(count_fibration_morphisms(elements(V).projection, elements(W).projection), 9u);
}

TEST(FullFaithfulness, FixtureIntoItself) {
  Tower fx;
  const auto nat = count_natural_transformations(fx.W, fx.W);
  EXPECT_GE(nat, 1u);
  EXPECT_EQ(nat, count_fibration_morphisms(fx.p, fx.p));
}
