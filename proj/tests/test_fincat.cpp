#include <gtest/gtest.h>

#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fiblang;
using namespace fiblang::testing;

namespace {

// Counts comma objects (a, b, phi: Fa -> Gb) and squares directly.
std::pair<std::size_t, std::size_t> comma_counts(const FunctorSpec& F, const FunctorSpec& G) {
  const FinCat& A = *F.dom;
  const FinCat& B = *G.dom;
  const FinCat& C = *F.cod;
  struct Obj {
    Ob a, b;
    Mor phi;
  };
  std::vector<Obj> objs;
  for (auto a : A.objects())
    for (auto b : B.objects())
      for (auto phi : C.hom(F(a), G(b))) objs.push_back({a, b, phi});
  std::size_t arrows = 0;
  for (const auto& s : objs)
    for (const auto& t : objs)
      for (auto u : A.hom(s.a, t.a))
        for (auto v : B.hom(s.b, t.b))
          if (C.compose(G(v), s.phi) == C.compose(t.phi, F(u))) ++arrows;
  return {objs.size(), arrows};
}

}  // namespace

TEST(Validate, TerminalCategoryIsValid) {
  auto t = terminal_category();
  EXPECT_EQ(t.object_count(), 1u);
  EXPECT_EQ(t.morphism_count(), 1u);
  EXPECT_TRUE(validate_category(t).ok());
}

TEST(Validate, TwoObjectGroupoidIsValid) {
  auto g = mcg({"a", "b"});
  EXPECT_EQ(g.morphism_count(), 4u);
  EXPECT_TRUE(validate_category(g).ok());
}

TEST(Validate, DeletedCompositeBreaksTotality) {
  FinCatBuilder b;
  auto a = b.add_object("a");
  auto c = b.add_object("b");
  auto ia = b.add_morphism("ia", a, a);
  auto ib = b.add_morphism("ib", c, c);
  auto ab = b.add_morphism("ab", a, c);
  auto ba = b.add_morphism("ba", c, a);
  b.set_identity(a, ia);
  b.set_identity(c, ib);
  for (auto m : {ia, ib, ab, ba}) {
    b.set_composite(m, *b.identity(b.src(m)), m);
    b.set_composite(*b.identity(b.tgt(m)), m, m);
  }
  b.set_composite(ba, ab, ia);  // the entry ab∘ba = ib is left out
  auto cat = std::move(b).build();
  auto r = validate_category(cat);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(r.has_law("composition-totality"));
  EXPECT_EQ(r.count("composition-totality"), 1u);
}

TEST(Validate, BrokenAssociativityIsCaught) {
  auto ws = load_unvalidated(fixture_path("negative/broken_associativity.json"));
  auto r = validate_category(*ws.category("M"));
  EXPECT_TRUE(r.has_law("associativity"));
  EXPECT_FALSE(r.has_law("left-unit"));
  EXPECT_FALSE(r.has_law("right-unit"));
}

TEST(Validate, WrongCompositeEndpointsAreReported) {
  FinCatBuilder b;
  auto x = b.add_object("x");
  auto y = b.add_object("y");
  auto ix = b.add_morphism("ix", x, x);
  auto iy = b.add_morphism("iy", y, y);
  auto f = b.add_morphism("f", x, y);
  b.set_identity(x, ix);
  b.set_identity(y, iy);
  b.set_composite(ix, ix, ix);
  b.set_composite(iy, iy, iy);
  b.set_composite(f, ix, f);
  b.set_composite(iy, f, iy);  // should be f
  auto r = validate_category(std::move(b).build());
  EXPECT_TRUE(r.has_law("endpoint-coherence"));
  EXPECT_TRUE(r.has_law("left-unit"));
}

TEST(Validate, UndeclaredIdsAreMalformed) {
  EXPECT_THROW(FinCat({"a"}, {{"ia", "a", "b"}}, {{"a", "ia"}}, {}), MalformedSpec);
  EXPECT_THROW(FinCat({"a"}, {{"ia", "a", "a"}}, {{"a", "nope"}}, {}), MalformedSpec);
  EXPECT_THROW(FinCat({"a"}, {{"ia", "a", "a"}}, {}, {}), MalformedSpec);
  EXPECT_THROW(FinCat({"a", "a"}, {}, {}, {}), MalformedSpec);
}

TEST(Validate, EmptyCategoryIsLegal) {
  FinCat e;
  EXPECT_TRUE(e.empty());
  EXPECT_TRUE(validate_category(e).ok());
  auto E = share(e);
  EXPECT_TRUE(validate_functor(identity_functor(E)).ok());
}

TEST(Functor, IdentityFunctorIsValid) {
  Tower fx;
  EXPECT_TRUE(validate_functor(identity_functor(fx.total)).ok());
  EXPECT_TRUE(validate_functor(identity_functor(fx.base)).ok());
}

TEST(Functor, ProjectionIsValid) {
  Tower fx;
  EXPECT_TRUE(validate_functor(fx.p).ok());
}

TEST(Functor, LiftSentToIdentityBreaksEndpoints) {
  Tower fx;
  auto broken = fx.p;
  broken.mmap[fx.total->morphism("f@B0").index] = fx.base->identity(fx.base->object("A"));
  auto r = validate_functor(broken);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(r.has_law("endpoint-preservation"));
  // oracle: every morphism whose image endpoints disagree with omap is named
  std::set<std::string> expected;
  for (auto m : fx.total->morphisms()) {
    const auto n = broken(m);
    if (fx.base->src(n) != broken(fx.total->src(m)) || fx.base->tgt(n) != broken(fx.total->tgt(m)))
      expected.insert(fx.total->id(m));
  }
  std::set<std::string> reported;
  for (const auto& v : r.violations)
    if (v.law == "endpoint-preservation") reported.insert(v.witness.front());
  EXPECT_EQ(reported, expected);
  EXPECT_EQ(expected, std::set<std::string>{"f@B0"});
}

TEST(Functor, CompositeOfValidFunctorsIsValid) {
  Tower fx;
  auto to_point = constant_functor(fx.base, share(terminal_category()), Ob{0});
  auto composite = compose_functors(to_point, fx.p);
  EXPECT_TRUE(validate_functor(composite).ok());
  EXPECT_THROW(compose_functors(fx.p, to_point), ShapeMismatch);
}

TEST(Functor, MakeFunctorSynthesizesIdentities) {
  auto ar = arrow_category();
  auto F = make_functor(ar, ar, {{"A", "A"}, {"B", "B"}}, {{"f", "f"}});
  EXPECT_EQ(F, identity_functor(ar));
  EXPECT_THROW(make_functor(ar, ar, {{"A", "A"}, {"B", "B"}}, {}), MalformedSpec);
}

TEST(Opposite, TerminalIsSelfDual) { EXPECT_EQ(opposite(terminal_category()), terminal_category()); }

TEST(Opposite, IsAnInvolution) {
  Tower fx;
  EXPECT_EQ(opposite(opposite(*fx.base)), *fx.base);
  EXPECT_EQ(opposite(opposite(*fx.total)), *fx.total);
}

TEST(Opposite, SwapsEndpoints) {
  Tower fx;
  auto op = opposite(*fx.base);
  EXPECT_TRUE(validate_category(op).ok());
  auto ends = [&](const char* m) {
    auto x = op.morphism(m);
    return std::pair{op.id(op.src(x)), op.id(op.tgt(x))};
  };
  EXPECT_EQ(ends("f"), (std::pair<std::string, std::string>{"B", "A"}));
  EXPECT_EQ(ends("g"), (std::pair<std::string, std::string>{"C", "B"}));
  EXPECT_EQ(ends("gf"), (std::pair<std::string, std::string>{"C", "A"}));
  // composition is reversed: f∘g in the opposite is gf
  EXPECT_EQ(op.compose(op.morphism("f"), op.morphism("g")), op.morphism("gf"));
}

TEST(Comma, IdentitiesOverTerminal) {
  auto one = share(terminal_category());
  auto c = comma(identity_functor(one), identity_functor(one));
  EXPECT_EQ(c.cat->object_count(), 1u);
  EXPECT_EQ(c.cat->morphism_count(), 1u);
  EXPECT_TRUE(validate_category(*c.cat).ok());
}

TEST(Comma, ArrowCategory) {
  auto ar = arrow_category();
  auto id = identity_functor(ar);
  auto c = comma(id, id);
  auto [objs, arrows] = comma_counts(id, id);
  EXPECT_EQ(c.cat->object_count(), 3u);
  EXPECT_EQ(c.cat->object_count(), objs);
  EXPECT_EQ(c.cat->morphism_count(), arrows);
  EXPECT_TRUE(validate_category(*c.cat).ok());
  EXPECT_TRUE(validate_functor(c.proj_a).ok());
  EXPECT_TRUE(validate_functor(c.proj_b).ok());
  std::set<std::string> ids;
  for (auto o : c.cat->objects()) ids.insert(c.cat->id(o));
  EXPECT_EQ(ids, (std::set<std::string>{"(A|A|id:A)", "(A|B|f)", "(B|B|id:B)"}));
}

TEST(Comma, SliceMatchesDirectEnumeration) {
  Tower fx;
  for (auto d : fx.base->objects()) {
    auto slice = comma(fx.p, object_inclusion(fx.base, d));
    auto [objs, arrows] = comma_counts(fx.p, object_inclusion(fx.base, d));
    EXPECT_EQ(slice.cat->object_count(), objs);
    EXPECT_EQ(slice.cat->morphism_count(), arrows);
    EXPECT_EQ(connected_components(*slice.cat).size(), slice_component_count(fx.p, d));
  }
}

TEST(Comma, CodomainMismatchThrows) {
  Tower fx;
  EXPECT_THROW(comma(fx.p, identity_functor(fx.total)), CodMismatch);
  EXPECT_THROW(pullback(fx.p, identity_functor(fx.total)), CodMismatch);
}

TEST(Pullback, OfIdentitiesIsTheCategory) {
  Tower fx;
  auto id = identity_functor(fx.base);
  auto pb = pullback(id, id);
  EXPECT_EQ(pb.cat->object_count(), fx.base->object_count());
  EXPECT_EQ(pb.cat->morphism_count(), fx.base->morphism_count());
  EXPECT_TRUE(is_isomorphism(pb.proj_a));
  EXPECT_TRUE(is_isomorphism(pb.proj_b));
  EXPECT_EQ(compose_functors(id, pb.proj_a), compose_functors(id, pb.proj_b));
}

TEST(Pullback, AlongObjectIsTheFibre) {
  Tower fx;
  auto incl = object_inclusion(fx.base, fx.base->object("A"));
  auto pb = pullback(fx.p, incl);
  ASSERT_EQ(pb.cat->object_count(), 3u);
  EXPECT_EQ(pb.cat->morphism_count(), 3u);  // identities only: discrete
  std::vector<std::string> ids;
  for (auto o : pb.cat->objects()) ids.push_back(fx.total->id(pb.proj_a(o)));
  EXPECT_EQ(ids, (std::vector<std::string>{"A0", "A1", "A2"}));
  EXPECT_EQ(compose_functors(fx.p, pb.proj_a), compose_functors(incl, pb.proj_b));
}

TEST(Pullback, DistinctPointsGiveEmpty) {
  auto ar = arrow_category();
  auto pb = pullback(object_inclusion(ar, ar->object("A")), object_inclusion(ar, ar->object("B")));
  EXPECT_TRUE(pb.cat->empty());
  EXPECT_TRUE(validate_category(*pb.cat).ok());
}

TEST(Components, DiscreteCategory) {
  auto d = discrete_category({"x", "y", "z"});
  auto blocks = connected_components(d);
  ASSERT_EQ(blocks.size(), 3u);
  for (const auto& b : blocks) EXPECT_EQ(b.size(), 1u);
}

TEST(Components, GroupoidIsConnected) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    EXPECT_EQ(connected_components(mcg(names)).size(), 1u);
  }
}

TEST(Components, ArrowPlusPoint) {
  auto c = coproduct(*arrow_category(), terminal_category());
  EXPECT_TRUE(validate_category(c).ok());
  auto blocks = connected_components(c);
  EXPECT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks, bfs_components(c));
}

TEST(Product, CountsAndProjections) {
  Tower fx;
  auto ar = arrow_category();
  auto pr = product(fx.base, ar);
  EXPECT_EQ(pr.cat->object_count(), 6u);
  EXPECT_EQ(pr.cat->morphism_count(), fx.base->morphism_count() * ar->morphism_count());
  EXPECT_TRUE(validate_category(*pr.cat).ok());
  EXPECT_TRUE(validate_functor(pr.proj_a).ok());
  EXPECT_TRUE(validate_functor(pr.proj_b).ok());
}

TEST(SetFunctor, FixturePresheafIsValid) {
  Tower fx;
  EXPECT_TRUE(validate_set_functor(fx.W).ok());
}

TEST(SetFunctor, NonFunctorialActionIsReported) {
  Tower fx;
  auto W = fx.W;
  // (gf)* must equal f*∘g*; change its value at C0
  W.actions[fx.base->morphism("gf").index][0] = 0;
  auto r = validate_set_functor(W);
  EXPECT_TRUE(r.has_law("action-composition"));
}

TEST(SetFunctor, DuplicateElementsAndShape) {
  Tower fx;
  auto W = fx.W;
  W.sets[0][1] = "A0";
  EXPECT_TRUE(validate_set_functor(W).has_law("duplicate-element"));
  auto V = fx.W;
  V.actions[fx.base->morphism("f").index].push_back(0);
  EXPECT_TRUE(validate_set_functor(V).has_law("action-shape"));
}
