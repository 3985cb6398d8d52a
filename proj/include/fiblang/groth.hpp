#pragma once

// Category of elements and straightening, with constructed isomorphisms
// witnessing that the two are mutually inverse.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fiblang/fib.hpp"
#include "fiblang/fincat.hpp"

namespace fiblang {

struct ElementsResult {
  CatPtr total;
  FunctorSpec projection;
};

inline std::string element_id(const std::string& object, const std::string& element) {
  return encode({object, element});
}

// Objects "(c|x)" for x in W(c). For a contravariant W, a morphism
// "(f|y)": (c|W(f)y) -> (c'|y) for each f: c -> c' and y in W(c'); for a
// covariant W, a morphism "(f|x)": (c|x) -> (c'|W(f)x) for each x in W(c).
inline ElementsResult elements(const SetValuedFunctor& W) {
  if (auto r = validate_set_functor(W); !r.ok())
    throw InvalidFunctor("elements: set-valued functor fails " + r.violations.front().law);
  const FinCat& C = *W.base;
  FinCatBuilder b;
  std::vector<std::uint32_t> first_object(C.object_count());
  std::vector<Ob> base_of_object;
  for (auto c : C.objects()) {
    first_object[c.index] = static_cast<std::uint32_t>(b.object_count());
    for (const auto& x : W.sets[c.index]) {
      b.add_object(element_id(C.id(c), x));
      base_of_object.push_back(c);
    }
  }
  auto object_at = [&](Ob c, std::size_t i) { return Ob{first_object[c.index] + static_cast<std::uint32_t>(i)}; };

  // Every morphism is keyed by (f, element of W(action_source f)).
  std::vector<std::uint32_t> first_morphism(C.morphism_count());
  std::vector<Mor> base_of_morphism;
  for (auto f : C.morphisms()) {
    first_morphism[f.index] = static_cast<std::uint32_t>(b.morphism_count());
    const auto s = W.action_source(f);
    const auto t = W.action_target(f);
    for (std::size_t i = 0; i < W.sets[s.index].size(); ++i) {
      const auto j = W.act(f, i);
      auto key_object = object_at(s, i);
      auto other = object_at(t, j);
      auto id = element_id(C.id(f), W.sets[s.index][i]);
      if (W.variance == Variance::contravariant)
        b.add_morphism(std::move(id), other, key_object);
      else
        b.add_morphism(std::move(id), key_object, other);
      base_of_morphism.push_back(f);
    }
  }
  auto morphism_at = [&](Mor f, std::size_t i) { return Mor{first_morphism[f.index] + static_cast<std::uint32_t>(i)}; };

  for (auto c : C.objects())
    for (std::size_t i = 0; i < W.sets[c.index].size(); ++i)
      b.set_identity(object_at(c, i), morphism_at(C.identity(c), i));

  for (auto f : C.morphisms())
    for (auto g : C.outgoing(C.tgt(f))) {
      auto gf = C.compose(g, f);
      if (!gf) continue;
      if (W.variance == Variance::contravariant) {
        // (g|z) ∘ (f|W(g)z) = (gf|z)
        for (std::size_t z = 0; z < W.sets[C.tgt(g).index].size(); ++z)
          b.set_composite(morphism_at(g, z), morphism_at(f, W.act(g, z)), morphism_at(*gf, z));
      } else {
        // (g|W(f)x) ∘ (f|x) = (gf|x)
        for (std::size_t x = 0; x < W.sets[C.src(f).index].size(); ++x)
          b.set_composite(morphism_at(g, W.act(f, x)), morphism_at(f, x), morphism_at(*gf, x));
      }
    }

  auto total = share(std::move(b).build());
  return {total, {total, W.base, std::move(base_of_object), std::move(base_of_morphism)}};
}

// The presheaf c |-> fibre(p, c) with reindexing as action.
inline SetValuedFunctor straighten(const FunctorSpec& p) {
  if (!is_discrete_fibration(p).ok()) throw NotDiscreteFibration("straighten: not a discrete fibration");
  const FinCat& B = *p.cod;
  const FinCat& E = *p.dom;
  SetValuedFunctor W{p.cod, Variance::contravariant, {}, {}};
  std::vector<std::size_t> position(E.object_count());
  for (auto c : B.objects()) {
    std::vector<std::string> ids;
    for (auto e : fibre(p, c).elements) {
      position[e.index] = ids.size();
      ids.push_back(E.id(e));
    }
    W.sets.push_back(std::move(ids));
  }
  for (auto u : B.morphisms()) {
    std::vector<std::size_t> a;
    for (auto [x, ux] : reindex_unchecked(p, u).table) a.push_back(position[ux.index]);
    W.actions.push_back(std::move(a));
  }
  return W;
}

// Components W(c) -> V(c) and back, by element index.
struct PresheafIso {
  std::vector<std::vector<std::size_t>> forward;
  std::vector<std::vector<std::size_t>> backward;
  bool checked = false;
};

struct FibrationIso {
  FunctorSpec forward;   // elements(straighten(p)).total -> dom(p)
  FunctorSpec backward;  // dom(p) -> elements(straighten(p)).total
  bool checked = false;
};

// W ≅ straighten(elements(W)), componentwise x |-> "(c|x)".
inline PresheafIso roundtrip_presheaf(const SetValuedFunctor& W) {
  if (W.variance != Variance::contravariant)
    throw InvalidFunctor("roundtrip_presheaf: expected a contravariant functor");
  const FinCat& C = *W.base;
  auto V = straighten(elements(W).projection);
  PresheafIso iso;
  for (auto c : C.objects()) {
    const auto& wc = W.sets[c.index];
    const auto& vc = V.sets[c.index];
    if (wc.size() != vc.size()) throw WitnessFailure("roundtrip_presheaf: size mismatch at " + C.id(c));
    std::vector<std::size_t> fwd, bwd(vc.size(), vc.size());
    for (std::size_t i = 0; i < wc.size(); ++i) {
      auto j = V.find_element(c, element_id(C.id(c), wc[i]));
      if (!j) throw WitnessFailure("roundtrip_presheaf: no image for " + wc[i] + " at " + C.id(c));
      fwd.push_back(*j);
      bwd[*j] = i;
    }
    for (std::size_t j = 0; j < vc.size(); ++j)
      if (bwd[j] == vc.size() || fwd[bwd[j]] != j)
        throw WitnessFailure("roundtrip_presheaf: component at " + C.id(c) + " is not invertible");
    iso.forward.push_back(std::move(fwd));
    iso.backward.push_back(std::move(bwd));
  }
  for (auto f : C.morphisms()) {
    const auto s = W.action_source(f);
    const auto t = W.action_target(f);
    for (std::size_t y = 0; y < W.sets[s.index].size(); ++y)
      if (iso.forward[t.index][W.act(f, y)] != V.act(f, iso.forward[s.index][y]))
        throw WitnessFailure("roundtrip_presheaf: naturality fails at " + C.id(f));
  }
  iso.checked = true;
  return iso;
}

// elements(straighten(p)) ≅ dom(p) over the base: "(c|e)" |-> e and
// "(u|e')" |-> the unique lift of u with codomain e'.
inline FibrationIso roundtrip_fibration(const FunctorSpec& p) {
  const auto W = straighten(p);
  auto el = elements(W);
  const FinCat& T = *el.total;
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;

  FunctorSpec fwd{el.total, p.dom, {}, {}};
  std::vector<std::size_t> seen(B.object_count(), 0);
  for (auto t : T.objects()) {
    const auto c = el.projection(t);
    fwd.omap.push_back(E.object(W.sets[c.index][seen[c.index]++]));
  }
  std::vector<std::size_t> seen_m(B.morphism_count(), 0);
  for (auto m : T.morphisms()) {
    const auto u = el.projection(m);
    const auto target = E.object(W.sets[B.tgt(u).index][seen_m[u.index]++]);
    fwd.mmap.push_back(lifts(p, u, target).front());
  }

  FunctorSpec bwd{p.dom, el.total, std::vector<Ob>(E.object_count()), std::vector<Mor>(E.morphism_count())};
  for (auto t : T.objects()) bwd.omap[fwd(t).index] = t;
  for (auto m : T.morphisms()) bwd.mmap[fwd(m).index] = m;

  auto require = [](bool cond, const char* what) {
    if (!cond) throw WitnessFailure(std::string("roundtrip_fibration: ") + what);
  };
  require(validate_functor(fwd).ok(), "forward map is not a functor");
  require(validate_functor(bwd).ok(), "backward map is not a functor");
  require(compose_functors(fwd, bwd) == identity_functor(p.dom), "forward after backward is not the identity");
  require(compose_functors(bwd, fwd) == identity_functor(el.total), "backward after forward is not the identity");
  require(compose_functors(p, fwd) == el.projection, "forward map does not lie over the base");
  return {std::move(fwd), std::move(bwd), true};
}

}  // namespace fiblang
