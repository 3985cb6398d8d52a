#pragma once

// Maximally connected groupoids: exactly one morphism between any ordered
// pair of objects. Every discrete fibration over one is a product
// projection X × ГA -> ГA.

#include <map>
#include <string>
#include <vector>

#include "fiblang/fib.hpp"
#include "fiblang/fincat.hpp"

namespace fiblang {

inline std::string mcg_morphism_id(const std::string& a, const std::string& b) {
  return "(" + a + "->" + b + ")";
}

// ГA: objects A, one morphism "(a->b)" per ordered pair, "(a->a)" the identity.
inline FinCat mcg(const std::vector<std::string>& names) {
  FinCatBuilder b;
  for (const auto& a : names) b.add_object(a);
  const auto n = static_cast<std::uint32_t>(names.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) b.add_morphism(mcg_morphism_id(names[i], names[j]), Ob{i}, Ob{j});
  auto arrow = [n](std::uint32_t i, std::uint32_t j) { return Mor{i * n + j}; };
  for (std::uint32_t i = 0; i < n; ++i) b.set_identity(Ob{i}, arrow(i, i));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) b.set_composite(arrow(j, k), arrow(i, j), arrow(i, k));
  return std::move(b).build();
}

// Structural recognition: each hom-set is a singleton.
inline bool is_mcg(const FinCat& c) {
  for (auto a : c.objects())
    for (auto b : c.objects())
      if (c.hom(a, b).size() != 1) return false;
  return true;
}

// Г on a function f: A -> B, as a functor ГA -> ГB.
inline FunctorSpec gamma_map(CatPtr from, CatPtr to, const std::map<std::string, std::string>& f) {
  FunctorSpec F{from, to, {}, {}};
  for (auto a : from->objects()) {
    auto it = f.find(from->id(a));
    if (it == f.end()) throw MalformedSpec("gamma_map: no image for '" + from->id(a) + "'");
    F.omap.push_back(to->object(it->second));
  }
  for (auto m : from->morphisms()) F.mmap.push_back(to->hom(F(from->src(m)), F(from->tgt(m))).front());
  return F;
}

struct MCGClassification {
  std::vector<std::string> fibre_set;  // X: the fibre over the least base object
  CatPtr product;                      // X × ГA
  FunctorSpec iso;                     // H: E -> X × ГA
  FunctorSpec inverse;                 // X × ГA -> E
  FunctorSpec product_projection;      // X × ГA -> ГA
};

inline MCGClassification classify_over_mcg(const FunctorSpec& p) {
  if (!is_discrete_fibration(p).ok()) throw NotDiscreteFibration("classify_over_mcg: not a discrete fibration");
  const FinCat& A = *p.cod;
  const FinCat& E = *p.dom;
  if (!is_mcg(A)) throw NotOverMCG("classify_over_mcg: base is not a maximally connected groupoid");

  MCGClassification out;
  if (A.empty()) {
    out.product = share(FinCat{});
    out.iso = {p.dom, out.product, {}, {}};
    out.inverse = {out.product, p.dom, {}, {}};
    out.product_projection = {out.product, p.cod, {}, {}};
    return out;
  }

  const Ob a0{0};
  const auto base_fibre = fibre(p, a0).elements;
  for (auto a : A.objects())
    if (fibre(p, a).elements.size() != base_fibre.size())
      throw UnequalFibres("classify_over_mcg: fibres over " + A.id(a0) + " and " + A.id(a) + " differ in size");
  for (auto x : base_fibre) out.fibre_set.push_back(E.id(x));

  auto X = share(discrete_category(out.fibre_set));
  auto prod = product(X, p.cod);
  out.product = prod.cat;
  out.product_projection = prod.proj_b;
  const auto na = static_cast<std::uint32_t>(A.object_count());
  const auto ma = static_cast<std::uint32_t>(A.morphism_count());

  // transport along the unique a0 -> p(e)
  std::vector<std::uint32_t> coordinate(E.object_count());
  std::vector<Reindexing> to_base;
  for (auto a : A.objects()) to_base.push_back(reindex_unchecked(p, A.hom(a0, a).front()));
  for (auto e : E.objects()) {
    const auto x = *to_base[p(e).index](e);
    coordinate[e.index] = static_cast<std::uint32_t>(
        std::find(base_fibre.begin(), base_fibre.end(), x) - base_fibre.begin());
  }

  FunctorSpec H{p.dom, prod.cat, {}, {}};
  for (auto e : E.objects()) H.omap.push_back(Ob{coordinate[e.index] * na + p(e).index});
  for (auto h : E.morphisms()) H.mmap.push_back(Mor{coordinate[E.tgt(h).index] * ma + p(h).index});

  FunctorSpec inv{prod.cat, p.dom, std::vector<Ob>(prod.cat->object_count()),
                  std::vector<Mor>(prod.cat->morphism_count())};
  for (auto e : E.objects()) inv.omap[H(e).index] = e;
  for (auto h : E.morphisms()) inv.mmap[H(h).index] = h;

  auto require = [](bool cond, const char* what) {
    if (!cond) throw WitnessFailure(std::string("classify_over_mcg: ") + what);
  };
  require(validate_functor(H).ok(), "H is not a functor");
  require(validate_functor(inv).ok(), "inverse is not a functor");
  require(compose_functors(inv, H) == identity_functor(p.dom), "inverse after H is not the identity");
  require(compose_functors(H, inv) == identity_functor(prod.cat), "H after inverse is not the identity");
  require(compose_functors(out.product_projection, H) == p, "H does not lie over the base");
  out.iso = std::move(H);
  out.inverse = std::move(inv);
  return out;
}

}  // namespace fiblang
