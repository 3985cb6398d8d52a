#pragma once

// Comprehensive factorization of a functor F: C -> D.
//
//   opfibration variant: C --s--> el(K) --p--> D with K(d) = pi0(F/d),
//     s initial and p a discrete opfibration;
//   fibration variant: the same construction on F^op, transported back,
//     giving s final and p a discrete fibration.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fiblang/fib.hpp"
#include "fiblang/fincat.hpp"
#include "fiblang/groth.hpp"

namespace fiblang {

enum class FactorVariant { opfibration, fibration };

struct Factorization {
  FunctorSpec s;    // C -> mid
  CatPtr mid;
  FunctorSpec p;    // mid -> D
  FactorVariant variant = FactorVariant::opfibration;
  // The set-valued functor whose category of elements is `mid`: covariant
  // on D for the opfibration variant, contravariant for the fibration one.
  SetValuedFunctor k;
};

// Violations name each e whose comma (s/e) is empty or disconnected.
inline ValidationReport is_initial(const FunctorSpec& s) {
  ValidationReport r;
  for (auto e : s.cod->objects()) {
    auto c = comma(s, object_inclusion(s.cod, e));
    if (c.cat->empty()) {
      r.add("empty-comma", {s.cod->id(e)});
      continue;
    }
    auto n = connected_components(*c.cat).size();
    if (n != 1) r.add("disconnected-comma", {s.cod->id(e), std::to_string(n)});
  }
  return r;
}

// Dual: every (e/s) nonempty and connected.
inline ValidationReport is_final(const FunctorSpec& s) {
  ValidationReport r;
  for (auto e : s.cod->objects()) {
    auto c = comma(object_inclusion(s.cod, e), s);
    if (c.cat->empty()) {
      r.add("empty-comma", {s.cod->id(e)});
      continue;
    }
    auto n = connected_components(*c.cat).size();
    if (n != 1) r.add("disconnected-comma", {s.cod->id(e), std::to_string(n)});
  }
  return r;
}

namespace detail {

// The slice (F/d) with its blocks, for each d.
struct Pi0Slices {
  struct Slice {
    SpanResult comma;
    std::vector<std::size_t> block_of;      // comma object -> block
    std::map<std::pair<std::uint32_t, std::uint32_t>, Ob> object_of;  // (c, phi) -> comma object
  };
  std::vector<Slice> slices;
  SetValuedFunctor k;
};

inline Pi0Slices pi0_slices(const FunctorSpec& F) {
  const FinCat& D = *F.cod;
  Pi0Slices out{{}, {F.cod, Variance::covariant, {}, {}}};
  for (auto d : D.objects()) {
    Pi0Slices::Slice sl{comma(F, object_inclusion(F.cod, d)), {}, {}};
    const auto& cat = *sl.comma.cat;
    sl.block_of.assign(cat.object_count(), 0);
    for (auto o : cat.objects())
      sl.object_of.emplace(std::pair{sl.comma.proj_a(o).index, sl.comma.comparison[o.index].index}, o);
    std::vector<std::string> names;
    const auto blocks = connected_components(cat);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      names.push_back(cat.id(blocks[b].front()));
      for (auto o : blocks[b]) sl.block_of[o.index] = b;
    }
    out.k.sets.push_back(std::move(names));
    out.slices.push_back(std::move(sl));
  }
  for (auto g : D.morphisms()) {
    const auto& from = out.slices[D.src(g).index];
    const auto& to = out.slices[D.tgt(g).index];
    std::vector<std::size_t> action;
    for (const auto& rep_id : out.k.sets[D.src(g).index]) {
      const auto rep = from.comma.cat->object(rep_id);
      const auto c = from.comma.proj_a(rep);
      const auto phi = *D.compose(g, from.comma.comparison[rep.index]);
      action.push_back(to.block_of[to.object_of.at({c.index, phi.index}).index]);
    }
    out.k.actions.push_back(std::move(action));
  }
  return out;
}

}  // namespace detail

// K(d) = connected components of (F/d), each block named by the id of its
// least object "(c|*|phi)"; K(g) sends the block of (c, phi) to the block
// of (c, g∘phi).
inline SetValuedFunctor pi0_functor(const FunctorSpec& F) { return detail::pi0_slices(F).k; }

inline Factorization comprehensive_factor_opfib(const FunctorSpec& F) {
  if (auto r = validate_functor(F); !r.ok())
    throw InvalidFunctor("comprehensive_factor_opfib: input fails " + r.violations.front().law);
  const FinCat& C = *F.dom;
  const FinCat& D = *F.cod;
  auto pi0 = detail::pi0_slices(F);
  auto el = elements(pi0.k);
  const FinCat& E = *el.total;

  // s(c) is the block of (c, id_{Fc}); s(u) the morphism over F(u) out of it
  FunctorSpec s{F.dom, el.total, {}, {}};
  std::vector<std::string> home;
  for (auto c : C.objects()) {
    const auto d = F(c);
    const auto& sl = pi0.slices[d.index];
    const auto self = sl.object_of.at({c.index, D.identity(d).index});
    home.push_back(pi0.k.sets[d.index][sl.block_of[self.index]]);
    s.omap.push_back(E.object(element_id(D.id(d), home.back())));
  }
  for (auto u : C.morphisms()) s.mmap.push_back(E.morphism(element_id(D.id(F(u)), home[C.src(u).index])));

  auto require = [](const ValidationReport& r, const char* what) {
    if (!r.ok())
      throw WitnessFailure(std::string("comprehensive factorization: ") + what + " (" + r.violations.front().law + ")");
  };
  require(validate_functor(s), "s is not a functor");
  if (!(compose_functors(el.projection, s) == F)) throw WitnessFailure("comprehensive factorization: p∘s != F");
  require(is_discrete_opfibration(el.projection), "p is not a discrete opfibration");
  require(is_initial(s), "s is not initial");
  return {std::move(s), el.total, std::move(el.projection), FactorVariant::opfibration, std::move(pi0.k)};
}

inline Factorization comprehensive_factor_fib(const FunctorSpec& F) {
  auto dual = comprehensive_factor_opfib(opposite(F));
  auto mid = share(opposite(*dual.mid));
  Factorization out{{F.dom, mid, dual.s.omap, dual.s.mmap},
                    mid,
                    {mid, F.cod, dual.p.omap, dual.p.mmap},
                    FactorVariant::fibration,
                    {F.cod, Variance::contravariant, dual.k.sets, dual.k.actions}};
  auto require = [](const ValidationReport& r, const char* what) {
    if (!r.ok())
      throw WitnessFailure(std::string("comprehensive factorization: ") + what + " (" + r.violations.front().law + ")");
  };
  if (!(compose_functors(out.p, out.s) == F)) throw WitnessFailure("comprehensive factorization: p∘s != F");
  require(is_discrete_fibration(out.p), "p is not a discrete fibration");
  require(is_final(out.s), "s is not final");
  return out;
}

}  // namespace fiblang
