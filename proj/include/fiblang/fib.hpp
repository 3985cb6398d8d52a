#pragma once

// Fibres, discrete fibrations and their reindexing functions, cartesian
// lifts for the general (cloven) case, and the conditions on morphisms of
// fibrations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiblang/fincat.hpp"

namespace fiblang {

struct Fibre {
  Ob base_object;
  std::vector<Ob> elements;   // total objects over base_object
  std::vector<Mor> vertical;  // total morphisms over its identity
};

inline Fibre fibre(const FunctorSpec& p, Ob c) {
  if (c.index >= p.cod->object_count()) throw UnknownObject("fibre: object outside the base");
  Fibre f{c, {}, {}};
  for (auto e : p.dom->objects())
    if (p(e) == c) f.elements.push_back(e);
  const auto id = p.cod->identity(c);
  for (auto m : p.dom->morphisms())
    if (p(m) == id) f.vertical.push_back(m);
  return f;
}

inline Fibre fibre(const FunctorSpec& p, std::string_view c) { return fibre(p, p.cod->object(c)); }

// Total morphisms h with p(h) = u and cod(h) = x.
inline std::vector<Mor> lifts(const FunctorSpec& p, Mor u, Ob x) {
  std::vector<Mor> out;
  for (auto h : p.dom->incoming(x))
    if (p(h) == u) out.push_back(h);
  return out;
}

// Violations are ("unique-lift", {E, u, count}) for each pair with a lift
// count other than one.
inline ValidationReport is_discrete_fibration(const FunctorSpec& p) {
  ValidationReport r;
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  for (auto x : E.objects())
    for (auto u : B.incoming(p(x))) {
      auto n = lifts(p, u, x).size();
      if (n != 1) r.add("unique-lift", {E.id(x), B.id(u), std::to_string(n)});
    }
  return r;
}

inline ValidationReport is_discrete_opfibration(const FunctorSpec& p) {
  return is_discrete_fibration(opposite(p));
}

struct Reindexing {
  Mor along;
  // (X, u*X) for X in the fibre over tgt(along), in fibre order.
  std::vector<std::pair<Ob, Ob>> table;

  std::optional<Ob> operator()(Ob x) const {
    for (auto [from, to] : table)
      if (from == x) return to;
    return std::nullopt;
  }
};

// Assumes p is a discrete fibration.
inline Reindexing reindex_unchecked(const FunctorSpec& p, Mor u) {
  Reindexing r{u, {}};
  for (auto x : fibre(p, p.cod->tgt(u)).elements) {
    auto h = lifts(p, u, x);
    r.table.emplace_back(x, p.dom->src(h.front()));
  }
  return r;
}

inline Reindexing reindex(const FunctorSpec& p, Mor u) {
  if (!is_discrete_fibration(p).ok()) throw NotDiscreteFibration("reindex: not a discrete fibration");
  return reindex_unchecked(p, u);
}

inline Reindexing reindex(const FunctorSpec& p, std::string_view u) {
  return reindex(p, p.cod->morphism(u));
}

struct Filler {
  Mor g;
  Mor w;
  Mor h;
};

struct CartesianWitness {
  Mor lift;
  Mor over;
  std::vector<Filler> fillers;
};

// A test pair (g, w) admitting no filler or more than one.
struct CartesianCounterexample {
  Mor g;
  Mor w;
  std::size_t filler_count;
};

struct CartesianCheck {
  bool ok = false;
  CartesianWitness witness;
  std::optional<CartesianCounterexample> counterexample;
};

// f: X -> Y is cartesian when for every g: Z -> Y and w: pZ -> pX with
// p(g) = p(f)∘w there is exactly one h: Z -> X with f∘h = g and p(h) = w.
inline CartesianCheck is_cartesian(const FunctorSpec& p, Mor f) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  CartesianCheck out;
  out.witness = {f, p(f), {}};
  const auto x = E.src(f);
  const auto y = E.tgt(f);
  for (auto z : E.objects()) {
    for (auto g : E.hom(z, y)) {
      for (auto w : B.hom(p(z), p(x))) {
        auto pw = B.compose(p(f), w);
        if (!pw || *pw != p(g)) continue;
        std::size_t count = 0;
        Mor found{};
        for (auto h : E.hom(z, x)) {
          auto fh = E.compose(f, h);
          if (fh && *fh == g && p(h) == w) {
            ++count;
            found = h;
          }
        }
        if (count != 1) {
          out.counterexample = CartesianCounterexample{g, w, count};
          return out;
        }
        out.witness.fillers.push_back({g, w, found});
      }
    }
  }
  out.ok = true;
  return out;
}

struct CleavageEntry {
  Ob target;  // E
  Mor over;   // u: C -> pE
  Mor lift;   // chosen cartesian lift of u with codomain E
};

struct FibrationCheck {
  bool ok = false;
  std::vector<CleavageEntry> cleavage;
  ValidationReport violations;
};

// Every (E, u: C -> pE) must have a cartesian lift; the first one found in
// declaration order is recorded in the cleavage.
inline FibrationCheck is_fibration(const FunctorSpec& p) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  FibrationCheck out;
  std::vector<std::optional<bool>> cartesian(E.morphism_count());
  for (auto x : E.objects())
    for (auto u : B.incoming(p(x))) {
      std::optional<Mor> chosen;
      for (auto f : lifts(p, u, x)) {
        auto& known = cartesian[f.index];
        if (!known) known = is_cartesian(p, f).ok;
        if (*known) {
          chosen = f;
          break;
        }
      }
      if (chosen)
        out.cleavage.push_back({x, u, *chosen});
      else
        out.violations.add("cartesian-lift", {E.id(x), B.id(u)});
    }
  out.ok = out.violations.ok();
  return out;
}

// The same check on opposite categories; lifts in the cleavage are
// opcartesian and indexed by their domain.
inline FibrationCheck is_opfibration(const FunctorSpec& p) { return is_fibration(opposite(p)); }

// H: E -> F over the base, with p: E -> L and q: F -> L. Reports
// "triangle" violations where q∘H differs from p, and "reindexing-square"
// violations where H(u*X) differs from u*(HX). Squares are only checked
// when p and q are both discrete fibrations; otherwise "not-discrete" is
// reported for the offending side.
inline ValidationReport is_fib_morphism(const FunctorSpec& H, const FunctorSpec& p, const FunctorSpec& q) {
  if (!same_category(*H.dom, *p.dom) || !same_category(*H.cod, *q.dom) ||
      !same_category(*p.cod, *q.cod))
    throw ShapeMismatch("is_fib_morphism: H, p, q do not form a triangle");
  ValidationReport r;
  const FinCat& E = *p.dom;
  const FinCat& L = *p.cod;
  for (auto x : E.objects())
    if (q(H(x)) != p(x)) r.add("triangle", {E.id(x)});
  for (auto m : E.morphisms())
    if (q(H(m)) != p(m)) r.add("triangle", {E.id(m)});

  const bool p_discrete = is_discrete_fibration(p).ok();
  const bool q_discrete = is_discrete_fibration(q).ok();
  if (!p_discrete) r.add("not-discrete", {"p"});
  if (!q_discrete) r.add("not-discrete", {"q"});
  if (!p_discrete || !q_discrete) return r;

  for (auto u : L.morphisms()) {
    auto pu = reindex_unchecked(p, u);
    auto qu = reindex_unchecked(q, u);
    for (auto [x, ux] : pu.table) {
      auto image = qu(H(x));
      if (!image) continue;  // H(x) left the fibre; already a triangle violation
      if (H(ux) != *image) r.add("reindexing-square", {L.id(u), E.id(x)});
    }
  }
  return r;
}

// Commuting square q∘H = F∘p for p: E -> L, q: F -> L', H: E -> F, F: L -> L'.
inline ValidationReport is_fab_square(const FunctorSpec& H, const FunctorSpec& F, const FunctorSpec& p,
                                      const FunctorSpec& q) {
  if (!same_category(*H.dom, *p.dom) || !same_category(*H.cod, *q.dom) ||
      !same_category(*F.dom, *p.cod) || !same_category(*F.cod, *q.cod))
    throw ShapeMismatch("is_fab_square: functors do not form a square");
  ValidationReport r;
  const FinCat& E = *p.dom;
  for (auto x : E.objects())
    if (q(H(x)) != F(p(x))) r.add("square", {E.id(x)});
  for (auto m : E.morphisms())
    if (q(H(m)) != F(p(m))) r.add("square", {E.id(m)});
  return r;
}

}  // namespace fiblang
