// One PASS/FAIL line per acceptance criterion. Every comparison is exact
// (tolerance 0).

#include <cstdio>
#include <functional>
#include <iostream>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fiblang;
using namespace fiblang::testing;

namespace {

constexpr int roundtrip_cases = 100;
constexpr std::size_t roundtrip_max_objects = 5;
constexpr std::size_t roundtrip_max_elems = 4;
constexpr int counting_pairs = 25;
constexpr std::size_t counting_max_objects = 3;
constexpr std::size_t counting_max_elems = 4;
constexpr int factor_cases = 200;
constexpr std::size_t factor_max_objects = 4;
constexpr int comma_cases = 100;
constexpr int mcg_cases = 50;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << n << " " << name;
  if (!o.detail.empty()) std::cout << ": " << o.detail;
  std::cout << "\n";
}

CatPtr nonempty(Rng& rng, std::size_t max_objects) {
  CatPtr c;
  do c = share(random_category(rng, max_objects));
  while (c->empty());
  return c;
}

}  // namespace

int main() {
  const auto seed = seed_from_env();

  report(1, "fixture fibres 3,3,2 and reindex along f", [] {
    Outcome o;
    Tower fx;
    o.require(fibre(fx.p, "A").elements.size() == 3, "fibre over A");
    o.require(fibre(fx.p, "B").elements.size() == 3, "fibre over B");
    o.require(fibre(fx.p, "C").elements.size() == 2, "fibre over C");
    std::vector<std::pair<std::string, std::string>> got;
    for (auto [x, y] : reindex(fx.p, "f").table) got.push_back({fx.total->id(x), fx.total->id(y)});
    o.require(got == std::vector<std::pair<std::string, std::string>>{{"B0", "A0"}, {"B1", "A2"}, {"B2", "A2"}},
              "reindex along f");
    return o;
  });

  report(2, "Grothendieck roundtrips on " + std::to_string(roundtrip_cases) + " random presheaves (seed " +
                std::to_string(seed) + ")",
         [seed] {
           Outcome o;
           Rng rng(seed ^ 2);
           int bad = 0;
           for (int i = 0; i < roundtrip_cases; ++i) {
             auto C = share(random_category(rng, roundtrip_max_objects));
             auto W = random_presheaf(rng, C, roundtrip_max_elems);
             if (!roundtrip_presheaf(W).checked || !roundtrip_fibration(elements(W).projection).checked) ++bad;
           }
           o.require(bad == 0, std::to_string(bad) + " failures");
           return o;
         });

  report(3, "natural transformations = fibration morphisms on " + std::to_string(counting_pairs) + " pairs", [seed] {
    Outcome o;
    Rng rng(seed ^ 3);
    for (int i = 0; i < counting_pairs; ++i) {
      auto C = share(random_category(rng, counting_max_objects));
      auto V = random_presheaf(rng, C, counting_max_elems);
      auto W = random_presheaf(rng, C, counting_max_elems);
      const auto nat = count_natural_transformations(V, W);
      const auto fib = count_fibration_morphisms(elements(V).projection, elements(W).projection);
      o.require(nat == fib, "pair " + std::to_string(i) + ": " + std::to_string(nat) + " vs " + std::to_string(fib));
    }
    return o;
  });

  report(4, "comprehensive factorization on " + std::to_string(factor_cases) + " random functors", [seed] {
    Outcome o;
    Rng rng(seed ^ 4);
    for (int i = 0; i < factor_cases && o.ok; ++i) {
      auto C = share(random_category(rng, factor_max_objects));
      auto D = nonempty(rng, factor_max_objects);
      auto F = random_functor(rng, C, D);
      const auto tag = "case " + std::to_string(i) + ": ";
      auto op = comprehensive_factor_opfib(F);
      o.require(compose_functors(op.p, op.s) == F, tag + "opfib p∘s != F");
      o.require(is_discrete_opfibration(op.p).ok(), tag + "p not a discrete opfibration");
      o.require(is_initial(op.s).ok(), tag + "s not initial");
      auto fb = comprehensive_factor_fib(F);
      o.require(compose_functors(fb.p, fb.s) == F, tag + "fib p∘s != F");
      o.require(is_discrete_fibration(fb.p).ok(), tag + "p not a discrete fibration");
      o.require(is_final(fb.s).ok(), tag + "s not final");
      const auto Fop = opposite(F);
      for (auto d : D->objects()) {
        o.require(op.k.sets[d.index].size() == slice_component_count(F, d), tag + "pi0 count (opfib)");
        o.require(fb.k.sets[d.index].size() == slice_component_count(Fop, d), tag + "pi0 count (fib)");
      }
    }
    return o;
  });

  report(5, "comma square projections on " + std::to_string(comma_cases) + " random squares", [seed] {
    Outcome o;
    Rng rng(seed ^ 5);
    for (int i = 0; i < comma_cases; ++i) {
      auto A = share(random_category(rng, 3));
      auto B = share(random_category(rng, 3));
      auto C = nonempty(rng, 3);
      auto s = comma(random_functor(rng, A, C), random_functor(rng, B, C));
      o.require(is_fibration(s.proj_a).ok, "case " + std::to_string(i) + ": projA");
      o.require(is_opfibration(s.proj_b).ok, "case " + std::to_string(i) + ": projB");
    }
    return o;
  });

  report(6, "mcg sizes and classification of " + std::to_string(mcg_cases) + " fibrations over mcg(3)", [seed] {
    Outcome o;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
      auto G = mcg(names);
      o.require(G.object_count() == n && G.morphism_count() == n * n && validate_category(G).ok(),
                "mcg(" + std::to_string(n) + ")");
    }
    Rng rng(seed ^ 6);
    auto G = share(mcg({"a", "b", "c"}));
    for (int i = 0; i < mcg_cases; ++i) {
      auto p = elements(random_presheaf(rng, G, 4)).projection;
      const auto n = fibre(p, Ob{0}).elements.size();
      for (auto a : G->objects()) o.require(fibre(p, a).elements.size() == n, "unequal fibres");
      auto cls = classify_over_mcg(p);
      o.require(is_isomorphism(cls.iso), "H not an isomorphism");
      o.require(compose_functors(cls.product_projection, cls.iso) == p, "projection∘H != p");
    }
    return o;
  });

  report(7, "pregroup parse of 'the cat sleeps' and rejection of 'sleeps the cat'", [] {
    Outcome o;
    auto lex = fixture("lex.json").lexicon("paper");
    const auto s = parse_type("s");
    auto r = parse_sentence(tokenize("the cat sleeps"), lex, s);
    o.require(std::holds_alternative<SentenceParse>(r), "no parse");
    if (auto* p = std::get_if<SentenceParse>(&r)) {
      o.require(p->types == parse_type("n . n^l . s"), "types");
      o.require(p->witness.steps.size() == 1 && p->witness.steps[0].position == 0 &&
                    p->witness.steps[0].cancelled_base == "n" &&
                    p->witness.steps[0].cancelled_exponents == std::pair<int, int>{0, 1},
                "witness");
      o.require(p->witness.replay(), "replay");
    }
    auto bad = parse_sentence(tokenize("sleeps the cat"), lex, s);
    o.require(std::holds_alternative<ParseFailure>(bad) &&
                  std::get<ParseFailure>(bad).kind == ParseFailureKind::no_reduction,
              "'sleeps the cat' not rejected with no_reduction");
    return o;
  });

  report(8, "toy semantics fibre sizes, diagonal reindexing, discreteness, monoidality", [] {
    Outcome o;
    auto ws = fixture("lex.json");
    auto sp = build_semantics(ws.corpus("toy"), ws.lexicon("paper"), parse_type("s"));
    const auto& p = sp.fibration.projection;
    o.require(fibre(p, "(the cat sleeps, s)").elements.size() == 1, "sentence fibre");
    o.require(fibre(p, "(the cat is fat, s)").elements.size() == 1, "sentence fibre");
    o.require(fibre(p, "(the cat, n)").elements.size() == 2, "fibre over (the cat, n)");
    const auto& E = *sp.fibration.total;
    auto re = reindex(p, "red:the cat sleeps");
    o.require(re.table.size() == 1, "one meaning");
    if (re.table.size() == 1)
      o.require(E.id(re.table[0].second) ==
                    element_id("(the cat, n) ⊗ (sleeps, n^l.s)", "(the cat sleeps|the cat sleeps)"),
                "reindex is not (m, m)");
    o.require(is_discrete_fibration(p).ok(), "not a discrete fibration");
    o.require(check_strict_monoidality(sp).ok(), "not strict monoidal");
    return o;
  });

  report(9, "validator rejects negative fixtures and accepts positive ones", [] {
    Outcome o;
    try {
      fixture("negative/broken_associativity.json");
      o.require(false, "broken associativity accepted");
    } catch (const ValidationError& e) {
      o.require(e.report().has_law("associativity"), "wrong class for broken associativity");
    }
    auto lift = fixture("negative/missing_lift.json");
    o.require(is_discrete_fibration(lift.functor("p").spec).has_law("unique-lift"), "missing lift");
    auto span = fixture("negative/non_cartesian_span.json");
    o.require(is_fibration(span.functor("q").spec).violations.has_law("cartesian-lift"), "non-cartesian span");
    try {
      fixture("negative/functor_missing_mmap.json");
      o.require(false, "missing mmap accepted");
    } catch (const SchemaError&) {
    }
    Tower fx;
    o.require(is_discrete_fibration(fx.p).ok(), "fixture projection");
    for (auto name : {"fig2.json", "lex.json", "noninjective.json"})
      o.require(validate_workspace(load_unvalidated(fixture_path(name))).ok(), name);
    return o;
  });

  return failures == 0 ? 0 : 1;
}
