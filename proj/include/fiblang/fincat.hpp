#pragma once

// Finite categories, functors between them, set-valued functors, and the
// basic constructions (opposite, comma, pullback, product, components).
//
// Every category is stored with an explicit, total composition table.
// Objects and morphisms are addressed by dense indices (Ob, Mor) in
// declaration order; string ids are kept for I/O and canonical naming.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fiblang/error.hpp"
#include "fiblang/union_find.hpp"

namespace fiblang {

struct Ob {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(Ob, Ob) = default;
};

struct Mor {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(Mor, Mor) = default;
};

struct Violation {
  std::string law;
  std::vector<std::string> witness;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }

  void add(std::string law, std::vector<std::string> witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }

  // Appends other's violations, prefixing each law with `prefix`.
  void append(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& v : other.violations) violations.push_back({prefix + v.law, v.witness});
  }

  std::size_t count(std::string_view law) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [&](const Violation& v) { return v.law == law; }));
  }
  bool has_law(std::string_view law) const { return count(law) > 0; }
};

struct MorphismDecl {
  std::string id;
  std::string src;
  std::string tgt;
};

// second ∘ first = result
struct CompositionDecl {
  std::string second;
  std::string first;
  std::string result;
};

class FinCatBuilder;

class FinCat {
 public:
  FinCat() = default;

  // Builds from string ids. Throws MalformedSpec on duplicate or undeclared
  // ids, or on an object without an identity entry. Law violations are not
  // checked here; see validate_category.
  FinCat(const std::vector<std::string>& objects, const std::vector<MorphismDecl>& morphisms,
         const std::vector<std::pair<std::string, std::string>>& identities,
         const std::vector<CompositionDecl>& compositions);

  std::size_t object_count() const noexcept { return object_ids_.size(); }
  std::size_t morphism_count() const noexcept { return morphism_ids_.size(); }
  bool empty() const noexcept { return object_ids_.empty(); }

  auto objects() const {
    return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(object_count())) |
           std::views::transform([](std::uint32_t i) { return Ob{i}; });
  }
  auto morphisms() const {
    return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(morphism_count())) |
           std::views::transform([](std::uint32_t i) { return Mor{i}; });
  }

  const std::string& id(Ob x) const { return object_ids_[x.index]; }
  const std::string& id(Mor m) const { return morphism_ids_[m.index]; }

  std::optional<Ob> find_object(std::string_view id) const {
    auto it = object_index_.find(std::string(id));
    if (it == object_index_.end()) return std::nullopt;
    return Ob{it->second};
  }
  std::optional<Mor> find_morphism(std::string_view id) const {
    auto it = morphism_index_.find(std::string(id));
    if (it == morphism_index_.end()) return std::nullopt;
    return Mor{it->second};
  }
  Ob object(std::string_view id) const {
    if (auto x = find_object(id)) return *x;
    throw UnknownObject("unknown object '" + std::string(id) + "'");
  }
  Mor morphism(std::string_view id) const {
    if (auto m = find_morphism(id)) return *m;
    throw UnknownObject("unknown morphism '" + std::string(id) + "'");
  }

  Ob src(Mor m) const { return src_[m.index]; }
  Ob tgt(Mor m) const { return tgt_[m.index]; }
  Mor identity(Ob x) const { return identity_[x.index]; }
  bool is_identity(Mor m) const { return identity_[src_[m.index].index] == m; }

  // The table entry for g ∘ f, if present. Entries on non-composable pairs
  // are representable so that validation can report them.
  std::optional<Mor> compose(Mor g, Mor f) const {
    auto r = table_[static_cast<std::size_t>(g.index) * morphism_count() + f.index];
    if (r < 0) return std::nullopt;
    return Mor{static_cast<std::uint32_t>(r)};
  }

  const std::vector<Mor>& hom(Ob a, Ob b) const {
    return hom_[static_cast<std::size_t>(a.index) * object_count() + b.index];
  }
  const std::vector<Mor>& outgoing(Ob a) const { return out_[a.index]; }
  const std::vector<Mor>& incoming(Ob b) const { return in_[b.index]; }

  std::vector<MorphismDecl> morphism_decls() const {
    std::vector<MorphismDecl> out;
    for (auto m : morphisms()) out.push_back({id(m), id(src(m)), id(tgt(m))});
    return out;
  }

  // All table entries, in (g, f) declaration order.
  std::vector<std::array<Mor, 3>> composition_entries() const {
    std::vector<std::array<Mor, 3>> out;
    for (auto g : morphisms())
      for (auto f : morphisms())
        if (auto r = compose(g, f)) out.push_back({g, f, *r});
    return out;
  }

  friend bool operator==(const FinCat& a, const FinCat& b) {
    return a.object_ids_ == b.object_ids_ && a.morphism_ids_ == b.morphism_ids_ &&
           a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.identity_ == b.identity_ &&
           a.table_ == b.table_;
  }

 private:
  friend class FinCatBuilder;

  void reindex() {
    const auto n = object_count();
    object_index_.clear();
    morphism_index_.clear();
    for (std::uint32_t i = 0; i < n; ++i) object_index_.emplace(object_ids_[i], i);
    for (std::uint32_t i = 0; i < morphism_count(); ++i) morphism_index_.emplace(morphism_ids_[i], i);
    hom_.assign(n * n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    for (auto m : morphisms()) {
      hom_[static_cast<std::size_t>(src(m).index) * n + tgt(m).index].push_back(m);
      out_[src(m).index].push_back(m);
      in_[tgt(m).index].push_back(m);
    }
  }

  std::vector<std::string> object_ids_;
  std::vector<std::string> morphism_ids_;
  std::vector<Ob> src_;
  std::vector<Ob> tgt_;
  std::vector<Mor> identity_;
  std::vector<std::int32_t> table_;

  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> morphism_index_;
  std::vector<std::vector<Mor>> hom_;
  std::vector<std::vector<Mor>> out_;
  std::vector<std::vector<Mor>> in_;
};

// Index-based incremental construction, used by every derived category.
class FinCatBuilder {
 public:
  Ob add_object(std::string id) {
    if (!object_index_.emplace(id, static_cast<std::uint32_t>(objects_.size())).second)
      throw MalformedSpec("duplicate object id '" + id + "'");
    objects_.push_back(std::move(id));
    identity_.push_back(std::nullopt);
    return Ob{static_cast<std::uint32_t>(objects_.size() - 1)};
  }

  Mor add_morphism(std::string id, Ob src, Ob tgt) {
    if (!morphism_index_.emplace(id, static_cast<std::uint32_t>(morphisms_.size())).second)
      throw MalformedSpec("duplicate morphism id '" + id + "'");
    morphisms_.push_back(std::move(id));
    src_.push_back(src);
    tgt_.push_back(tgt);
    return Mor{static_cast<std::uint32_t>(morphisms_.size() - 1)};
  }

  void set_identity(Ob x, Mor m) { identity_[x.index] = m; }

  void set_composite(Mor g, Mor f, Mor result) {
    const auto key = (static_cast<std::uint64_t>(g.index) << 32) | f.index;
    auto [it, inserted] = composites_.emplace(key, result.index);
    if (!inserted && it->second != result.index)
      throw MalformedSpec("conflicting composition entries for (" + morphisms_[g.index] + ", " +
                          morphisms_[f.index] + ")");
  }

  std::optional<Ob> find_object(const std::string& id) const {
    auto it = object_index_.find(id);
    if (it == object_index_.end()) return std::nullopt;
    return Ob{it->second};
  }
  std::optional<Mor> find_morphism(const std::string& id) const {
    auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) return std::nullopt;
    return Mor{it->second};
  }
  std::optional<Mor> identity(Ob x) const { return identity_[x.index]; }
  std::optional<Mor> composite(Mor g, Mor f) const {
    auto it = composites_.find((static_cast<std::uint64_t>(g.index) << 32) | f.index);
    if (it == composites_.end()) return std::nullopt;
    return Mor{it->second};
  }
  Ob src(Mor m) const { return src_[m.index]; }
  Ob tgt(Mor m) const { return tgt_[m.index]; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const std::string& object_id(Ob x) const { return objects_[x.index]; }
  const std::string& morphism_id(Mor m) const { return morphisms_[m.index]; }

  FinCat build() && {
    FinCat c;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (!identity_[i]) throw MalformedSpec("object '" + objects_[i] + "' has no identity");
      c.identity_.push_back(*identity_[i]);
    }
    const auto m = morphisms_.size();
    c.table_.assign(m * m, -1);
    for (const auto& [key, r] : composites_) {
      const auto g = key >> 32;
      const auto f = key & 0xffffffffu;
      c.table_[g * m + f] = static_cast<std::int32_t>(r);
    }
    c.object_ids_ = std::move(objects_);
    c.morphism_ids_ = std::move(morphisms_);
    c.src_ = std::move(src_);
    c.tgt_ = std::move(tgt_);
    c.reindex();
    return c;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> morphisms_;
  std::vector<Ob> src_;
  std::vector<Ob> tgt_;
  std::vector<std::optional<Mor>> identity_;
  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> morphism_index_;
  std::unordered_map<std::uint64_t, std::uint32_t> composites_;
};

inline FinCat::FinCat(const std::vector<std::string>& objects,
                      const std::vector<MorphismDecl>& morphisms,
                      const std::vector<std::pair<std::string, std::string>>& identities,
                      const std::vector<CompositionDecl>& compositions) {
  FinCatBuilder b;
  for (const auto& o : objects) b.add_object(o);
  auto need_object = [&](const std::string& id) {
    if (auto x = b.find_object(id)) return *x;
    throw MalformedSpec("undeclared object '" + id + "'");
  };
  auto need_morphism = [&](const std::string& id) {
    if (auto m = b.find_morphism(id)) return *m;
    throw MalformedSpec("undeclared morphism '" + id + "'");
  };
  for (const auto& m : morphisms) b.add_morphism(m.id, need_object(m.src), need_object(m.tgt));
  for (const auto& [o, m] : identities) b.set_identity(need_object(o), need_morphism(m));
  for (const auto& c : compositions)
    b.set_composite(need_morphism(c.second), need_morphism(c.first), need_morphism(c.result));
  *this = std::move(b).build();
}

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

inline bool same_category(const FinCat& a, const FinCat& b) { return &a == &b || a == b; }

// A functor between finite categories. Speakers, fibrations and projections
// are all values of this type; validity is checked by validate_functor.
struct FunctorSpec {
  CatPtr dom;
  CatPtr cod;
  std::vector<Ob> omap;
  std::vector<Mor> mmap;

  Ob operator()(Ob x) const { return omap[x.index]; }
  Mor operator()(Mor m) const { return mmap[m.index]; }

  friend bool operator==(const FunctorSpec& a, const FunctorSpec& b) {
    return same_category(*a.dom, *b.dom) && same_category(*a.cod, *b.cod) && a.omap == b.omap &&
           a.mmap == b.mmap;
  }
};

// Builds a functor from id maps. Identity morphisms may be left out of
// `mmap`; they are sent to the identity of the image object.
inline FunctorSpec make_functor(CatPtr dom, CatPtr cod, const std::map<std::string, std::string>& omap,
                                const std::map<std::string, std::string>& mmap) {
  FunctorSpec F{dom, cod, {}, {}};
  for (auto x : dom->objects()) {
    auto it = omap.find(dom->id(x));
    if (it == omap.end()) throw MalformedSpec("object map has no entry for '" + dom->id(x) + "'");
    auto y = cod->find_object(it->second);
    if (!y) throw MalformedSpec("object map sends '" + dom->id(x) + "' to undeclared '" + it->second + "'");
    F.omap.push_back(*y);
  }
  for (auto m : dom->morphisms()) {
    auto it = mmap.find(dom->id(m));
    if (it == mmap.end()) {
      if (dom->is_identity(m)) {
        F.mmap.push_back(cod->identity(F.omap[dom->src(m).index]));
        continue;
      }
      throw MalformedSpec("morphism map has no entry for '" + dom->id(m) + "'");
    }
    auto n = cod->find_morphism(it->second);
    if (!n)
      throw MalformedSpec("morphism map sends '" + dom->id(m) + "' to undeclared '" + it->second + "'");
    F.mmap.push_back(*n);
  }
  for (const auto& [k, v] : omap)
    if (!dom->find_object(k)) throw MalformedSpec("object map names undeclared '" + k + "'");
  for (const auto& [k, v] : mmap)
    if (!dom->find_morphism(k)) throw MalformedSpec("morphism map names undeclared '" + k + "'");
  return F;
}

inline ValidationReport validate_category(const FinCat& c) {
  ValidationReport r;
  for (auto x : c.objects()) {
    auto i = c.identity(x);
    if (c.src(i) != x || c.tgt(i) != x) r.add("identity-endpoints", {c.id(x), c.id(i)});
  }
  for (auto g : c.morphisms()) {
    for (auto f : c.morphisms()) {
      auto gf = c.compose(g, f);
      const bool composable = c.tgt(f) == c.src(g);
      if (!composable) {
        if (gf) r.add("composition-domain", {c.id(g), c.id(f), c.id(*gf)});
        continue;
      }
      if (!gf) {
        r.add("composition-totality", {c.id(g), c.id(f)});
      } else if (c.src(*gf) != c.src(f) || c.tgt(*gf) != c.tgt(g)) {
        r.add("endpoint-coherence", {c.id(g), c.id(f), c.id(*gf)});
      }
    }
  }
  for (auto f : c.morphisms()) {
    auto right = c.compose(f, c.identity(c.src(f)));
    if (right && *right != f) r.add("right-unit", {c.id(f)});
    auto left = c.compose(c.identity(c.tgt(f)), f);
    if (left && *left != f) r.add("left-unit", {c.id(f)});
  }
  for (auto f : c.morphisms()) {
    for (auto g : c.outgoing(c.tgt(f))) {
      auto gf = c.compose(g, f);
      if (!gf) continue;
      for (auto h : c.outgoing(c.tgt(g))) {
        auto hg = c.compose(h, g);
        if (!hg) continue;
        auto lhs = c.compose(h, *gf);
        auto rhs = c.compose(*hg, f);
        if (lhs && rhs && *lhs != *rhs) r.add("associativity", {c.id(h), c.id(g), c.id(f)});
      }
    }
  }
  return r;
}

inline ValidationReport validate_functor(const FunctorSpec& F) {
  ValidationReport r;
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  r.append(validate_category(A), "dom.");
  r.append(validate_category(B), "cod.");
  if (F.omap.size() != A.object_count() || F.mmap.size() != A.morphism_count()) {
    r.add("shape", {std::to_string(F.omap.size()), std::to_string(F.mmap.size())});
    return r;
  }
  for (auto x : A.objects())
    if (F(x).index >= B.object_count()) r.add("shape", {A.id(x)});
  for (auto m : A.morphisms())
    if (F(m).index >= B.morphism_count()) r.add("shape", {A.id(m)});
  if (!r.ok()) return r;

  for (auto f : A.morphisms()) {
    if (F(A.src(f)) != B.src(F(f)) || F(A.tgt(f)) != B.tgt(F(f)))
      r.add("endpoint-preservation", {A.id(f), B.id(F(f))});
  }
  for (auto x : A.objects())
    if (F(A.identity(x)) != B.identity(F(x))) r.add("identity-preservation", {A.id(x)});
  for (auto f : A.morphisms()) {
    for (auto g : A.outgoing(A.tgt(f))) {
      auto gf = A.compose(g, f);
      if (!gf) continue;
      auto image = B.compose(F(g), F(f));
      if (!image || *image != F(*gf)) r.add("composition-preservation", {A.id(g), A.id(f)});
    }
  }
  return r;
}

inline FinCat opposite(const FinCat& c) {
  FinCatBuilder b;
  for (auto x : c.objects()) b.add_object(c.id(x));
  for (auto m : c.morphisms()) b.add_morphism(c.id(m), c.tgt(m), c.src(m));
  for (auto x : c.objects()) b.set_identity(x, c.identity(x));
  for (const auto& [g, f, gf] : c.composition_entries()) b.set_composite(f, g, gf);
  return std::move(b).build();
}

inline FunctorSpec opposite(const FunctorSpec& F) {
  return {share(opposite(*F.dom)), share(opposite(*F.cod)), F.omap, F.mmap};
}

inline FunctorSpec identity_functor(CatPtr c) {
  FunctorSpec F{c, c, {}, {}};
  for (auto x : c->objects()) F.omap.push_back(x);
  for (auto m : c->morphisms()) F.mmap.push_back(m);
  return F;
}

// G ∘ F
inline FunctorSpec compose_functors(const FunctorSpec& G, const FunctorSpec& F) {
  if (!same_category(*F.cod, *G.dom)) throw ShapeMismatch("compose_functors: cod(F) != dom(G)");
  FunctorSpec H{F.dom, G.cod, {}, {}};
  for (auto x : F.dom->objects()) H.omap.push_back(G(F(x)));
  for (auto m : F.dom->morphisms()) H.mmap.push_back(G(F(m)));
  return H;
}

inline bool is_isomorphism(const FunctorSpec& F) {
  auto bijective = [](const auto& map, std::size_t target_size) {
    if (map.size() != target_size) return false;
    std::vector<bool> hit(target_size, false);
    for (auto v : map) {
      if (hit[v.index]) return false;
      hit[v.index] = true;
    }
    return true;
  };
  return validate_functor(F).ok() && bijective(F.omap, F.cod->object_count()) &&
         bijective(F.mmap, F.cod->morphism_count());
}

inline std::string identity_id(const std::string& object) { return "id:" + object; }

// One object per name, identities only.
inline FinCat discrete_category(const std::vector<std::string>& names) {
  FinCatBuilder b;
  for (const auto& n : names) {
    auto x = b.add_object(n);
    b.set_identity(x, b.add_morphism(identity_id(n), x, x));
  }
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    Mor m{i};
    b.set_composite(m, m, m);
  }
  return std::move(b).build();
}

inline FinCat terminal_category() { return discrete_category({"*"}); }

inline FunctorSpec constant_functor(CatPtr dom, CatPtr cod, Ob value) {
  FunctorSpec F{dom, cod, {}, {}};
  F.omap.assign(dom->object_count(), value);
  F.mmap.assign(dom->morphism_count(), cod->identity(value));
  return F;
}

// The functor from the terminal category picking out `c`.
inline FunctorSpec object_inclusion(CatPtr cat, Ob c) {
  return constant_functor(share(terminal_category()), std::move(cat), c);
}

// Result of a construction with two legs into its factors.
struct SpanResult {
  CatPtr cat;
  FunctorSpec proj_a;
  FunctorSpec proj_b;
  std::vector<Mor> comparison;  // comma only: phi of each object
};

inline std::string encode(std::initializer_list<std::string_view> parts) {
  std::string s = "(";
  bool first = true;
  for (auto p : parts) {
    if (!first) s += '|';
    s += p;
    first = false;
  }
  s += ')';
  return s;
}

// Comma category (F/G) for F: A -> C, G: B -> C. Objects are triples
// (a, b, phi: Fa -> Gb) named "(a|b|phi)"; morphisms (u, v) with
// G(v)∘phi = phi'∘F(u), named "(u|v|phi|phi')" since (u, v) alone does not
// determine the endpoints.
inline SpanResult comma(const FunctorSpec& F, const FunctorSpec& G) {
  if (!same_category(*F.cod, *G.cod)) throw CodMismatch("comma: functors have different codomains");
  const FinCat& A = *F.dom;
  const FinCat& B = *G.dom;
  const FinCat& C = *F.cod;

  FinCatBuilder b;
  std::map<std::array<std::uint32_t, 3>, Ob> object_of;
  std::vector<std::array<std::uint32_t, 3>> triple;
  for (auto a : A.objects())
    for (auto bb : B.objects())
      for (auto phi : C.hom(F(a), G(bb))) {
        auto o = b.add_object(encode({A.id(a), B.id(bb), C.id(phi)}));
        object_of.emplace(std::array{a.index, bb.index, phi.index}, o);
        triple.push_back({a.index, bb.index, phi.index});
      }

  struct Arrow {
    Mor u, v;
    Ob from, to;
  };
  std::vector<Arrow> arrows;
  std::map<std::array<std::uint32_t, 4>, Mor> arrow_of;
  std::vector<std::vector<Mor>> out(b.object_count());
  for (std::uint32_t oi = 0; oi < triple.size(); ++oi) {
    const auto [a, bb, phi] = triple[oi];
    for (auto u : A.outgoing(Ob{a}))
      for (auto v : B.outgoing(Ob{bb})) {
        auto lhs = C.compose(G(v), Mor{phi});
        for (auto phi2 : C.hom(F(A.tgt(u)), G(B.tgt(v)))) {
          auto rhs = C.compose(phi2, F(u));
          if (!lhs || !rhs || *lhs != *rhs) continue;
          auto to = object_of.at({A.tgt(u).index, B.tgt(v).index, phi2.index});
          auto m = b.add_morphism(encode({A.id(u), B.id(v), C.id(Mor{phi}), C.id(phi2)}), Ob{oi}, to);
          arrows.push_back({u, v, Ob{oi}, to});
          arrow_of.emplace(std::array{u.index, v.index, oi, to.index}, m);
          out[oi].push_back(m);
          if (A.is_identity(u) && B.is_identity(v) && phi2.index == phi) b.set_identity(Ob{oi}, m);
        }
      }
  }
  for (std::uint32_t i = 0; i < arrows.size(); ++i) {
    const auto& first = arrows[i];
    for (auto m2 : out[first.to.index]) {
      const auto& second = arrows[m2.index];
      auto u = A.compose(second.u, first.u);
      auto v = B.compose(second.v, first.v);
      if (!u || !v) continue;
      auto it = arrow_of.find({u->index, v->index, first.from.index, second.to.index});
      if (it != arrow_of.end()) b.set_composite(m2, Mor{i}, it->second);
    }
  }
  auto cat = share(std::move(b).build());
  SpanResult r{cat, {cat, F.dom, {}, {}}, {cat, G.dom, {}, {}}, {}};
  for (const auto& t : triple) {
    r.proj_a.omap.push_back(Ob{t[0]});
    r.proj_b.omap.push_back(Ob{t[1]});
    r.comparison.push_back(Mor{t[2]});
  }
  for (const auto& a : arrows) {
    r.proj_a.mmap.push_back(a.u);
    r.proj_b.mmap.push_back(a.v);
  }
  return r;
}

// Strict pullback: pairs (a, b) with Fa = Gb, morphisms (u, v) with Fu = Gv.
// Equal to the full subcategory of (F/G) on identity comparisons.
inline SpanResult pullback(const FunctorSpec& F, const FunctorSpec& G) {
  if (!same_category(*F.cod, *G.cod)) throw CodMismatch("pullback: functors have different codomains");
  const FinCat& A = *F.dom;
  const FinCat& B = *G.dom;
  FinCatBuilder b;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Ob> object_of;
  std::vector<std::pair<Ob, Ob>> pairs;
  for (auto a : A.objects())
    for (auto bb : B.objects())
      if (F(a) == G(bb)) {
        object_of.emplace(std::pair{a.index, bb.index}, b.add_object(encode({A.id(a), B.id(bb)})));
        pairs.emplace_back(a, bb);
      }
  std::map<std::pair<std::uint32_t, std::uint32_t>, Mor> arrow_of;
  std::vector<std::pair<Mor, Mor>> arrows;
  for (auto u : A.morphisms())
    for (auto v : B.morphisms())
      if (F(u) == G(v)) {
        auto from = object_of.at({A.src(u).index, B.src(v).index});
        auto to = object_of.at({A.tgt(u).index, B.tgt(v).index});
        auto m = b.add_morphism(encode({A.id(u), B.id(v)}), from, to);
        arrow_of.emplace(std::pair{u.index, v.index}, m);
        arrows.emplace_back(u, v);
      }
  for (std::uint32_t i = 0; i < pairs.size(); ++i) {
    auto [a, bb] = pairs[i];
    b.set_identity(Ob{i}, arrow_of.at({A.identity(a).index, B.identity(bb).index}));
  }
  for (const auto& [u1, v1] : arrows)
    for (const auto& [u2, v2] : arrows) {
      if (A.tgt(u1) != A.src(u2) || B.tgt(v1) != B.src(v2)) continue;
      auto u = A.compose(u2, u1);
      auto v = B.compose(v2, v1);
      if (!u || !v) continue;
      auto it = arrow_of.find({u->index, v->index});
      if (it != arrow_of.end())
        b.set_composite(arrow_of.at({u2.index, v2.index}), arrow_of.at({u1.index, v1.index}), it->second);
    }
  auto cat = share(std::move(b).build());
  SpanResult r{cat, {cat, F.dom, {}, {}}, {cat, G.dom, {}, {}}, {}};
  for (auto [a, bb] : pairs) {
    r.proj_a.omap.push_back(a);
    r.proj_b.omap.push_back(bb);
  }
  for (auto [u, v] : arrows) {
    r.proj_a.mmap.push_back(u);
    r.proj_b.mmap.push_back(v);
  }
  return r;
}

// Cartesian product with objects "(a|b)" and morphisms "(u|v)".
inline SpanResult product(CatPtr left, CatPtr right) {
  const FinCat& A = *left;
  const FinCat& B = *right;
  FinCatBuilder b;
  for (auto a : A.objects())
    for (auto bb : B.objects()) b.add_object(encode({A.id(a), B.id(bb)}));
  const auto nb = static_cast<std::uint32_t>(B.object_count());
  const auto mb = static_cast<std::uint32_t>(B.morphism_count());
  auto ob = [&](Ob a, Ob bb) { return Ob{a.index * nb + bb.index}; };
  auto mor = [&](Mor u, Mor v) { return Mor{u.index * mb + v.index}; };
  for (auto u : A.morphisms())
    for (auto v : B.morphisms())
      b.add_morphism(encode({A.id(u), B.id(v)}), ob(A.src(u), B.src(v)), ob(A.tgt(u), B.tgt(v)));
  for (auto a : A.objects())
    for (auto bb : B.objects()) b.set_identity(ob(a, bb), mor(A.identity(a), B.identity(bb)));
  for (const auto& [g1, f1, r1] : A.composition_entries())
    for (const auto& [g2, f2, r2] : B.composition_entries())
      b.set_composite(mor(g1, g2), mor(f1, f2), mor(r1, r2));
  auto cat = share(std::move(b).build());
  SpanResult r{cat, {cat, left, {}, {}}, {cat, right, {}, {}}, {}};
  for (auto a : A.objects())
    for (auto bb : B.objects()) {
      r.proj_a.omap.push_back(a);
      r.proj_b.omap.push_back(bb);
    }
  for (auto u : A.morphisms())
    for (auto v : B.morphisms()) {
      r.proj_a.mmap.push_back(u);
      r.proj_b.mmap.push_back(v);
    }
  return r;
}

// Disjoint union; the two id sets must not overlap.
inline FinCat coproduct(const FinCat& A, const FinCat& B) {
  FinCatBuilder b;
  for (auto x : A.objects()) b.add_object(A.id(x));
  for (auto x : B.objects()) b.add_object(B.id(x));
  const auto no = static_cast<std::uint32_t>(A.object_count());
  const auto nm = static_cast<std::uint32_t>(A.morphism_count());
  for (auto m : A.morphisms()) b.add_morphism(A.id(m), A.src(m), A.tgt(m));
  for (auto m : B.morphisms())
    b.add_morphism(B.id(m), Ob{B.src(m).index + no}, Ob{B.tgt(m).index + no});
  for (auto x : A.objects()) b.set_identity(x, A.identity(x));
  for (auto x : B.objects()) b.set_identity(Ob{x.index + no}, Mor{B.identity(x).index + nm});
  for (const auto& [g, f, r] : A.composition_entries()) b.set_composite(g, f, r);
  for (const auto& [g, f, r] : B.composition_entries())
    b.set_composite(Mor{g.index + nm}, Mor{f.index + nm}, Mor{r.index + nm});
  return std::move(b).build();
}

// Blocks of objects joined by zig-zags, ordered by least member.
inline std::vector<std::vector<Ob>> connected_components(const FinCat& c) {
  UnionFind uf(c.object_count());
  for (auto m : c.morphisms()) uf.unite(c.src(m).index, c.tgt(m).index);
  std::vector<std::vector<Ob>> blocks;
  std::unordered_map<std::size_t, std::size_t> block_of_root;
  for (auto x : c.objects()) {
    auto root = uf.find(x.index);
    auto [it, fresh] = block_of_root.emplace(root, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(x);
  }
  return blocks;
}

enum class Variance { contravariant, covariant };

// A finite set per object and a function per morphism. For a contravariant
// functor and f: A -> B, actions[f] maps sets[B] to sets[A] (by element
// index); for a covariant one it maps sets[A] to sets[B].
struct SetValuedFunctor {
  CatPtr base;
  Variance variance = Variance::contravariant;
  std::vector<std::vector<std::string>> sets;
  std::vector<std::vector<std::size_t>> actions;

  Ob action_source(Mor f) const {
    return variance == Variance::contravariant ? base->tgt(f) : base->src(f);
  }
  Ob action_target(Mor f) const {
    return variance == Variance::contravariant ? base->src(f) : base->tgt(f);
  }
  std::optional<std::size_t> find_element(Ob c, std::string_view x) const {
    const auto& s = sets[c.index];
    auto it = std::find(s.begin(), s.end(), x);
    if (it == s.end()) return std::nullopt;
    return static_cast<std::size_t>(it - s.begin());
  }
  std::size_t act(Mor f, std::size_t x) const { return actions[f.index][x]; }
};

inline ValidationReport validate_set_functor(const SetValuedFunctor& W) {
  ValidationReport r;
  const FinCat& C = *W.base;
  r.append(validate_category(C), "base.");
  if (W.sets.size() != C.object_count() || W.actions.size() != C.morphism_count()) {
    r.add("shape", {});
    return r;
  }
  for (auto x : C.objects()) {
    auto s = W.sets[x.index];
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) r.add("duplicate-element", {C.id(x)});
  }
  for (auto f : C.morphisms()) {
    const auto& a = W.actions[f.index];
    const auto n_src = W.sets[W.action_source(f).index].size();
    const auto n_tgt = W.sets[W.action_target(f).index].size();
    if (a.size() != n_src ||
        std::any_of(a.begin(), a.end(), [&](std::size_t v) { return v >= n_tgt; }))
      r.add("action-shape", {C.id(f)});
  }
  if (!r.ok()) return r;
  for (auto x : C.objects()) {
    const auto& a = W.actions[C.identity(x).index];
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != i) {
        r.add("action-identity", {C.id(x), W.sets[x.index][i]});
        break;
      }
  }
  for (auto f : C.morphisms())
    for (auto g : C.outgoing(C.tgt(f))) {
      auto gf = C.compose(g, f);
      if (!gf) continue;
      // contravariant: W(gf) = W(f)∘W(g); covariant: W(gf) = W(g)∘W(f)
      const auto& outer = W.variance == Variance::contravariant ? W.actions[f.index] : W.actions[g.index];
      const auto& inner = W.variance == Variance::contravariant ? W.actions[g.index] : W.actions[f.index];
      const auto& whole = W.actions[gf->index];
      for (std::size_t i = 0; i < whole.size(); ++i)
        if (whole[i] != outer[inner[i]]) {
          r.add("action-composition", {C.id(g), C.id(f), W.sets[W.action_source(*gf).index][i]});
          break;
        }
    }
  return r;
}

// Builds a set-valued functor from id maps; identity actions may be omitted.
// actions[f][x] = y means the action of f sends element x to element y.
inline SetValuedFunctor make_set_functor(
    CatPtr base, Variance variance, const std::map<std::string, std::vector<std::string>>& sets,
    const std::map<std::string, std::map<std::string, std::string>>& actions) {
  SetValuedFunctor W{base, variance, {}, {}};
  for (auto x : base->objects()) {
    auto it = sets.find(base->id(x));
    if (it == sets.end()) throw MalformedSpec("no element set for object '" + base->id(x) + "'");
    W.sets.push_back(it->second);
  }
  for (const auto& [k, v] : sets)
    if (!base->find_object(k)) throw MalformedSpec("element set for undeclared object '" + k + "'");
  for (auto f : base->morphisms()) {
    const auto& from = W.sets[W.action_source(f).index];
    const auto to = W.action_target(f);
    auto it = actions.find(base->id(f));
    std::vector<std::size_t> a;
    if (it == actions.end()) {
      if (!base->is_identity(f)) throw MalformedSpec("no action for morphism '" + base->id(f) + "'");
      for (std::size_t i = 0; i < from.size(); ++i) a.push_back(i);
    } else {
      for (const auto& x : from) {
        auto e = it->second.find(x);
        if (e == it->second.end())
          throw MalformedSpec("action of '" + base->id(f) + "' has no value at '" + x + "'");
        auto y = W.find_element(to, e->second);
        if (!y)
          throw MalformedSpec("action of '" + base->id(f) + "' sends '" + x + "' to undeclared '" +
                              e->second + "'");
        a.push_back(*y);
      }
      if (it->second.size() != from.size())
        throw MalformedSpec("action of '" + base->id(f) + "' names elements outside its domain");
    }
    W.actions.push_back(std::move(a));
  }
  for (const auto& [k, v] : actions)
    if (!base->find_morphism(k)) throw MalformedSpec("action for undeclared morphism '" + k + "'");
  return W;
}

}  // namespace fiblang
