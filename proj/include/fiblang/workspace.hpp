#pragma once

// JSON workspace files: named categories, functors, presheaves, lexicons
// and corpora. Loading checks the schema, synthesizes omitted identities
// and unit-law composites, then validates every definition. Saving emits
// a canonical form (sorted keys, declaration-order arrays).

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fiblang/error.hpp"
#include "fiblang/fincat.hpp"
#include "fiblang/pregroup.hpp"

namespace fiblang {

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("workspace fails validation (" + std::to_string(report.violations.size()) + " violations)"),
        report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

struct FunctorEntry {
  std::string dom;
  std::string cod;
  FunctorSpec spec;
};

struct PresheafEntry {
  std::string base;
  SetValuedFunctor functor;
};

struct Workspace {
  std::map<std::string, CatPtr> categories;
  std::map<std::string, FunctorEntry> functors;
  std::map<std::string, PresheafEntry> presheaves;
  std::map<std::string, Lexicon> lexicons;
  std::map<std::string, std::vector<std::string>> corpora;

  const CatPtr& category(const std::string& name) const { return lookup(categories, name, "category"); }
  const FunctorEntry& functor(const std::string& name) const { return lookup(functors, name, "functor"); }
  const PresheafEntry& presheaf(const std::string& name) const { return lookup(presheaves, name, "presheaf"); }
  const Lexicon& lexicon(const std::string& name) const { return lookup(lexicons, name, "lexicon"); }
  const std::vector<std::string>& corpus(const std::string& name) const { return lookup(corpora, name, "corpus"); }

 private:
  template <class Map>
  static const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) throw UnknownName(std::string("no ") + kind + " named '" + name + "'");
    return it->second;
  }
};

namespace detail {

using nlohmann::json;

inline std::string pointer_escape(const std::string& key) {
  std::string s;
  for (char c : key) {
    if (c == '~') s += "~0";
    else if (c == '/') s += "~1";
    else s += c;
  }
  return s;
}

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + pointer_escape(key); }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& need(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path, "missing key '" + key + "'");
  return *it;
}

inline void expect(bool cond, const std::string& path, const std::string& what) {
  if (!cond) throw SchemaError(path, what);
}

inline void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  expect(obj.is_object(), path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    expect(ok, child(path, it.key()), "unknown key '" + it.key() + "'");
  }
}

inline std::string need_string(const json& v, const std::string& path) {
  expect(v.is_string(), path, "expected a string");
  return v.get<std::string>();
}

inline std::map<std::string, std::string> string_map(const json& v, const std::string& path) {
  expect(v.is_object(), path, "expected an object");
  std::map<std::string, std::string> out;
  for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = need_string(it.value(), child(path, it.key()));
  return out;
}

inline CatPtr parse_category(const json& j, const std::string& path) {
  only_keys(j, {"objects", "morphisms", "identities", "compose"}, path);
  FinCatBuilder b;
  const auto& objs = need(j, "objects", path);
  expect(objs.is_array(), child(path, "objects"), "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    auto id = need_string(objs[i], child(child(path, "objects"), i));
    expect(!b.find_object(id), child(child(path, "objects"), i), "duplicate object '" + id + "'");
    b.add_object(id);
  }
  const auto mpath = child(path, "morphisms");
  if (j.contains("morphisms")) {
    const auto& ms = j["morphisms"];
    expect(ms.is_array(), mpath, "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto p = child(mpath, i);
      only_keys(ms[i], {"id", "src", "tgt"}, p);
      auto id = need_string(need(ms[i], "id", p), child(p, "id"));
      auto src = need_string(need(ms[i], "src", p), child(p, "src"));
      auto tgt = need_string(need(ms[i], "tgt", p), child(p, "tgt"));
      expect(!b.find_morphism(id), child(p, "id"), "duplicate morphism '" + id + "'");
      auto s = b.find_object(src);
      auto t = b.find_object(tgt);
      expect(s.has_value(), child(p, "src"), "undeclared object '" + src + "'");
      expect(t.has_value(), child(p, "tgt"), "undeclared object '" + tgt + "'");
      b.add_morphism(id, *s, *t);
    }
  }
  const auto ipath = child(path, "identities");
  std::map<std::string, std::string> ids;
  if (j.contains("identities")) ids = string_map(j["identities"], ipath);
  for (const auto& [o, m] : ids) {
    auto x = b.find_object(o);
    expect(x.has_value(), child(ipath, o), "undeclared object '" + o + "'");
    auto f = b.find_morphism(m);
    expect(f.has_value(), child(ipath, o), "undeclared morphism '" + m + "'");
    b.set_identity(*x, *f);
  }
  // omitted identities: reuse a declared "id:X", else synthesize one
  for (std::uint32_t i = 0; i < b.object_count(); ++i) {
    Ob x{i};
    if (b.identity(x)) continue;
    const auto name = identity_id(b.object_id(x));
    if (auto f = b.find_morphism(name)) {
      expect(b.src(*f) == x && b.tgt(*f) == x, ipath, "'" + name + "' is not an endomorphism of '" + b.object_id(x) + "'");
      b.set_identity(x, *f);
    } else {
      b.set_identity(x, b.add_morphism(name, x, x));
    }
  }
  const auto cpath = child(path, "compose");
  if (j.contains("compose")) {
    const auto& cs = j["compose"];
    expect(cs.is_array(), cpath, "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto p = child(cpath, i);
      expect(cs[i].is_array() && cs[i].size() == 3, p, "expected [g, f, g∘f]");
      std::array<Mor, 3> m{};
      for (std::size_t k = 0; k < 3; ++k) {
        auto id = need_string(cs[i][k], child(p, k));
        auto f = b.find_morphism(id);
        expect(f.has_value(), child(p, k), "undeclared morphism '" + id + "'");
        m[k] = *f;
      }
      expect(b.tgt(m[1]) == b.src(m[0]), p, "'" + b.morphism_id(m[0]) + "' and '" + b.morphism_id(m[1]) + "' are not composable");
      expect(!b.composite(m[0], m[1]), p, "duplicate composite");
      b.set_composite(m[0], m[1], m[2]);
    }
  }
  for (std::uint32_t i = 0; i < b.morphism_count(); ++i) {
    Mor f{i};
    const auto l = *b.identity(b.src(f));
    const auto r = *b.identity(b.tgt(f));
    if (!b.composite(f, l)) b.set_composite(f, l, f);
    if (!b.composite(r, f)) b.set_composite(r, f, f);
  }
  for (std::uint32_t fi = 0; fi < b.morphism_count(); ++fi)
    for (std::uint32_t gi = 0; gi < b.morphism_count(); ++gi) {
      Mor f{fi}, g{gi};
      if (b.tgt(f) == b.src(g) && !b.composite(g, f))
        throw SchemaError(cpath, "missing composite of '" + b.morphism_id(g) + "' after '" + b.morphism_id(f) + "'");
    }
  return share(std::move(b).build());
}

inline FunctorEntry parse_functor(const json& j, const std::string& path, const Workspace& ws) {
  only_keys(j, {"dom", "cod", "objects", "morphisms"}, path);
  FunctorEntry e;
  e.dom = need_string(need(j, "dom", path), child(path, "dom"));
  e.cod = need_string(need(j, "cod", path), child(path, "cod"));
  expect(ws.categories.count(e.dom) > 0, child(path, "dom"), "no category named '" + e.dom + "'");
  expect(ws.categories.count(e.cod) > 0, child(path, "cod"), "no category named '" + e.cod + "'");
  const auto& A = ws.categories.at(e.dom);
  const auto& B = ws.categories.at(e.cod);
  const auto opath = child(path, "objects");
  const auto mpath = child(path, "morphisms");
  auto omap = string_map(need(j, "objects", path), opath);
  std::map<std::string, std::string> mmap;
  if (j.contains("morphisms")) mmap = string_map(j["morphisms"], mpath);
  e.spec = {A, B, {}, {}};
  for (const auto& [k, v] : omap) expect(A->find_object(k).has_value(), child(opath, k), "undeclared object '" + k + "'");
  for (const auto& [k, v] : mmap) expect(A->find_morphism(k).has_value(), child(mpath, k), "undeclared morphism '" + k + "'");
  for (auto x : A->objects()) {
    auto it = omap.find(A->id(x));
    expect(it != omap.end(), opath, "missing entry for object '" + A->id(x) + "'");
    auto y = B->find_object(it->second);
    expect(y.has_value(), child(opath, it->first), "undeclared object '" + it->second + "'");
    e.spec.omap.push_back(*y);
  }
  for (auto m : A->morphisms()) {
    auto it = mmap.find(A->id(m));
    if (it == mmap.end()) {
      expect(A->is_identity(m), mpath, "missing entry for morphism '" + A->id(m) + "'");
      e.spec.mmap.push_back(B->identity(e.spec.omap[A->src(m).index]));
      continue;
    }
    auto n = B->find_morphism(it->second);
    expect(n.has_value(), child(mpath, it->first), "undeclared morphism '" + it->second + "'");
    e.spec.mmap.push_back(*n);
  }
  return e;
}

inline PresheafEntry parse_presheaf(const json& j, const std::string& path, const Workspace& ws) {
  only_keys(j, {"base", "variance", "sets", "actions"}, path);
  PresheafEntry e;
  e.base = need_string(need(j, "base", path), child(path, "base"));
  expect(ws.categories.count(e.base) > 0, child(path, "base"), "no category named '" + e.base + "'");
  const auto& C = ws.categories.at(e.base);
  Variance variance = Variance::contravariant;
  if (j.contains("variance")) {
    auto v = need_string(j["variance"], child(path, "variance"));
    expect(v == "contravariant" || v == "covariant", child(path, "variance"), "expected 'contravariant' or 'covariant'");
    variance = v == "covariant" ? Variance::covariant : Variance::contravariant;
  }
  e.functor = {C, variance, {}, {}};
  auto& W = e.functor;
  const auto spath = child(path, "sets");
  const auto& sets = need(j, "sets", path);
  expect(sets.is_object(), spath, "expected an object");
  for (auto it = sets.begin(); it != sets.end(); ++it)
    expect(C->find_object(it.key()).has_value(), child(spath, it.key()), "undeclared object '" + it.key() + "'");
  for (auto x : C->objects()) {
    auto it = sets.find(C->id(x));
    expect(it != sets.end(), spath, "missing element set for '" + C->id(x) + "'");
    const auto p = child(spath, C->id(x));
    expect(it->is_array(), p, "expected an array");
    std::vector<std::string> elts;
    for (std::size_t i = 0; i < it->size(); ++i) elts.push_back(need_string((*it)[i], child(p, i)));
    W.sets.push_back(std::move(elts));
  }
  const auto apath = child(path, "actions");
  json actions = j.contains("actions") ? j["actions"] : json::object();
  expect(actions.is_object(), apath, "expected an object");
  for (auto it = actions.begin(); it != actions.end(); ++it)
    expect(C->find_morphism(it.key()).has_value(), child(apath, it.key()), "undeclared morphism '" + it.key() + "'");
  for (auto f : C->morphisms()) {
    const auto& from = W.sets[W.action_source(f).index];
    const auto to = W.action_target(f);
    std::vector<std::size_t> a;
    auto it = actions.find(C->id(f));
    if (it == actions.end()) {
      expect(C->is_identity(f), apath, "missing action for morphism '" + C->id(f) + "'");
      for (std::size_t i = 0; i < from.size(); ++i) a.push_back(i);
    } else {
      const auto p = child(apath, C->id(f));
      auto table = string_map(*it, p);
      for (const auto& [k, v] : table)
        expect(std::find(from.begin(), from.end(), k) != from.end(), child(p, k), "'" + k + "' is not in the action's domain");
      for (const auto& x : from) {
        auto e2 = table.find(x);
        expect(e2 != table.end(), p, "missing value at '" + x + "'");
        auto y = W.find_element(to, e2->second);
        expect(y.has_value(), child(p, x), "'" + e2->second + "' is not in the action's codomain");
        a.push_back(*y);
      }
    }
    W.actions.push_back(std::move(a));
  }
  return e;
}

inline Lexicon parse_lexicon(const json& j, const std::string& path) {
  only_keys(j, {"convention", "entries"}, path);
  AdjointConvention conv = AdjointConvention::paper;
  if (j.contains("convention")) {
    auto c = need_string(j["convention"], child(path, "convention"));
    expect(c == "paper" || c == "lambek", child(path, "convention"), "expected 'paper' or 'lambek'");
    conv = c == "lambek" ? AdjointConvention::lambek : AdjointConvention::paper;
  }
  Lexicon lex(conv);
  const auto epath = child(path, "entries");
  const auto& es = need(j, "entries", path);
  expect(es.is_array(), epath, "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto p = child(epath, i);
    only_keys(es[i], {"phrase", "type"}, p);
    auto phrase = need_string(need(es[i], "phrase", p), child(p, "phrase"));
    auto type = need_string(need(es[i], "type", p), child(p, "type"));
    try {
      lex.add(tokenize(phrase), parse_type(type, conv));
    } catch (const SyntaxError& e) {
      throw SchemaError(child(p, "type"), e.what());
    } catch (const MalformedSpec& e) {
      throw SchemaError(child(p, "phrase"), e.what());
    }
  }
  return lex;
}

}  // namespace detail

// Schema and cross-reference checks only; see validate_workspace.
inline Workspace parse_workspace(const nlohmann::json& j) {
  using detail::child;
  using detail::expect;
  detail::only_keys(j, {"format", "categories", "functors", "presheaves", "lexicons", "corpora"}, "");
  expect(j.contains("format"), "", "missing key 'format'");
  expect(j["format"] == 1, "/format", "unsupported format (expected 1)");
  Workspace ws;
  auto section = [&](const char* key, auto&& fn) {
    if (!j.contains(key)) return;
    const auto& s = j[key];
    const auto path = child("", key);
    expect(s.is_object(), path, "expected an object");
    for (auto it = s.begin(); it != s.end(); ++it) fn(it.key(), it.value(), child(path, it.key()));
  };
  section("categories", [&](const std::string& name, const auto& v, const std::string& p) {
    ws.categories[name] = detail::parse_category(v, p);
  });
  section("functors", [&](const std::string& name, const auto& v, const std::string& p) {
    ws.functors[name] = detail::parse_functor(v, p, ws);
  });
  section("presheaves", [&](const std::string& name, const auto& v, const std::string& p) {
    ws.presheaves[name] = detail::parse_presheaf(v, p, ws);
  });
  section("lexicons", [&](const std::string& name, const auto& v, const std::string& p) {
    ws.lexicons[name] = detail::parse_lexicon(v, p);
  });
  section("corpora", [&](const std::string& name, const auto& v, const std::string& p) {
    expect(v.is_array(), p, "expected an array of sentences");
    std::vector<std::string> sentences;
    for (std::size_t i = 0; i < v.size(); ++i) sentences.push_back(detail::need_string(v[i], child(p, i)));
    ws.corpora[name] = std::move(sentences);
  });
  return ws;
}

// Every violation's witness starts with the JSON pointer of the definition.
inline ValidationReport validate_workspace(const Workspace& ws) {
  ValidationReport r;
  auto add_all = [&r](const ValidationReport& sub, const std::string& where, std::string_view skip_prefix) {
    for (const auto& v : sub.violations) {
      if (!skip_prefix.empty() && v.law.rfind(skip_prefix, 0) == 0) continue;
      std::vector<std::string> w{where};
      w.insert(w.end(), v.witness.begin(), v.witness.end());
      r.add(v.law, std::move(w));
    }
  };
  for (const auto& [name, c] : ws.categories) add_all(validate_category(*c), "/categories/" + detail::pointer_escape(name), "");
  for (const auto& [name, f] : ws.functors) {
    // category-level violations are already reported under /categories
    auto sub = validate_functor(f.spec);
    ValidationReport own;
    for (const auto& v : sub.violations)
      if (v.law.rfind("dom.", 0) != 0 && v.law.rfind("cod.", 0) != 0) own.violations.push_back(v);
    add_all(own, "/functors/" + detail::pointer_escape(name), "");
  }
  for (const auto& [name, p] : ws.presheaves)
    add_all(validate_set_functor(p.functor), "/presheaves/" + detail::pointer_escape(name), "base.");
  return r;
}

inline Workspace parse_workspace_text(const std::string& text, const std::string& source = "<input>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", source + ": " + e.what());
  }
  return parse_workspace(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses without validating; `load` is the checked entry point.
inline Workspace load_unvalidated(const std::string& path) { return parse_workspace_text(read_file(path), path); }

inline Workspace load(const std::string& path) {
  auto ws = load_unvalidated(path);
  if (auto r = validate_workspace(ws); !r.ok()) throw ValidationError(std::move(r));
  return ws;
}

inline nlohmann::json category_to_json(const FinCat& c) {
  using nlohmann::json;
  json objs = json::array();
  for (auto x : c.objects()) objs.push_back(c.id(x));
  auto default_identity = [&](Mor m) { return c.is_identity(m) && c.id(m) == identity_id(c.id(c.src(m))); };
  json ms = json::array();
  for (auto m : c.morphisms())
    if (!default_identity(m)) ms.push_back({{"id", c.id(m)}, {"src", c.id(c.src(m))}, {"tgt", c.id(c.tgt(m))}});
  json ids = json::object();
  for (auto x : c.objects())
    if (!default_identity(c.identity(x))) ids[c.id(x)] = c.id(c.identity(x));
  json cs = json::array();
  for (auto [g, f, gf] : c.composition_entries())
    if (!c.is_identity(g) && !c.is_identity(f)) cs.push_back({c.id(g), c.id(f), c.id(gf)});
  json out = {{"objects", objs}};
  if (!ms.empty()) out["morphisms"] = ms;
  if (!ids.empty()) out["identities"] = ids;
  if (!cs.empty()) out["compose"] = cs;
  return out;
}

inline nlohmann::json to_json(const Workspace& ws) {
  using nlohmann::json;
  json out = {{"format", 1}};
  if (!ws.categories.empty()) {
    json& s = out["categories"];
    for (const auto& [name, c] : ws.categories) s[name] = category_to_json(*c);
  }
  if (!ws.functors.empty()) {
    json& s = out["functors"];
    for (const auto& [name, f] : ws.functors) {
      const auto& A = *f.spec.dom;
      const auto& B = *f.spec.cod;
      json om = json::object(), mm = json::object();
      for (auto x : A.objects()) om[A.id(x)] = B.id(f.spec(x));
      for (auto m : A.morphisms())
        if (!A.is_identity(m)) mm[A.id(m)] = B.id(f.spec(m));
      s[name] = {{"dom", f.dom}, {"cod", f.cod}, {"objects", om}};
      if (!mm.empty()) s[name]["morphisms"] = mm;
    }
  }
  if (!ws.presheaves.empty()) {
    json& s = out["presheaves"];
    for (const auto& [name, p] : ws.presheaves) {
      const auto& W = p.functor;
      const auto& C = *W.base;
      json sets = json::object(), actions = json::object();
      for (auto x : C.objects()) sets[C.id(x)] = W.sets[x.index];
      for (auto f : C.morphisms()) {
        if (C.is_identity(f)) continue;
        json a = json::object();
        const auto& from = W.sets[W.action_source(f).index];
        const auto& to = W.sets[W.action_target(f).index];
        for (std::size_t i = 0; i < from.size(); ++i) a[from[i]] = to[W.act(f, i)];
        actions[C.id(f)] = a;
      }
      s[name] = {{"base", p.base},
                 {"variance", W.variance == Variance::covariant ? "covariant" : "contravariant"},
                 {"sets", sets}};
      if (!actions.empty()) s[name]["actions"] = actions;
    }
  }
  if (!ws.lexicons.empty()) {
    json& s = out["lexicons"];
    for (const auto& [name, lex] : ws.lexicons) {
      json es = json::array();
      for (const auto& e : lex.entries())
        es.push_back({{"phrase", join_tokens(e.phrase)}, {"type", format_type(e.type, lex.convention())}});
      s[name] = {{"convention", lex.convention() == AdjointConvention::lambek ? "lambek" : "paper"}, {"entries", es}};
    }
  }
  if (!ws.corpora.empty()) {
    json& s = out["corpora"];
    for (const auto& [name, c] : ws.corpora) s[name] = c;
  }
  return out;
}

inline std::string dump(const Workspace& ws) { return to_json(ws).dump(2) + "\n"; }

inline void save(const Workspace& ws, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << dump(ws);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace fiblang
