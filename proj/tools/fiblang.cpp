// fiblang: command-line front end over the fiblang library.
//
// Exit status: 0 when the command succeeds or the check holds, 1 when a
// check fails (the report says why), 2 on usage, IO or schema errors.
// Reports are "KEY: value" lines on stdout.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiblang/fiblang.hpp"

namespace {

using namespace fiblang;

struct Fail {
  int code;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

void print_report(std::ostream& out, const ValidationReport& r) {
  for (const auto& v : r.violations) out << "VIOLATION: " << v.law << (v.witness.empty() ? "" : " ") << join(v.witness) << "\n";
}

Workspace open_workspace(const std::string& path) {
  try {
    return load(path);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    print_report(std::cerr, e.report());
    throw Fail{2};
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw Fail{2};
  }
}

const FunctorEntry& functor_named(const Workspace& ws, const std::string& name) {
  try {
    return ws.functor(name);
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw Fail{2};
  }
}

void write_or_print(const Workspace& ws, const std::string& out_path, bool as_json) {
  if (!out_path.empty()) {
    save(ws, out_path);
    std::cout << "WROTE: " << out_path << "\n";
  }
  if (as_json) std::cout << dump(ws);
}

void print_category(const FinCat& c) {
  std::cout << "OBJECTS: " << c.object_count() << "\n";
  std::cout << "MORPHISMS: " << c.morphism_count() << "\n";
  for (auto x : c.objects()) std::cout << "OBJECT: " << c.id(x) << "\n";
  for (auto m : c.morphisms())
    std::cout << "MORPHISM: " << c.id(m) << ": " << c.id(c.src(m)) << " -> " << c.id(c.tgt(m)) << "\n";
}

int cmd_validate(const std::string& path) {
  Workspace ws;
  try {
    ws = load_unvalidated(path);
  } catch (const SchemaError& e) {
    std::cout << "FAIL: schema\nSCHEMA-ERROR: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto r = validate_workspace(ws);
  if (!r.ok()) {
    std::cout << "FAIL: " << r.violations.size() << " violations\n";
    print_report(std::cout, r);
    return 1;
  }
  std::cout << "CATEGORIES: " << ws.categories.size() << "\n"
            << "FUNCTORS: " << ws.functors.size() << "\n"
            << "PRESHEAVES: " << ws.presheaves.size() << "\n"
            << "LEXICONS: " << ws.lexicons.size() << "\n"
            << "CORPORA: " << ws.corpora.size() << "\n"
            << "OK: valid workspace\n";
  return 0;
}

int cmd_fibres(const std::string& path, const std::string& name, const std::string& object) {
  auto ws = open_workspace(path);
  const auto& p = functor_named(ws, name).spec;
  for (auto c : p.cod->objects()) {
    if (!object.empty() && p.cod->id(c) != object) continue;
    std::vector<std::string> ids;
    for (auto e : fibre(p, c).elements) ids.push_back(p.dom->id(e));
    std::cout << p.cod->id(c) << ": " << join(ids) << "\n";
  }
  if (!object.empty() && !p.cod->find_object(object)) {
    std::cerr << "error: no object '" << object << "' in the base\n";
    return 2;
  }
  return 0;
}

int cmd_reindex(const std::string& path, const std::string& name, const std::string& morphism) {
  auto ws = open_workspace(path);
  const auto& p = functor_named(ws, name).spec;
  if (!p.cod->find_morphism(morphism)) {
    std::cerr << "error: no morphism '" << morphism << "' in the base\n";
    return 2;
  }
  try {
    auto r = reindex(p, morphism);
    for (auto [x, y] : r.table) std::cout << p.dom->id(x) << " -> " << p.dom->id(y) << "\n";
  } catch (const NotDiscreteFibration&) {
    std::cout << "FAIL: not a discrete fibration\n";
    print_report(std::cout, is_discrete_fibration(p));
    return 1;
  }
  return 0;
}

int cmd_check_fib(const std::string& path, const std::string& name, bool cloven, bool op) {
  auto ws = open_workspace(path);
  const auto& p = functor_named(ws, name).spec;
  const std::string kind = std::string(cloven ? "" : "discrete ") + (op ? "opfibration" : "fibration");
  if (!cloven) {
    auto r = op ? is_discrete_opfibration(p) : is_discrete_fibration(p);
    if (!r.ok()) {
      std::cout << "FAIL: not a " << kind << "\n";
      print_report(std::cout, r);
      return 1;
    }
    std::cout << "OK: " << kind << "\n";
    return 0;
  }
  auto r = op ? is_opfibration(p) : is_fibration(p);
  if (!r.ok) {
    std::cout << "FAIL: not " << (op ? "an " : "a ") << kind << "\n";
    print_report(std::cout, r.violations);
    return 1;
  }
  std::cout << "OK: " << kind << "\n";
  for (const auto& c : r.cleavage)
    std::cout << "CLEAVAGE: " << p.dom->id(c.target) << ", " << p.cod->id(c.over) << " -> " << p.dom->id(c.lift) << "\n";
  return 0;
}

int cmd_elements(const std::string& path, const std::string& name, const std::string& out, bool as_json) {
  auto ws = open_workspace(path);
  const PresheafEntry* entry;
  try {
    entry = &ws.presheaf(name);
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto el = elements(entry->functor);
  if (!as_json) print_category(*el.total);
  Workspace res;
  res.categories[entry->base] = entry->functor.base;
  res.categories["el(" + name + ")"] = el.total;
  res.functors["p(" + name + ")"] = {"el(" + name + ")", entry->base, el.projection};
  write_or_print(res, out, as_json);
  return 0;
}

int cmd_straighten(const std::string& path, const std::string& name, const std::string& out, bool as_json) {
  auto ws = open_workspace(path);
  const auto& f = functor_named(ws, name);
  SetValuedFunctor W;
  try {
    W = straighten(f.spec);
  } catch (const NotDiscreteFibration&) {
    std::cout << "FAIL: not a discrete fibration\n";
    print_report(std::cout, is_discrete_fibration(f.spec));
    return 1;
  }
  const auto& B = *W.base;
  if (!as_json) {
    for (auto c : B.objects()) std::cout << "SET " << B.id(c) << ": " << join(W.sets[c.index]) << "\n";
    for (auto u : B.morphisms()) {
      std::vector<std::string> pairs;
      const auto& from = W.sets[W.action_source(u).index];
      const auto& to = W.sets[W.action_target(u).index];
      for (std::size_t i = 0; i < from.size(); ++i) pairs.push_back(from[i] + " -> " + to[W.act(u, i)]);
      std::cout << "ACTION " << B.id(u) << ": " << join(pairs) << "\n";
    }
  }
  Workspace res;
  res.categories[f.cod] = f.spec.cod;
  res.presheaves["st(" + name + ")"] = {f.cod, W};
  write_or_print(res, out, as_json);
  return 0;
}

int cmd_roundtrip(const std::string& path, const std::string& name) {
  auto ws = open_workspace(path);
  try {
    if (ws.presheaves.count(name)) {
      const auto& W = ws.presheaves.at(name).functor;
      if (W.variance != Variance::contravariant) {
        std::cout << "FAIL: roundtrip expects a contravariant presheaf\n";
        return 1;
      }
      auto iso = roundtrip_presheaf(W);
      std::cout << "CHECKED: " << (iso.checked ? "true" : "false") << "\nOK: presheaf roundtrip\n";
      return 0;
    }
    const auto& p = functor_named(ws, name).spec;
    if (!is_discrete_fibration(p).ok()) {
      std::cout << "FAIL: not a discrete fibration\n";
      print_report(std::cout, is_discrete_fibration(p));
      return 1;
    }
    auto iso = roundtrip_fibration(p);
    std::cout << "CHECKED: " << (iso.checked ? "true" : "false") << "\nOK: fibration roundtrip\n";
    return 0;
  } catch (const WitnessFailure& e) {
    std::cout << "FAIL: " << e.what() << "\n";
    return 1;
  }
}

int cmd_factorize(const std::string& path, const std::string& name, bool fib, const std::string& out, bool as_json) {
  auto ws = open_workspace(path);
  const auto& f = functor_named(ws, name);
  Factorization fz;
  try {
    fz = fib ? comprehensive_factor_fib(f.spec) : comprehensive_factor_opfib(f.spec);
  } catch (const Error& e) {
    std::cout << "FAIL: " << e.what() << "\n";
    return 1;
  }
  const auto& C = *f.spec.dom;
  const auto& D = *f.spec.cod;
  if (!as_json) {
    std::cout << "VARIANT: " << (fib ? "fibration" : "opfibration") << "\n";
    std::cout << "MID-OBJECTS: " << fz.mid->object_count() << "\n";
    std::cout << "MID-MORPHISMS: " << fz.mid->morphism_count() << "\n";
    for (auto d : D.objects()) std::cout << "K " << D.id(d) << ": " << join(fz.k.sets[d.index]) << "\n";
    for (auto c : C.objects()) std::cout << "S " << C.id(c) << " -> " << fz.mid->id(fz.s(c)) << "\n";
    std::cout << "OK: comprehensive factorization\n";
  }
  Workspace res;
  res.categories[f.dom] = f.spec.dom;
  res.categories[f.cod] = f.spec.cod;
  const auto mid = "mid(" + name + ")";
  res.categories[mid] = fz.mid;
  res.functors["s(" + name + ")"] = {f.dom, mid, fz.s};
  res.functors["p(" + name + ")"] = {mid, f.cod, fz.p};
  write_or_print(res, out, as_json);
  return 0;
}

int cmd_check_initial(const std::string& path, const std::string& name, bool final) {
  auto ws = open_workspace(path);
  const auto& s = functor_named(ws, name).spec;
  auto r = final ? is_final(s) : is_initial(s);
  const char* kind = final ? "final" : "initial";
  if (!r.ok()) {
    std::cout << "FAIL: not " << kind << "\n";
    print_report(std::cout, r);
    return 1;
  }
  std::cout << "OK: " << kind << "\n";
  return 0;
}

int cmd_span(const std::string& path, const std::string& fname, const std::string& gname, bool is_comma,
             const std::string& out, bool as_json) {
  auto ws = open_workspace(path);
  const auto& F = functor_named(ws, fname);
  const auto& G = functor_named(ws, gname);
  SpanResult r;
  try {
    r = is_comma ? comma(F.spec, G.spec) : pullback(F.spec, G.spec);
  } catch (const CodMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!as_json) print_category(*r.cat);
  const auto cat = std::string(is_comma ? "comma(" : "pullback(") + fname + "," + gname + ")";
  Workspace res;
  res.categories[F.dom] = F.spec.dom;
  res.categories[G.dom] = G.spec.dom;
  res.categories[cat] = r.cat;
  res.functors["projA(" + cat + ")"] = {cat, F.dom, r.proj_a};
  res.functors["projB(" + cat + ")"] = {cat, G.dom, r.proj_b};
  write_or_print(res, out, as_json);
  return 0;
}

int cmd_mcg(const std::vector<std::string>& names, const std::string& out, bool as_json) {
  auto c = share(mcg(names));
  if (!as_json) print_category(*c);
  Workspace res;
  res.categories["mcg"] = c;
  write_or_print(res, out, as_json);
  return 0;
}

int cmd_classify_mcg(const std::string& path, const std::string& name) {
  auto ws = open_workspace(path);
  const auto& p = functor_named(ws, name).spec;
  try {
    auto cls = classify_over_mcg(p);
    std::cout << "FIBRE-SET: " << join(cls.fibre_set) << "\n";
    for (auto e : p.dom->objects()) std::cout << "H " << p.dom->id(e) << " -> " << cls.product->id(cls.iso(e)) << "\n";
    std::cout << "OK: product projection\n";
    return 0;
  } catch (const NotDiscreteFibration& e) {
    std::cout << "FAIL: not a discrete fibration\n";
  } catch (const NotOverMCG& e) {
    std::cout << "FAIL: base is not a maximally connected groupoid\n";
  } catch (const Error& e) {
    std::cout << "FAIL: " << e.what() << "\n";
  }
  return 1;
}

// Loads a workspace holding lexicons, optionally forcing every lexicon's
// adjoint convention before the types are parsed.
Workspace open_lexicon_file(const std::string& path, const std::string& convention) {
  try {
    auto j = nlohmann::json::parse(read_file(path));
    if (!convention.empty() && j.is_object() && j.contains("lexicons") && j["lexicons"].is_object())
      for (auto& [k, v] : j["lexicons"].items())
        if (v.is_object()) v["convention"] = convention;
    auto ws = parse_workspace(j);
    if (auto r = validate_workspace(ws); !r.ok()) throw ValidationError(r);
    return ws;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  throw Fail{2};
}

const Lexicon& pick_lexicon(const Workspace& ws, const std::string& name) {
  if (name.empty()) {
    if (ws.lexicons.size() == 1) return ws.lexicons.begin()->second;
    std::cerr << "error: the file holds " << ws.lexicons.size() << " lexicons; choose one with --lexicon-name\n";
    throw Fail{2};
  }
  try {
    return ws.lexicon(name);
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw Fail{2};
  }
}

PregroupType parse_target(const std::string& text, AdjointConvention conv) {
  try {
    return parse_type(text, conv);
  } catch (const SyntaxError& e) {
    std::cerr << "error: --target: " << e.what() << "\n";
    throw Fail{2};
  }
}

int cmd_parse(const std::string& lexfile, const std::string& lexname, const std::string& target_text,
              const std::string& convention, const std::string& sentence) {
  auto ws = open_lexicon_file(lexfile, convention);
  const auto& lex = pick_lexicon(ws, lexname);
  const auto conv = lex.convention();
  const auto target = parse_target(target_text, conv);
  const auto tokens = tokenize(sentence);
  auto r = parse_sentence(tokens, lex, target);
  if (auto* f = std::get_if<ParseFailure>(&r)) {
    if (f->kind == ParseFailureKind::unknown_phrase)
      std::cout << "FAIL: unknown phrase\nTOKEN: " << f->token << "\n";
    else
      std::cout << "FAIL: no reduction\n";
    std::cout << "REASON: " << f->message << "\n";
    return 1;
  }
  const auto& ok = std::get<SentenceParse>(r);
  for (const auto& seg : ok.segmentation) {
    const auto& e = lex.entries()[seg.entry];
    std::cout << "SEGMENT: " << join_tokens(e.phrase) << " : " << format_type(e.type, conv) << "\n";
  }
  std::cout << "TYPE: " << format_type(ok.types, conv) << "\n";
  for (const auto& s : ok.witness.steps)
    std::cout << "STEP: " << s.position << " " << s.cancelled_base << " (" << s.cancelled_exponents.first << ", "
              << s.cancelled_exponents.second << ")\n";
  std::cout << "STEPS: " << ok.witness.steps.size() << "\n";
  std::cout << "RESULT: " << format_type(ok.witness.end, conv) << "\n";
  std::cout << "OK: reduces to " << format_type(target, conv) << "\n";
  return 0;
}

int cmd_semantics(const std::string& path, const std::string& lexname, const std::string& corpus_name,
                  const std::string& target_text, const std::string& convention, const std::string& out,
                  bool as_json) {
  auto ws = open_lexicon_file(path, convention);
  const auto& lex = pick_lexicon(ws, lexname);
  std::vector<std::string> corpus;
  if (corpus_name.empty() && ws.corpora.size() == 1) {
    corpus = ws.corpora.begin()->second;
  } else {
    try {
      corpus = ws.corpus(corpus_name);
    } catch (const UnknownName& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  const auto target = parse_target(target_text, lex.convention());
  SpeakerFibration sp;
  try {
    sp = build_semantics(corpus, lex, target);
  } catch (const UnparsedSentence& e) {
    std::cout << "FAIL: unparsed sentence\nINDEX: " << e.index() << "\nREASON: " << e.what() << "\n";
    return 1;
  }
  const auto& L = *sp.base;
  const auto& W = sp.presheaf;
  if (!as_json) {
    for (auto x : L.objects()) std::cout << "FIBRE " << L.id(x) << ": " << W.sets[x.index].size() << "\n";
    for (const auto& red : sp.reductions) {
      auto r = reindex(sp.fibration.projection, red.morphism);
      for (auto [m, pair] : r.table)
        std::cout << "REINDEX " << L.id(red.morphism) << ": " << sp.fibration.total->id(m) << " -> "
                  << sp.fibration.total->id(pair) << "\n";
    }
  }
  auto df = is_discrete_fibration(sp.fibration.projection);
  auto mono = check_strict_monoidality(sp);
  if (!as_json) {
    std::cout << (df.ok() ? "OK: discrete fibration\n" : "FAIL: not a discrete fibration\n");
    std::cout << (mono.ok() ? "OK: strict monoidal\n" : "FAIL: not strict monoidal\n");
    print_report(std::cout, df);
    print_report(std::cout, mono);
  }
  Workspace res;
  res.categories["L"] = sp.base;
  res.presheaves["W"] = {"L", W};
  write_or_print(res, out, as_json);
  return df.ok() && mono.ok() ? 0 : 1;
}

int cmd_dot(const std::string& path, const std::string& name, const std::string& out) {
  auto ws = open_workspace(path);
  std::string text;
  try {
    text = dot_export(ws, name);
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return 2;
  }
  std::cout << "WROTE: " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fiblang: finite categories, discrete fibrations and pregroup semantics"};
  app.require_subcommand(1);

  std::string file, name, name2, object, morphism, out, target = "s", convention, lexname, corpus, sentence;
  std::vector<std::string> names;
  bool as_json = false, discrete = false, cloven = false, op = false, fib = false, opfib = false;

  auto outputs = [&](CLI::App* c) {
    c->add_option("--out", out, "write the result as a workspace file");
    c->add_flag("--json", as_json, "print the result as workspace JSON");
  };

  auto* validate = app.add_subcommand("validate", "check a workspace file");
  validate->add_option("file", file)->required();

  auto* fibres = app.add_subcommand("fibres", "list the fibres of a functor");
  fibres->add_option("file", file)->required();
  fibres->add_option("functor", name)->required();
  fibres->add_option("object", object, "only this base object");

  auto* reindex_cmd = app.add_subcommand("reindex", "reindexing along a base morphism");
  reindex_cmd->add_option("file", file)->required();
  reindex_cmd->add_option("functor", name)->required();
  reindex_cmd->add_option("morphism", morphism)->required();

  auto* check_fib = app.add_subcommand("check-fib", "check a (discrete or cloven) fibration");
  check_fib->add_option("file", file)->required();
  check_fib->add_option("functor", name)->required();
  auto* d_flag = check_fib->add_flag("--discrete", discrete, "discrete fibration (default)");
  check_fib->add_flag("--cloven", cloven, "fibration with cartesian lifts")->excludes(d_flag);
  check_fib->add_flag("--op", op, "check the dual notion");

  auto* elements_cmd = app.add_subcommand("elements", "category of elements of a presheaf");
  elements_cmd->add_option("file", file)->required();
  elements_cmd->add_option("presheaf", name)->required();
  outputs(elements_cmd);

  auto* straighten_cmd = app.add_subcommand("straighten", "presheaf of fibres of a discrete fibration");
  straighten_cmd->add_option("file", file)->required();
  straighten_cmd->add_option("functor", name)->required();
  outputs(straighten_cmd);

  auto* roundtrip = app.add_subcommand("roundtrip", "check a Grothendieck roundtrip (presheaf or fibration)");
  roundtrip->add_option("file", file)->required();
  roundtrip->add_option("name", name)->required();

  auto* factorize = app.add_subcommand("factorize", "comprehensive factorization of a functor");
  factorize->add_option("file", file)->required();
  factorize->add_option("functor", name)->required();
  auto* fib_flag = factorize->add_flag("--fib", fib, "final functor then discrete fibration");
  factorize->add_flag("--opfib", opfib, "initial functor then discrete opfibration (default)")->excludes(fib_flag);
  outputs(factorize);

  auto* check_initial = app.add_subcommand("check-initial", "is the functor initial");
  check_initial->add_option("file", file)->required();
  check_initial->add_option("functor", name)->required();
  auto* check_final = app.add_subcommand("check-final", "is the functor final");
  check_final->add_option("file", file)->required();
  check_final->add_option("functor", name)->required();

  auto* comma_cmd = app.add_subcommand("comma", "comma category F/G");
  auto* pullback_cmd = app.add_subcommand("pullback", "strict pullback of F and G");
  for (auto* c : {comma_cmd, pullback_cmd}) {
    c->add_option("file", file)->required();
    c->add_option("F", name)->required();
    c->add_option("G", name2)->required();
    outputs(c);
  }

  auto* mcg_cmd = app.add_subcommand("mcg", "maximally connected groupoid on the given names");
  mcg_cmd->add_option("names", names);
  outputs(mcg_cmd);

  auto* classify = app.add_subcommand("classify-mcg", "classify a discrete fibration over an MCG");
  classify->add_option("file", file)->required();
  classify->add_option("functor", name)->required();

  auto* parse = app.add_subcommand("parse", "parse a sentence with a pregroup lexicon");
  parse->add_option("--lexicon", file, "workspace file holding the lexicon")->required();
  parse->add_option("--lexicon-name", lexname);
  parse->add_option("--target", target, "target type")->capture_default_str();
  parse->add_option("--convention", convention)->check(CLI::IsMember({"paper", "lambek"}));
  parse->add_option("sentence", sentence)->required();

  auto* semantics = app.add_subcommand("semantics", "toy semantics of a corpus");
  semantics->add_option("file", file)->required();
  semantics->add_option("--lexicon-name", lexname);
  semantics->add_option("--corpus", corpus);
  semantics->add_option("--target", target)->capture_default_str();
  semantics->add_option("--convention", convention)->check(CLI::IsMember({"paper", "lambek"}));
  outputs(semantics);

  auto* dot = app.add_subcommand("dot", "Graphviz DOT for a category, functor or presheaf");
  dot->add_option("file", file)->required();
  dot->add_option("name", name)->required();
  dot->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (fibres->parsed()) return cmd_fibres(file, name, object);
    if (reindex_cmd->parsed()) return cmd_reindex(file, name, morphism);
    if (check_fib->parsed()) return cmd_check_fib(file, name, cloven, op);
    if (elements_cmd->parsed()) return cmd_elements(file, name, out, as_json);
    if (straighten_cmd->parsed()) return cmd_straighten(file, name, out, as_json);
    if (roundtrip->parsed()) return cmd_roundtrip(file, name);
    if (factorize->parsed()) return cmd_factorize(file, name, fib, out, as_json);
    if (check_initial->parsed()) return cmd_check_initial(file, name, false);
    if (check_final->parsed()) return cmd_check_initial(file, name, true);
    if (comma_cmd->parsed()) return cmd_span(file, name, name2, true, out, as_json);
    if (pullback_cmd->parsed()) return cmd_span(file, name, name2, false, out, as_json);
    if (mcg_cmd->parsed()) return cmd_mcg(names, out, as_json);
    if (classify->parsed()) return cmd_classify_mcg(file, name);
    if (parse->parsed()) return cmd_parse(file, lexname, target, convention, sentence);
    if (semantics->parsed()) return cmd_semantics(file, lexname, corpus, target, convention, out, as_json);
    if (dot->parsed()) return cmd_dot(file, name, out);
  } catch (const Fail& f) {
    return f.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
