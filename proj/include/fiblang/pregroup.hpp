#pragma once

// Pregroup types, contraction-based reduction, lexicon-driven sentence
// parsing, and the corpus toy semantics: a presheaf over the finite
// fragment of the pregroup spanned by the parses, and its fibration of
// elements.

#include <cctype>
#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fiblang/error.hpp"
#include "fiblang/fib.hpp"
#include "fiblang/fincat.hpp"
#include "fiblang/groth.hpp"

namespace fiblang {

// How the surface markers ^l / ^r map to exponent deltas. Reduction always
// contracts (b, z)(b, z+1). Under `paper`, ^l is +1 so that n · n^l
// contracts; under `lambek`, ^l is -1 and n^l · n contracts.
enum class AdjointConvention { paper, lambek };

struct SimpleType {
  std::string base;
  int exponent = 0;
  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

struct PregroupType {
  std::vector<SimpleType> factors;  // empty = unit type 1
  friend auto operator<=>(const PregroupType&, const PregroupType&) = default;
};

inline PregroupType operator*(PregroupType a, const PregroupType& b) {
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  return a;
}

inline int adjoint_delta(char marker, AdjointConvention conv) {
  const int l = conv == AdjointConvention::paper ? +1 : -1;
  return marker == 'l' ? l : -l;
}

// Grammar: factor (('.' | whitespace) factor)*, factor = base ('^' [lr]+)?,
// base = letter (letter | digit | '_')*; the literal "1" is the unit.
inline PregroupType parse_type(std::string_view text, AdjointConvention conv = AdjointConvention::paper) {
  PregroupType out;
  std::size_t i = 0;
  const auto n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto column = [&] { return i + 1; };
  bool expect_factor = true;
  bool any = false;
  skip_ws();
  if (i == n) throw SyntaxError("empty pregroup type", 1);
  while (i < n) {
    const char c = text[i];
    if (c == '.') {
      if (expect_factor) throw SyntaxError("unexpected '.'", column());
      ++i;
      expect_factor = true;
      skip_ws();
      continue;
    }
    if (!expect_factor && !std::isspace(static_cast<unsigned char>(text[i - 1])))
      throw SyntaxError(std::string("unexpected '") + c + "'", column());
    if (c == '1' && (i + 1 == n || text[i + 1] == '.' || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      SimpleType t{std::string(text.substr(start, i - start)), 0};
      if (i < n && text[i] == '^') {
        ++i;
        if (i == n || (text[i] != 'l' && text[i] != 'r')) throw SyntaxError("expected 'l' or 'r' after '^'", column());
        while (i < n && (text[i] == 'l' || text[i] == 'r')) t.exponent += adjoint_delta(text[i++], conv);
        if (i < n && std::isalnum(static_cast<unsigned char>(text[i])))
          throw SyntaxError(std::string("unexpected '") + text[i] + "' in adjoint marker", column());
      }
      out.factors.push_back(std::move(t));
    } else {
      throw SyntaxError(std::string("unexpected '") + c + "'", column());
    }
    any = true;
    expect_factor = false;
    skip_ws();
  }
  if (expect_factor && any) throw SyntaxError("type ends with '.'", n + 1);
  return out;
}

inline std::string format_type(const PregroupType& t, AdjointConvention conv = AdjointConvention::paper) {
  if (t.factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i) s += '.';
    const auto& f = t.factors[i];
    s += f.base;
    if (f.exponent == 0) continue;
    const char up = conv == AdjointConvention::paper ? 'l' : 'r';
    const char down = conv == AdjointConvention::paper ? 'r' : 'l';
    s += '^';
    s.append(static_cast<std::size_t>(f.exponent > 0 ? f.exponent : -f.exponent), f.exponent > 0 ? up : down);
  }
  return s;
}

struct ContractionStep {
  std::size_t position;
  std::string cancelled_base;
  std::pair<int, int> cancelled_exponents;
};

struct ReductionWitness {
  PregroupType start;
  std::vector<ContractionStep> steps;
  PregroupType end;

  // Re-executes the steps, checking each removes an adjacent (b,z)(b,z+1).
  bool replay() const {
    auto cur = start.factors;
    for (const auto& s : steps) {
      if (s.position + 1 >= cur.size()) return false;
      const auto& a = cur[s.position];
      const auto& b = cur[s.position + 1];
      if (a.base != s.cancelled_base || b.base != s.cancelled_base) return false;
      if (a.exponent != s.cancelled_exponents.first || b.exponent != s.cancelled_exponents.second) return false;
      if (b.exponent != a.exponent + 1) return false;
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(s.position),
                cur.begin() + static_cast<std::ptrdiff_t>(s.position) + 2);
    }
    return cur == end.factors;
  }
};

inline bool contractible(const SimpleType& a, const SimpleType& b) {
  return a.base == b.base && b.exponent == a.exponent + 1;
}

namespace detail {

inline bool reduce_search(const std::vector<SimpleType>& cur, const std::vector<SimpleType>& target,
                          std::vector<ContractionStep>& steps, std::set<std::vector<SimpleType>>& dead) {
  if (cur == target) return true;
  if (cur.size() <= target.size() || (cur.size() - target.size()) % 2 != 0) return false;
  if (dead.count(cur)) return false;
  for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
    if (!contractible(cur[i], cur[i + 1])) continue;
    auto next = cur;
    next.erase(next.begin() + static_cast<std::ptrdiff_t>(i), next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    steps.push_back({i, cur[i].base, {cur[i].exponent, cur[i + 1].exponent}});
    if (reduce_search(next, target, steps, dead)) return true;
    steps.pop_back();
  }
  dead.insert(cur);
  return false;
}

}  // namespace detail

// Backtracking search over adjacent contractions, leftmost first. An empty
// optional means that no contraction sequence reaches `target`.
inline std::optional<ReductionWitness> reduce(const PregroupType& t, const PregroupType& target) {
  std::vector<ContractionStep> steps;
  std::set<std::vector<SimpleType>> dead;
  if (!detail::reduce_search(t.factors, target.factors, steps, dead)) return std::nullopt;
  return ReductionWitness{t, std::move(steps), target};
}

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::string join_tokens(const std::vector<std::string>& tokens, std::size_t begin = 0,
                               std::size_t end = std::string::npos) {
  end = std::min(end, tokens.size());
  std::string s;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) s += ' ';
    s += tokens[i];
  }
  return s;
}

struct LexEntry {
  std::vector<std::string> phrase;
  PregroupType type;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(AdjointConvention conv) : convention_(conv) {}

  // Throws MalformedSpec on an empty or duplicate phrase.
  void add(std::vector<std::string> phrase, PregroupType type) {
    if (phrase.empty()) throw MalformedSpec("lexicon: empty phrase");
    for (const auto& e : entries_)
      if (e.phrase == phrase) throw MalformedSpec("lexicon: duplicate phrase '" + join_tokens(phrase) + "'");
    entries_.push_back({std::move(phrase), std::move(type)});
  }
  void add(std::string_view phrase, std::string_view type) {
    add(tokenize(phrase), parse_type(type, convention_));
  }

  const std::vector<LexEntry>& entries() const noexcept { return entries_; }
  AdjointConvention convention() const noexcept { return convention_; }

  // Longest phrase matching tokens starting at `pos`.
  std::optional<std::size_t> longest_match(const std::vector<std::string>& tokens, std::size_t pos) const {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto& ph = entries_[k].phrase;
      if (pos + ph.size() > tokens.size()) continue;
      if (!std::equal(ph.begin(), ph.end(), tokens.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
      if (!best || ph.size() > entries_[*best].phrase.size()) best = k;
    }
    return best;
  }

 private:
  AdjointConvention convention_ = AdjointConvention::paper;
  std::vector<LexEntry> entries_;
};

struct Segment {
  std::size_t begin;  // first token
  std::size_t entry;  // lexicon entry
};

struct SentenceParse {
  std::vector<std::string> tokens;
  std::vector<Segment> segmentation;
  PregroupType types;  // concatenation of the segment types
  ReductionWitness witness;
};

enum class ParseFailureKind { unknown_phrase, no_reduction };

struct ParseFailure {
  ParseFailureKind kind;
  std::size_t token = 0;  // first unmatched token for unknown_phrase
  std::string message;
};

using ParseResult = std::variant<SentenceParse, ParseFailure>;

inline ParseResult parse_sentence(const std::vector<std::string>& tokens, const Lexicon& lex,
                                  const PregroupType& target) {
  SentenceParse out{tokens, {}, {}, {}};
  for (std::size_t pos = 0; pos < tokens.size();) {
    auto k = lex.longest_match(tokens, pos);
    if (!k) return ParseFailure{ParseFailureKind::unknown_phrase, pos, "no lexicon phrase at token '" + tokens[pos] + "'"};
    out.segmentation.push_back({pos, *k});
    out.types = out.types * lex.entries()[*k].type;
    pos += lex.entries()[*k].phrase.size();
  }
  auto w = reduce(out.types, target);
  if (!w)
    return ParseFailure{ParseFailureKind::no_reduction, 0,
                        "'" + format_type(out.types, lex.convention()) + "' does not reduce to '" +
                            format_type(target, lex.convention()) + "'"};
  out.witness = std::move(*w);
  return out;
}

struct SpeakerFibration {
  enum class Role { constituent, tensor, sentence };
  struct Reduction {
    Mor morphism;
    Ob domain;
    Ob sentence;
    std::vector<Ob> constituents;
  };

  CatPtr base;
  SetValuedFunctor presheaf;
  ElementsResult fibration;
  std::vector<std::string> sentences;  // distinct corpus sentences, in order
  std::vector<SentenceParse> parses;
  std::vector<Role> roles;             // per base object
  std::vector<std::vector<Ob>> tensor_factors;  // per base object; empty unless a tensor
  std::vector<Reduction> reductions;
};

inline bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
  if (phrase.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

// Base objects: the constituents "(phrase, type)" of every parse, the tensor
// of the constituents of each multi-segment sentence, and each sentence as
// "(sentence, target)". One reduction morphism per sentence from its tensor
// (or single constituent) to the sentence object. Meanings: a constituent
// means every corpus sentence containing its phrase, a sentence means
// itself, a tensor means the product of its factors; each reduction sends
// the sentence m to (m, ..., m).
inline SpeakerFibration build_semantics(const std::vector<std::vector<std::string>>& corpus, const Lexicon& lex,
                                        const PregroupType& target) {
  SpeakerFibration out;
  const auto conv = lex.convention();
  std::vector<std::vector<std::string>> token_lists;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto text = join_tokens(corpus[i]);
    if (std::find(out.sentences.begin(), out.sentences.end(), text) != out.sentences.end()) continue;
    auto r = parse_sentence(corpus[i], lex, target);
    if (auto* f = std::get_if<ParseFailure>(&r)) throw UnparsedSentence("sentence " + std::to_string(i) + ": " + f->message, i);
    out.sentences.push_back(std::move(text));
    token_lists.push_back(corpus[i]);
    out.parses.push_back(std::get<SentenceParse>(std::move(r)));
  }

  FinCatBuilder b;
  std::vector<std::vector<std::string>> phrase_of;  // constituent objects only
  auto intern = [&](const std::string& id, SpeakerFibration::Role role) {
    if (auto x = b.find_object(id)) {
      if (role == SpeakerFibration::Role::constituent) out.roles[x->index] = role;
      return *x;
    }
    auto x = b.add_object(id);
    b.set_identity(x, b.add_morphism(identity_id(id), x, x));
    out.roles.push_back(role);
    out.tensor_factors.emplace_back();
    phrase_of.emplace_back();
    return x;
  };

  struct Pending {
    Ob domain, sentence;
    std::vector<Ob> constituents;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < out.parses.size(); ++i) {
    const auto& parse = out.parses[i];
    std::vector<Ob> parts;
    std::vector<std::string> part_ids;
    for (const auto& seg : parse.segmentation) {
      const auto& e = lex.entries()[seg.entry];
      auto id = "(" + join_tokens(e.phrase) + ", " + format_type(e.type, conv) + ")";
      auto x = intern(id, SpeakerFibration::Role::constituent);
      phrase_of[x.index] = e.phrase;
      parts.push_back(x);
      part_ids.push_back(std::move(id));
    }
    Ob domain = parts.front();
    if (parts.size() > 1) {
      std::string id;
      for (std::size_t k = 0; k < part_ids.size(); ++k) id += (k ? " ⊗ " : "") + part_ids[k];
      domain = intern(id, SpeakerFibration::Role::tensor);
      out.tensor_factors[domain.index] = parts;
    }
    auto sentence = intern("(" + out.sentences[i] + ", " + format_type(target, conv) + ")", SpeakerFibration::Role::sentence);
    pending.push_back({domain, sentence, parts});
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& p = pending[i];
    if (p.domain == p.sentence) continue;  // the sentence is a single phrase already of the target type
    auto m = b.add_morphism("red:" + out.sentences[i], p.domain, p.sentence);
    out.reductions.push_back({m, p.domain, p.sentence, p.constituents});
  }
  // Reductions never chain: a sentence object is never the domain of a
  // non-identity reduction, so only unit-law composites exist.
  for (std::uint32_t mi = 0; mi < b.morphism_count(); ++mi) {
    Mor m{mi};
    b.set_composite(m, *b.identity(b.src(m)), m);
    b.set_composite(*b.identity(b.tgt(m)), m, m);
  }
  out.base = share(std::move(b).build());
  const FinCat& L = *out.base;

  SetValuedFunctor W{out.base, Variance::contravariant, std::vector<std::vector<std::string>>(L.object_count()), {}};
  for (auto x : L.objects()) {
    if (out.roles[x.index] == SpeakerFibration::Role::constituent) {
      for (std::size_t s = 0; s < out.sentences.size(); ++s)
        if (contains_phrase(token_lists[s], phrase_of[x.index])) W.sets[x.index].push_back(out.sentences[s]);
    } else if (out.roles[x.index] == SpeakerFibration::Role::sentence) {
      // sentence objects are named "(text, type)"
      for (const auto& s : out.sentences)
        if (L.id(x) == "(" + s + ", " + format_type(target, conv) + ")") W.sets[x.index].push_back(s);
    }
  }
  // tensors: lexicographic product of factor sets, first factor major
  std::vector<std::vector<std::vector<std::size_t>>> tuples(L.object_count());
  for (auto x : L.objects()) {
    if (out.roles[x.index] != SpeakerFibration::Role::tensor) continue;
    std::vector<std::vector<std::size_t>> acc{{}};
    for (auto f : out.tensor_factors[x.index]) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& t : acc)
        for (std::size_t e = 0; e < W.sets[f.index].size(); ++e) {
          auto u = t;
          u.push_back(e);
          next.push_back(std::move(u));
        }
      acc = std::move(next);
    }
    for (const auto& t : acc) {
      std::string id = "(";
      for (std::size_t k = 0; k < t.size(); ++k)
        id += (k ? "|" : "") + W.sets[out.tensor_factors[x.index][k].index][t[k]];
      W.sets[x.index].push_back(id + ")");
    }
    tuples[x.index] = std::move(acc);
  }

  W.actions.resize(L.morphism_count());
  for (auto x : L.objects()) {
    auto& a = W.actions[L.identity(x).index];
    for (std::size_t i = 0; i < W.sets[x.index].size(); ++i) a.push_back(i);
  }
  for (const auto& r : out.reductions) {
    auto& a = W.actions[r.morphism.index];
    for (const auto& m : W.sets[r.sentence.index]) {
      if (out.roles[r.domain.index] == SpeakerFibration::Role::tensor) {
        std::vector<std::size_t> diag;
        for (auto f : out.tensor_factors[r.domain.index]) diag.push_back(*W.find_element(f, m));
        const auto& ts = tuples[r.domain.index];
        a.push_back(static_cast<std::size_t>(std::find(ts.begin(), ts.end(), diag) - ts.begin()));
      } else {
        a.push_back(*W.find_element(r.domain, m));
      }
    }
  }
  out.presheaf = std::move(W);
  out.fibration = elements(out.presheaf);
  return out;
}

inline SpeakerFibration build_semantics(const std::vector<std::string>& corpus, const Lexicon& lex,
                                        const PregroupType& target) {
  std::vector<std::vector<std::string>> tokens;
  for (const auto& s : corpus) tokens.push_back(tokenize(s));
  return build_semantics(tokens, lex, target);
}

// W(x1 ⊗ ... ⊗ xk) = W(x1) × ... × W(xk), as cardinality and as the
// canonical tuple encoding, for every tensor object.
inline ValidationReport check_strict_monoidality(const SpeakerFibration& sp) {
  ValidationReport r;
  const auto& W = sp.presheaf;
  const FinCat& L = *sp.base;
  for (auto x : L.objects()) {
    if (sp.roles[x.index] != SpeakerFibration::Role::tensor) continue;
    std::vector<std::string> expected{""};
    for (auto f : sp.tensor_factors[x.index]) {
      std::vector<std::string> next;
      for (const auto& prefix : expected)
        for (const auto& e : W.sets[f.index]) next.push_back(prefix.empty() ? e : prefix + "|" + e);
      expected = std::move(next);
    }
    std::size_t card = 1;
    for (auto f : sp.tensor_factors[x.index]) card *= W.sets[f.index].size();
    if (W.sets[x.index].size() != card) {
      r.add("tensor-cardinality", {L.id(x), std::to_string(W.sets[x.index].size()), std::to_string(card)});
      continue;
    }
    for (std::size_t i = 0; i < card; ++i)
      if (W.sets[x.index][i] != "(" + expected[i] + ")") {
        r.add("tensor-encoding", {L.id(x), W.sets[x.index][i]});
        break;
      }
  }
  return r;
}

}  // namespace fiblang
