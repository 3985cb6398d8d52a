#pragma once

// Graphviz output. Categories draw one node per object and one edge per
// non-identity morphism. Fibrations draw each fibre as a cluster above a
// row of base nodes, with reindexing edges between fibre elements.

#include <set>
#include <sstream>
#include <string>

#include "fiblang/fib.hpp"
#include "fiblang/fincat.hpp"
#include "fiblang/groth.hpp"
#include "fiblang/workspace.hpp"

namespace fiblang {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

inline std::string dot_category(const FinCat& c, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n";
  for (auto x : c.objects()) out << "  " << dot_quote(c.id(x)) << ";\n";
  for (auto m : c.morphisms()) {
    if (c.is_identity(m)) continue;
    out << "  " << dot_quote(c.id(c.src(m))) << " -> " << dot_quote(c.id(c.tgt(m)))
        << " [label=" << dot_quote(c.id(m)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

// Vertical morphisms are solid edges inside a cluster; a non-identity lift
// h: X' -> X over u is drawn as a dashed edge X -> X' labelled "u*".
inline std::string dot_fibration(const FunctorSpec& p, const std::string& name) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  auto total_node = [&](Ob e) { return dot_quote("e:" + E.id(e)); };
  auto base_node = [&](Ob b) { return dot_quote("b:" + B.id(b)); };
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n";
  out << "  rankdir=BT;\n  compound=true;\n";
  std::size_t k = 0;
  for (auto b : B.objects()) {
    const auto fb = fibre(p, b);
    out << "  subgraph " << dot_quote("cluster_" + std::to_string(k++)) << " {\n";
    out << "    label=" << dot_quote(B.id(b)) << ";\n";
    for (auto e : fb.elements) out << "    " << total_node(e) << " [label=" << dot_quote(E.id(e)) << "];\n";
    for (auto h : fb.vertical)
      if (!E.is_identity(h))
        out << "    " << total_node(E.src(h)) << " -> " << total_node(E.tgt(h)) << " [label=" << dot_quote(E.id(h))
            << "];\n";
    out << "  }\n";
  }
  for (auto b : B.objects()) out << "  " << base_node(b) << " [label=" << dot_quote(B.id(b)) << ", shape=plaintext];\n";
  for (auto u : B.morphisms()) {
    if (B.is_identity(u)) continue;
    out << "  " << base_node(B.src(u)) << " -> " << base_node(B.tgt(u)) << " [label=" << dot_quote(B.id(u)) << "];\n";
  }
  for (auto h : E.morphisms()) {
    const auto u = p(h);
    if (B.is_identity(u)) continue;
    out << "  " << total_node(E.tgt(h)) << " -> " << total_node(E.src(h)) << " [label=" << dot_quote(B.id(u) + "*")
        << ", style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

// Categories render as diagrams, functors and presheaves as fibrations (a
// presheaf through its category of elements).
inline std::string dot_export(const Workspace& ws, const std::string& name) {
  if (auto it = ws.categories.find(name); it != ws.categories.end()) return dot_category(*it->second, name);
  if (auto it = ws.functors.find(name); it != ws.functors.end()) return dot_fibration(it->second.spec, name);
  if (auto it = ws.presheaves.find(name); it != ws.presheaves.end())
    return dot_fibration(elements(it->second.functor).projection, name);
  throw UnknownName("no category, functor or presheaf named '" + name + "'");
}

}  // namespace fiblang
