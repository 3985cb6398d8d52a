#pragma once

#include <string>

#include "fiblang/fiblang.hpp"

#ifndef FIBLANG_FIXTURE_DIR
#error "FIBLANG_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace fiblang::testing {

inline std::string fixture_path(const std::string& name) { return std::string(FIBLANG_FIXTURE_DIR) + "/" + name; }

inline Workspace fixture(const std::string& name) { return load(fixture_path(name)); }

// Base A -f-> B -g-> C with its total category E and projection p.
struct Tower {
  Workspace ws = fixture("fig2.json");
  CatPtr base = ws.category("ABC");
  CatPtr total = ws.category("E");
  FunctorSpec p = ws.functor("p").spec;
  SetValuedFunctor W = ws.presheaf("W").functor;
};

// A -f-> B.
inline CatPtr arrow_category(const std::string& a = "A", const std::string& b = "B", const std::string& f = "f") {
  return share(FinCat({a, b}, {{identity_id(a), a, a}, {identity_id(b), b, b}, {f, a, b}},
                      {{a, identity_id(a)}, {b, identity_id(b)}},
                      {{identity_id(a), identity_id(a), identity_id(a)},
                       {identity_id(b), identity_id(b), identity_id(b)},
                       {f, identity_id(a), f},
                       {identity_id(b), f, f}}));
}

}  // namespace fiblang::testing
