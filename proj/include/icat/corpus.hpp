#pragma once

// Bundled fixtures: small finite categories / groupoids and the exhaustively
// generated functor corpus used by the property checks and the verifier.

#include "internal_cat.hpp"

namespace icat::corpus {

inline FiniteCategory terminal_cat() {
  FiniteCategory c;
  c.objects = {"0"};
  c.arrows = {{"id0", "0", "0"}};
  c.identity = {{"0", "id0"}};
  c.comp = {{{"id0", "id0"}, "id0"}};
  return c;
}

inline FiniteCategory discrete_cat(int n) {
  FiniteCategory c;
  for (int k = 0; k < n; ++k) {
    std::string o = std::to_string(k);
    c.objects.push_back(o);
    c.arrows.push_back({"id" + o, o, o});
    c.identity[o] = "id" + o;
    c.comp[{"id" + o, "id" + o}] = "id" + o;
  }
  return c;
}

// 0 --a--> 1
inline FiniteCategory walking_arrow() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}};
  c.identity = {{"0", "id0"}, {"1", "id1"}};
  c.comp = {{{"id0", "id0"}, "id0"},
            {{"id1", "id1"}, "id1"},
            {{"a", "id0"}, "a"},
            {{"id1", "a"}, "a"}};
  return c;
}

// 0 <--u/v--> 1, mutually inverse
inline FiniteCategory walking_iso() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}, {"v", "1", "0"}};
  c.identity = {{"0", "id0"}, {"1", "id1"}};
  c.comp = {{{"id0", "id0"}, "id0"}, {{"id1", "id1"}, "id1"},
            {{"u", "id0"}, "u"},     {{"id1", "u"}, "u"},
            {{"v", "id1"}, "v"},     {{"id0", "v"}, "v"},
            {{"v", "u"}, "id0"},     {{"u", "v"}, "id1"}};
  return c;
}

// one object, Z/2
inline FiniteCategory cyclic2() {
  FiniteCategory c;
  c.objects = {"0"};
  c.arrows = {{"e", "0", "0"}, {"s", "0", "0"}};
  c.identity = {{"0", "e"}};
  c.comp = {{{"e", "e"}, "e"}, {{"e", "s"}, "s"}, {{"s", "e"}, "s"}, {{"s", "s"}, "e"}};
  return c;
}

// codiscrete groupoid on n objects: unique arrow "j<i" between any i, j
inline FiniteCategory codiscrete(int n) {
  FiniteCategory c;
  auto arrow = [](int j, int i) {
    return std::to_string(j) + "<" + std::to_string(i);
  };
  for (int k = 0; k < n; ++k) {
    c.objects.push_back(std::to_string(k));
    c.identity[std::to_string(k)] = arrow(k, k);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      c.arrows.push_back({arrow(j, i), std::to_string(i), std::to_string(j)});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        c.comp[{arrow(k, j), arrow(j, i)}] = arrow(k, i);
  return c;
}

// Discrete internal category on a base object (identities only).
inline InternalCategory discrete_internal(const BaseObject& A) {
  BaseMorphism id = identity(A);
  auto comp = [](const std::string&, const std::string& g, const std::string&) {
    return g;
  };
  auto inv = [](const std::string&, const std::string& a) { return a; };
  return assemble_category(A, A, id, id, id, comp, true, inv);
}

struct Fixtures {
  InternalCategory T, D2, D3, Iw, C2, K3;
};

inline Fixtures fixtures(const BasePtr& base) {
  return {underline(terminal_cat(), base), underline(discrete_cat(2), base),
          underline(discrete_cat(3), base), underline(walking_iso(), base),
          underline(cyclic2(), base),       underline(codiscrete(3), base)};
}

// Named groupoids with at most 3 objects.
inline std::vector<std::pair<std::string, InternalCategory>> groupoid_corpus(
    const BasePtr& base) {
  Fixtures F = fixtures(base);
  return {{"T", F.T},   {"D2", F.D2}, {"D3", F.D3},
          {"Iw", F.Iw}, {"C2", F.C2}, {"K3", F.K3}};
}

// Every internal functor between every ordered pair of corpus groupoids.
inline std::vector<std::pair<std::string, InternalFunctor>> functor_corpus(
    const BasePtr& base) {
  auto gs = groupoid_corpus(base);
  std::vector<std::pair<std::string, InternalFunctor>> out;
  for (const auto& [nx, X] : gs)
    for (const auto& [ny, Y] : gs) {
      int k = 0;
      for (const auto& F : enumerate_functors(X, Y))
        out.push_back({nx + "->" + ny + "#" + std::to_string(k++), F});
    }
  return out;
}

// Small presheaf corpus (constant fixtures plus genuinely non-constant
// discrete groupoids) used to rerun the core checks over a presheaf base.
inline std::vector<std::pair<std::string, InternalCategory>> presheaf_groupoid_corpus(
    const BasePtr& base) {
  std::vector<std::pair<std::string, InternalCategory>> out;
  out.push_back({"T", underline(terminal_cat(), base)});
  out.push_back({"Iw", underline(walking_iso(), base)});
  out.push_back({"C2", underline(cyclic2(), base)});
  // one non-constant presheaf per base shape, as a discrete internal groupoid
  const auto& idx = base->index;
  if (idx.objects.size() == 2) {  // walking-arrow index: the representable at 1
    auto Y = make_object(base, {{"0", {"p"}}, {"1", {"q"}}}, {{"a", {{"q", "p"}}}});
    out.push_back({"R1", discrete_internal(Y)});
  } else if (idx.arrows.size() == 2) {  // involution index: the free orbit
    auto X = make_object(base, {{"*", {"tx", "x"}}},
                         {{"t", {{"x", "tx"}, {"tx", "x"}}}});
    out.push_back({"Orb", discrete_internal(X)});
  }
  return out;
}

inline std::vector<std::pair<std::string, InternalFunctor>> presheaf_functor_corpus(
    const BasePtr& base) {
  auto gs = presheaf_groupoid_corpus(base);
  std::vector<std::pair<std::string, InternalFunctor>> out;
  for (const auto& [nx, X] : gs)
    for (const auto& [ny, Y] : gs) {
      int k = 0;
      for (const auto& F : enumerate_functors(X, Y))
        out.push_back({nx + "->" + ny + "#" + std::to_string(k++), F});
    }
  return out;
}

}  // namespace icat::corpus
