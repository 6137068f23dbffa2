#pragma once

// Internal categories and groupoids over a base instance, with the
// constructions used throughout: Iso(X), powers by the walking isomorphism,
// evaluation objects, the underline (copower) functor, products, full
// faithfulness, and exhaustive functor / natural-isomorphism search.
//
// Conventions (fixed globally): d1 = domain, d0 = codomain; composition is
// read "g after f", so m acts on pairs (g, f) with d1(g) = d0(f) and the
// composable-pair object is the pullback of d1 against d0 with labels "(g,f)".

#include "base.hpp"

namespace icat {

struct InternalCategory {
  BaseObject X0, X1;
  BaseMorphism d1, d0, i;  // d1 = domain, d0 = codomain
  // Composition table over the composable pairs {(g,f) : d1(g) = d0(f)},
  // labelled "(g,f)".  The table is immutable once assembled and shared
  // between copies; it is by far the largest piece of a category.
  std::shared_ptr<const BaseMorphism> comp_table;  // pairs -> X1
  bool groupoid = false;
  std::optional<BaseMorphism> inv;

  const BaseMorphism& m() const { return *comp_table; }
  const BaseObject& pairs() const { return comp_table->dom; }

  std::string dom_of(const std::string& lv, const std::string& a) const {
    return d1(lv, a);
  }
  std::string cod_of(const std::string& lv, const std::string& a) const {
    return d0(lv, a);
  }
  std::string id_of(const std::string& lv, const std::string& o) const {
    return i(lv, o);
  }
  // g after f
  std::string comp(const std::string& lv, const std::string& g, const std::string& f) const {
    return (*comp_table)(lv, pair_label(g, f));
  }
  std::string inv_of(const std::string& lv, const std::string& a) const {
    if (!inv) throw NotGroupoid("no inversion map");
    return (*inv)(lv, a);
  }
};

inline bool operator==(const InternalCategory& A, const InternalCategory& B) {
  bool eq = A.X0 == B.X0 && A.X1 == B.X1 && A.d1 == B.d1 && A.d0 == B.d0 &&
            A.i == B.i && A.groupoid == B.groupoid &&
            (A.comp_table == B.comp_table || A.m() == B.m());
  if (!eq) return false;
  if (A.inv.has_value() != B.inv.has_value()) return false;
  return !A.inv || *A.inv == *B.inv;
}
inline bool operator!=(const InternalCategory& A, const InternalCategory& B) {
  return !(A == B);
}

// Assembles an internal category from carriers, structure maps, and an
// elementwise composition rule; derives the composable-pair object.
inline InternalCategory assemble_category(
    BaseObject X0, BaseObject X1, BaseMorphism d1, BaseMorphism d0, BaseMorphism i,
    const std::function<std::string(const std::string&, const std::string&,
                                    const std::string&)>& comp,
    bool groupoid = false,
    const std::function<std::string(const std::string&, const std::string&)>& inv = nullptr) {
  InternalCategory X;
  X.X0 = std::move(X0);
  X.X1 = std::move(X1);
  X.d1 = std::move(d1);
  X.d0 = std::move(d0);
  X.i = std::move(i);
  std::map<std::string, std::vector<std::string>> plv;
  std::map<std::string, std::map<std::string, std::string>> prestr, mt;
  for (const auto& io : X.X1.base->index.objects) {
    std::map<std::string, std::vector<std::string>> by_dom;
    for (const auto& g : X.X1.levels.at(io)) by_dom[X.d1(io, g)].push_back(g);
    auto& out = plv[io];
    auto& t = mt[io];
    for (const auto& f : X.X1.levels.at(io))
      for (const auto& g : by_dom[X.d0(io, f)]) {
        std::string l = pair_label(g, f);
        out.push_back(l);
        t[l] = comp(io, g, f);
      }
    std::sort(out.begin(), out.end());
  }
  for (const auto& u : X.X1.base->index.arrows) {
    if (X.X1.base->index.is_identity(u.name)) continue;
    auto& r = prestr[u.name];
    for (const auto& l : plv.at(u.cod)) {
      auto [g, f] = split_pair(l);
      r[l] = pair_label(X.X1.restrict(u.name, g), X.X1.restrict(u.name, f));
    }
  }
  BaseObject pobj = make_object(X.X1.base, std::move(plv), std::move(prestr));
  X.comp_table = std::make_shared<const BaseMorphism>(
      make_morphism(std::move(pobj), X.X1, std::move(mt)));
  X.groupoid = groupoid;
  if (groupoid) {
    std::map<std::string, std::map<std::string, std::string>> it;
    for (const auto& [lv, l] : all_elements(X.X1)) it[lv][l] = inv(lv, l);
    X.inv = make_morphism(X.X1, X.X1, std::move(it));
  }
  return X;
}

// ---------------------------------------------------------------------------
// Validation

inline std::vector<std::string> validate_internal_category(const InternalCategory& X) {
  std::vector<std::string> bad;
  for (auto& v : check_object(X.X0)) bad.push_back("X0: " + v);
  for (auto& v : check_object(X.X1)) bad.push_back("X1: " + v);
  for (auto& v : check_morphism(X.d1)) bad.push_back("d1: " + v);
  for (auto& v : check_morphism(X.d0)) bad.push_back("d0: " + v);
  for (auto& v : check_morphism(X.i)) bad.push_back("i: " + v);
  for (auto& v : check_morphism(X.m())) bad.push_back("m: " + v);
  if (X.d1.dom != X.X1 || X.d1.cod != X.X0) bad.push_back("d1 has wrong carriers");
  if (X.d0.dom != X.X1 || X.d0.cod != X.X0) bad.push_back("d0 has wrong carriers");
  if (X.i.dom != X.X0 || X.i.cod != X.X1) bad.push_back("i has wrong carriers");
  if (X.m().cod != X.X1) bad.push_back("m has wrong carriers");
  if (!bad.empty()) return bad;
  for (const auto& [lv, o] : all_elements(X.X0)) {
    if (X.d1(lv, X.i(lv, o)) != o) bad.push_back("d1∘i fails at " + o);
    if (X.d0(lv, X.i(lv, o)) != o) bad.push_back("d0∘i fails at " + o);
  }
  if (!bad.empty()) return bad;
  // m endpoint laws first: composites below are only chased once they hold
  for (const auto& [lv, p] : all_elements(X.pairs())) {
    auto [g, f] = split_pair(p);
    std::string gf = X.comp(lv, g, f);
    if (X.dom_of(lv, gf) != X.dom_of(lv, f)) bad.push_back("d1∘m fails at " + p);
    if (X.cod_of(lv, gf) != X.cod_of(lv, g)) bad.push_back("d0∘m fails at " + p);
  }
  if (!bad.empty()) return bad;
  for (const auto& [lv, a] : all_elements(X.X1)) {
    if (X.comp(lv, a, X.id_of(lv, X.dom_of(lv, a))) != a)
      bad.push_back("right unit fails at " + a);
    if (X.comp(lv, X.id_of(lv, X.cod_of(lv, a)), a) != a)
      bad.push_back("left unit fails at " + a);
  }
  if (!bad.empty()) return bad;
  // associativity over derived triples
  for (const auto& [lv, h] : all_elements(X.X1))
    for (const auto& g : X.X1.levels.at(lv)) {
      if (X.dom_of(lv, h) != X.cod_of(lv, g)) continue;
      for (const auto& f : X.X1.levels.at(lv)) {
        if (X.dom_of(lv, g) != X.cod_of(lv, f)) continue;
        if (X.comp(lv, h, X.comp(lv, g, f)) != X.comp(lv, X.comp(lv, h, g), f))
          bad.push_back("associativity fails at (" + h + "," + g + "," + f + ")");
      }
    }
  if (X.groupoid) {
    if (!X.inv) {
      bad.push_back("groupoid without inversion map");
      return bad;
    }
    for (auto& v : check_morphism(*X.inv)) bad.push_back("inv: " + v);
    for (const auto& [lv, a] : all_elements(X.X1)) {
      std::string b = X.inv_of(lv, a);
      if (X.dom_of(lv, b) != X.cod_of(lv, a) || X.cod_of(lv, b) != X.dom_of(lv, a)) {
        bad.push_back("inv has wrong endpoints at " + a);
        continue;
      }
      if (X.comp(lv, a, b) != X.id_of(lv, X.cod_of(lv, a)))
        bad.push_back("a∘a⁻¹ ≠ id at " + a);
      if (X.comp(lv, b, a) != X.id_of(lv, X.dom_of(lv, a)))
        bad.push_back("a⁻¹∘a ≠ id at " + a);
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Functors

struct InternalFunctor {
  InternalCategory dom, cod;
  BaseMorphism f0, f1;
};

inline bool operator==(const InternalFunctor& f, const InternalFunctor& g) {
  return f.dom == g.dom && f.cod == g.cod && f.f0 == g.f0 && f.f1 == g.f1;
}
inline bool operator!=(const InternalFunctor& f, const InternalFunctor& g) {
  return !(f == g);
}

inline InternalFunctor identity_functor(const InternalCategory& X) {
  return {X, X, identity(X.X0), identity(X.X1)};
}

inline InternalFunctor compose_functors(const InternalFunctor& g, const InternalFunctor& f) {
  if (f.cod != g.dom) throw DomainMismatch("compose_functors: cod(f) != dom(g)");
  return {f.dom, g.cod, compose(g.f0, f.f0), compose(g.f1, f.f1)};
}

inline std::vector<std::string> validate_internal_functor(const InternalFunctor& F) {
  std::vector<std::string> bad;
  for (auto& v : check_morphism(F.f0)) bad.push_back("f0: " + v);
  for (auto& v : check_morphism(F.f1)) bad.push_back("f1: " + v);
  if (F.f0.dom != F.dom.X0 || F.f0.cod != F.cod.X0) bad.push_back("f0 has wrong carriers");
  if (F.f1.dom != F.dom.X1 || F.f1.cod != F.cod.X1) bad.push_back("f1 has wrong carriers");
  if (!bad.empty()) return bad;
  const auto& X = F.dom;
  const auto& Y = F.cod;
  for (const auto& [lv, a] : all_elements(X.X1)) {
    if (Y.dom_of(lv, F.f1(lv, a)) != F.f0(lv, X.dom_of(lv, a)))
      bad.push_back("f0∘d1 ≠ d1∘f1 at " + a);
    if (Y.cod_of(lv, F.f1(lv, a)) != F.f0(lv, X.cod_of(lv, a)))
      bad.push_back("f0∘d0 ≠ d0∘f1 at " + a);
  }
  for (const auto& [lv, o] : all_elements(X.X0))
    if (F.f1(lv, X.id_of(lv, o)) != Y.id_of(lv, F.f0(lv, o)))
      bad.push_back("identities not preserved at " + o);
  for (const auto& [lv, p] : all_elements(X.pairs())) {
    auto [g, f] = split_pair(p);
    if (F.f1(lv, X.comp(lv, g, f)) != Y.comp(lv, F.f1(lv, g), F.f1(lv, f)))
      bad.push_back("composition not preserved at " + p);
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Iso(X)

struct IsoData {
  BaseObject iso1;       // subobject of X1
  BaseMorphism incl;     // iso1 -> X1
  BaseMorphism inverse;  // iso1 -> X1, pairing each iso with its inverse
};

inline IsoData iso_object(const InternalCategory& X) {
  std::map<std::string, std::set<std::string>> keep;
  std::map<std::string, std::map<std::string, std::string>> invt;
  for (const auto& [lv, a] : all_elements(X.X1)) {
    if (X.groupoid) {
      keep[lv].insert(a);
      invt[lv][a] = X.inv_of(lv, a);
      continue;
    }
    for (const auto& b : X.X1.levels.at(lv)) {
      if (X.dom_of(lv, b) != X.cod_of(lv, a) || X.cod_of(lv, b) != X.dom_of(lv, a))
        continue;
      if (X.comp(lv, a, b) == X.id_of(lv, X.cod_of(lv, a)) &&
          X.comp(lv, b, a) == X.id_of(lv, X.dom_of(lv, a))) {
        keep[lv].insert(a);
        invt[lv][a] = b;  // inverses are unique
        break;
      }
    }
  }
  IsoData I;
  I.iso1 = subobject(X.X1, keep);
  I.incl = sub_inclusion(I.iso1, X.X1);
  std::map<std::string, std::map<std::string, std::string>> it;
  for (const auto& [lv, a] : all_elements(I.iso1)) it[lv][a] = invt[lv][a];
  I.inverse = make_morphism(I.iso1, X.X1, std::move(it));
  return I;
}

// ---------------------------------------------------------------------------
// Powers by the walking isomorphism: objects are isos of X, morphisms are
// commuting squares ((α,f),(g,α′)) with α′∘f = g∘α.

inline InternalCategory power_by_I(const InternalCategory& X) {
  IsoData I = iso_object(X);
  // Given α and f with a common domain and an iso α′ out of cod f, the fourth
  // side of a commuting square is forced: g = α′ ∘ f ∘ α⁻¹.  Enumerating the
  // three free sides directly avoids materializing the 4-fold product.
  BaseObject sq;
  sq.base = X.X1.base;
  for (const auto& [lv, isos] : I.iso1.levels) {
    std::vector<std::string> out;
    const auto& arrows = X.X1.levels.at(lv);
    for (const auto& al : isos) {
      std::string ainv = I.inverse(lv, al);
      for (const auto& f : arrows) {
        if (X.dom_of(lv, f) != X.dom_of(lv, al)) continue;
        std::string fa = X.comp(lv, f, ainv);
        for (const auto& ap : isos) {
          if (X.dom_of(lv, ap) != X.cod_of(lv, f)) continue;
          out.push_back(pair_label(pair_label(al, f),
                                   pair_label(X.comp(lv, ap, fa), ap)));
        }
      }
    }
    std::sort(out.begin(), out.end());
    sq.levels[lv] = std::move(out);
  }
  for (const auto& u : sq.base->index.arrows) {
    if (sq.base->index.is_identity(u.name)) continue;
    auto& t = sq.restr[u.name];
    for (const auto& l : sq.levels.at(u.cod)) {
      auto [lhs, rhs] = split_pair(l);
      auto [al, f] = split_pair(lhs);
      auto [g, ap] = split_pair(rhs);
      t[l] = pair_label(
          pair_label(X.X1.restrict(u.name, al), X.X1.restrict(u.name, f)),
          pair_label(X.X1.restrict(u.name, g), X.X1.restrict(u.name, ap)));
    }
  }
  auto pa = [](const std::string&, const std::string& l) {
    return split_pair(split_pair(l).first).first;
  };
  auto pf = [](const std::string&, const std::string& l) {
    return split_pair(split_pair(l).first).second;
  };
  auto pg = [](const std::string&, const std::string& l) {
    return split_pair(split_pair(l).second).first;
  };
  auto pa2 = [](const std::string&, const std::string& l) {
    return split_pair(split_pair(l).second).second;
  };
  std::map<std::string, std::map<std::string, std::string>> d1t, d0t, it;
  for (const auto& [lv, l] : all_elements(sq)) {
    d1t[lv][l] = pa(lv, l);
    d0t[lv][l] = pa2(lv, l);
  }
  for (const auto& [lv, al] : all_elements(I.iso1)) {
    std::string idd = X.id_of(lv, X.dom_of(lv, al));
    std::string idc = X.id_of(lv, X.cod_of(lv, al));
    it[lv][al] = pair_label(pair_label(al, idd), pair_label(idc, al));
  }
  BaseMorphism d1 = make_morphism(sq, I.iso1, std::move(d1t));
  BaseMorphism d0 = make_morphism(sq, I.iso1, std::move(d0t));
  BaseMorphism i = make_morphism(I.iso1, sq, std::move(it));
  auto comp = [&X, pa, pf, pg, pa2](const std::string& lv, const std::string& q,
                                    const std::string& p) {
    // q = ((α′,f′),(g′,α″)) after p = ((α,f),(g,α′))
    return pair_label(pair_label(pa(lv, p), X.comp(lv, pf(lv, q), pf(lv, p))),
                      pair_label(X.comp(lv, pg(lv, q), pg(lv, p)), pa2(lv, q)));
  };
  if (X.groupoid) {
    auto inv = [&X, pa, pf, pg, pa2](const std::string& lv, const std::string& p) {
      return pair_label(pair_label(pa2(lv, p), X.inv_of(lv, pf(lv, p))),
                        pair_label(X.inv_of(lv, pg(lv, p)), pa(lv, p)));
    };
    return assemble_category(I.iso1, sq, d1, d0, i, comp, true, inv);
  }
  return assemble_category(I.iso1, sq, d1, d0, i, comp);
}

// ---------------------------------------------------------------------------
// Evaluation objects

struct EvaluationObject {
  std::string shape;
  BaseObject carrier;
};

inline EvaluationObject evaluate(const InternalCategory& X, const std::string& shape) {
  if (shape == "empty") return {shape, terminal_object(X.X0.base)};
  if (shape == "1") return {shape, X.X0};
  if (shape == "2") return {shape, X.X1};
  if (shape == "1+1") return {shape, product(X.X0, X.X0).obj};
  if (shape == "P") {
    ProductData P = product(X.X0, X.X0);
    BaseMorphism ends = pair_into_product(P, X.d1, X.d0);
    return {shape, pullback(ends, ends).obj};
  }
  if (shape == "I") return {shape, iso_object(X).iso1};
  throw UnsupportedShape("unsupported shape: " + shape);
}

// ---------------------------------------------------------------------------
// Underline: constant internal category on a finite category description

inline InternalCategory underline(const FiniteCategory& C, const BasePtr& base) {
  auto bad = C.validate();
  if (!bad.empty()) throw InvalidCategory("underline: " + bad.front());
  auto constant = [&base](const std::vector<std::string>& labels) {
    std::map<std::string, std::vector<std::string>> lv;
    std::map<std::string, std::map<std::string, std::string>> r;
    for (const auto& io : base->index.objects) lv[io] = labels;
    for (const auto& u : base->index.arrows) {
      if (base->index.is_identity(u.name)) continue;
      for (const auto& l : labels) r[u.name][l] = l;
    }
    return make_object(base, std::move(lv), std::move(r));
  };
  std::vector<std::string> arrow_names;
  for (const auto& a : C.arrows) arrow_names.push_back(a.name);
  BaseObject X0 = constant(C.objects);
  BaseObject X1 = constant(arrow_names);
  std::map<std::string, std::map<std::string, std::string>> d1t, d0t, it;
  for (const auto& io : base->index.objects) {
    for (const auto& a : C.arrows) {
      d1t[io][a.name] = a.dom;
      d0t[io][a.name] = a.cod;
    }
    for (const auto& o : C.objects) it[io][o] = C.identity.at(o);
  }
  BaseMorphism d1 = make_morphism(X1, X0, std::move(d1t));
  BaseMorphism d0 = make_morphism(X1, X0, std::move(d0t));
  BaseMorphism i = make_morphism(X0, X1, std::move(it));
  auto comp = [&C](const std::string&, const std::string& g, const std::string& f) {
    return C.compose(g, f);
  };
  bool gpd = true;
  std::map<std::string, std::string> inv_table;
  for (const auto& a : C.arrows) {
    bool found = false;
    for (const auto& b : C.arrows)
      if (b.dom == a.cod && b.cod == a.dom &&
          C.compose(a.name, b.name) == C.identity.at(a.cod) &&
          C.compose(b.name, a.name) == C.identity.at(a.dom)) {
        inv_table[a.name] = b.name;
        found = true;
        break;
      }
    if (!found) {
      gpd = false;
      break;
    }
  }
  if (gpd) {
    auto inv = [inv_table](const std::string&, const std::string& a) {
      return inv_table.at(a);
    };
    return assemble_category(X0, X1, d1, d0, i, comp, true, inv);
  }
  return assemble_category(X0, X1, d1, d0, i, comp);
}

// ---------------------------------------------------------------------------
// Products of internal categories

inline InternalCategory product_internal(const InternalCategory& X,
                                         const InternalCategory& Y) {
  if (!same_base(X.X0.base, Y.X0.base))
    throw BaseMismatch("product_internal over different bases");
  ProductData P0 = product(X.X0, Y.X0);
  ProductData P1 = product(X.X1, Y.X1);
  BaseMorphism d1 = product_map(P1, P0, X.d1, Y.d1);
  BaseMorphism d0 = product_map(P1, P0, X.d0, Y.d0);
  BaseMorphism i = product_map(P0, P1, X.i, Y.i);
  auto comp = [&X, &Y, P1](const std::string& lv, const std::string& g,
                           const std::string& f) {
    auto [gx, gy] = split_pair(g);
    auto [fx, fy] = split_pair(f);
    return pair_label(X.comp(lv, gx, fx), Y.comp(lv, gy, fy));
  };
  if (X.groupoid && Y.groupoid) {
    auto inv = [&X, &Y](const std::string& lv, const std::string& a) {
      auto [ax, ay] = split_pair(a);
      return pair_label(X.inv_of(lv, ax), Y.inv_of(lv, ay));
    };
    return assemble_category(P0.obj, P1.obj, d1, d0, i, comp, true, inv);
  }
  return assemble_category(P0.obj, P1.obj, d1, d0, i, comp);
}

// Projections and pairing for product_internal (labels are componentwise).
inline InternalFunctor product_proj1(const InternalCategory& P, const InternalCategory& X,
                                     const InternalCategory& Y) {
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(P.X0)) m0[lv][l] = split_pair(l).first;
  for (const auto& [lv, l] : all_elements(P.X1)) m1[lv][l] = split_pair(l).first;
  (void)Y;
  return {P, X, make_morphism(P.X0, X.X0, std::move(m0)),
          make_morphism(P.X1, X.X1, std::move(m1))};
}
inline InternalFunctor product_proj2(const InternalCategory& P, const InternalCategory& X,
                                     const InternalCategory& Y) {
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(P.X0)) m0[lv][l] = split_pair(l).second;
  for (const auto& [lv, l] : all_elements(P.X1)) m1[lv][l] = split_pair(l).second;
  (void)X;
  return {P, Y, make_morphism(P.X0, Y.X0, std::move(m0)),
          make_morphism(P.X1, Y.X1, std::move(m1))};
}
inline InternalFunctor pair_functors(const InternalCategory& P, const InternalFunctor& f,
                                     const InternalFunctor& g) {
  if (f.dom != g.dom) throw DomainMismatch("pair_functors: different domains");
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(f.dom.X0))
    m0[lv][l] = pair_label(f.f0(lv, l), g.f0(lv, l));
  for (const auto& [lv, l] : all_elements(f.dom.X1))
    m1[lv][l] = pair_label(f.f1(lv, l), g.f1(lv, l));
  return {f.dom, P, make_morphism(f.dom.X0, P.X0, std::move(m0)),
          make_morphism(f.dom.X1, P.X1, std::move(m1))};
}

// ---------------------------------------------------------------------------
// Full faithfulness

struct FFWitness {
  PullbackData pb;     // (X0 x X0) x_{Y0 x Y0} Y1, labels "((x,x'),y1)"
  BaseMorphism w;      // X1 -> pb.obj
  BaseMorphism w_inv;  // inverse of w
};

inline std::optional<FFWitness> is_fully_faithful(const InternalFunctor& F) {
  const auto& X = F.dom;
  const auto& Y = F.cod;
  ProductData A = product(X.X0, X.X0);
  ProductData B = product(Y.X0, Y.X0);
  BaseMorphism f00 = product_map(A, B, F.f0, F.f0);
  BaseMorphism ends = pair_into_product(B, Y.d1, Y.d0);
  PullbackData PB = pullback(f00, ends);
  BaseMorphism w = mediate(PB, pair_into_product(A, X.d1, X.d0), F.f1);
  auto wi = invert(w);
  if (!wi) return std::nullopt;
  return FFWitness{PB, w, *wi};
}

// Unique arrow x -> x' over y1, given full faithfulness.
inline std::string ff_preimage(const FFWitness& W, const std::string& lv,
                               const std::string& x, const std::string& xp,
                               const std::string& y1) {
  return W.w_inv(lv, pair_label(pair_label(x, xp), y1));
}

// ---------------------------------------------------------------------------
// Natural isomorphisms

struct NatIso {
  InternalFunctor f, g;     // parallel functors X -> Y
  BaseMorphism component;   // X0 -> Y1
};

inline std::vector<std::string> validate_nat_iso(const NatIso& N) {
  std::vector<std::string> bad;
  const auto& X = N.f.dom;
  const auto& Y = N.f.cod;
  if (N.g.dom != X || N.g.cod != Y) {
    bad.push_back("functors not parallel");
    return bad;
  }
  for (auto& v : check_morphism(N.component)) bad.push_back("component: " + v);
  if (N.component.dom != X.X0 || N.component.cod != Y.X1)
    bad.push_back("component has wrong carriers");
  if (!bad.empty()) return bad;
  IsoData iso = iso_object(Y);
  for (const auto& [lv, o] : all_elements(X.X0)) {
    std::string a = N.component(lv, o);
    if (Y.dom_of(lv, a) != N.f.f0(lv, o)) bad.push_back("d1∘α ≠ f0 at " + o);
    if (Y.cod_of(lv, a) != N.g.f0(lv, o)) bad.push_back("d0∘α ≠ g0 at " + o);
    if (!iso.iso1.has_label(lv, a)) bad.push_back("component not invertible at " + o);
  }
  if (!bad.empty()) return bad;
  for (const auto& [lv, x1] : all_elements(X.X1)) {
    std::string lhs = Y.comp(lv, N.component(lv, X.cod_of(lv, x1)), N.f.f1(lv, x1));
    std::string rhs = Y.comp(lv, N.g.f1(lv, x1), N.component(lv, X.dom_of(lv, x1)));
    if (lhs != rhs) bad.push_back("naturality fails at " + x1);
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Exhaustive search

inline std::vector<InternalFunctor> enumerate_functors(const InternalCategory& X,
                                                       const InternalCategory& Y) {
  std::vector<InternalFunctor> out;
  for (const auto& f0 : enumerate_natural(X.X0, Y.X0)) {
    detail::search_natural_impl(
        X.X1, Y.X1,
        [&](const std::string& lv, const std::string& x1) {
          std::vector<std::string> cands;
          std::string want_d = f0(lv, X.dom_of(lv, x1));
          std::string want_c = f0(lv, X.cod_of(lv, x1));
          for (const auto& y1 : Y.X1.levels.at(lv)) {
            if (Y.dom_of(lv, y1) != want_d || Y.cod_of(lv, y1) != want_c) continue;
            cands.push_back(y1);
          }
          return cands;
        },
        [&](const BaseMorphism& f1) {
          InternalFunctor F{X, Y, f0, f1};
          if (validate_internal_functor(F).empty()) out.push_back(F);
          return false;
        });
  }
  return out;
}

// First natural isomorphism f ≅ g in deterministic order, if any.
inline std::optional<NatIso> find_nat_iso(const InternalFunctor& f,
                                          const InternalFunctor& g) {
  if (f.dom != g.dom || f.cod != g.cod) throw DomainMismatch("find_nat_iso");
  const auto& Y = f.cod;
  IsoData iso = iso_object(Y);
  std::optional<NatIso> out;
  detail::search_natural_impl(
      f.dom.X0, Y.X1,
      [&](const std::string& lv, const std::string& o) {
        std::vector<std::string> cands;
        for (const auto& a : iso.iso1.levels.at(lv))
          if (Y.dom_of(lv, a) == f.f0(lv, o) && Y.cod_of(lv, a) == g.f0(lv, o))
            cands.push_back(a);
        return cands;
      },
      [&](const BaseMorphism& comp) {
        NatIso N{f, g, comp};
        if (!validate_nat_iso(N).empty()) return false;
        out = N;
        return true;
      });
  return out;
}

}  // namespace icat
