#pragma once

// Translations between (co)monad (co)algebras for the two factorization
// systems and their hand-specified presentations:
//
//   F-algebras        <->  cloven isofibrations
//   TF-algebras       <->  algebraic split epi equivalences
//   C-coalgebras      <->  algebraic complemented inclusions on objects
//   TC-coalgebras     <->  algebraic trivial cofibrations
//
// plus the canonical lifting operation of a TC-coalgebra against an
// F-algebra through the functorial factorization of the square.

#include "factorization.hpp"

namespace icat {

// ---------------------------------------------------------------------------
// Records

struct FAlgebra {
  TrivCofFib fact;      // of f
  InternalFunctor phi;  // E(W f) -> X with f∘φ = F(f), φ∘TC(f) = id
};

struct TFAlgebra {
  CofTrivFib fact;      // of f
  InternalFunctor phi;  // E(f) -> X with f∘φ = TF(f), φ∘C(f) = id
};

struct CCoalgebra {
  CofTrivFib fact;        // of f
  InternalFunctor alpha;  // Y -> E(f) with α∘f = C(f), TF(f)∘α = id
};

struct TCCoalgebra {
  TrivCofFib fact;        // of f
  InternalFunctor alpha;  // Y -> E(W f) with α∘f = TC(f), F(f)∘α = id
};

// ---------------------------------------------------------------------------
// Validators

inline std::vector<std::string> validate_f_algebra(const FAlgebra& a) {
  std::vector<std::string> out = validate_internal_functor(a.phi);
  if (!out.empty()) return out;
  if (!(a.phi.dom == a.fact.inner.E) || !(a.phi.cod == a.fact.f.dom))
    return {"phi has the wrong shape"};
  if (!(compose_functors(a.fact.f, a.phi) == a.fact.F))
    out.push_back("f∘phi != F(f)");
  if (!(compose_functors(a.phi, a.fact.TC) == identity_functor(a.fact.f.dom)))
    out.push_back("phi∘TC(f) != id");
  return out;
}

inline std::vector<std::string> validate_tf_algebra(const TFAlgebra& a) {
  std::vector<std::string> out = validate_internal_functor(a.phi);
  if (!out.empty()) return out;
  if (!(a.phi.dom == a.fact.E) || !(a.phi.cod == a.fact.f.dom))
    return {"phi has the wrong shape"};
  if (!(compose_functors(a.fact.f, a.phi) == a.fact.TF))
    out.push_back("f∘phi != TF(f)");
  if (!(compose_functors(a.phi, a.fact.C) == identity_functor(a.fact.f.dom)))
    out.push_back("phi∘C(f) != id");
  return out;
}

inline std::vector<std::string> validate_c_coalgebra(const CCoalgebra& c) {
  std::vector<std::string> out = validate_internal_functor(c.alpha);
  if (!out.empty()) return out;
  if (!(c.alpha.dom == c.fact.f.cod) || !(c.alpha.cod == c.fact.E))
    return {"alpha has the wrong shape"};
  if (!(compose_functors(c.alpha, c.fact.f) == c.fact.C))
    out.push_back("alpha∘f != C(f)");
  if (!(compose_functors(c.fact.TF, c.alpha) == identity_functor(c.fact.f.cod)))
    out.push_back("TF(f)∘alpha != id");
  return out;
}

inline std::vector<std::string> validate_tc_coalgebra(const TCCoalgebra& c) {
  std::vector<std::string> out = validate_internal_functor(c.alpha);
  if (!out.empty()) return out;
  if (!(c.alpha.dom == c.fact.f.cod) || !(c.alpha.cod == c.fact.inner.E))
    return {"alpha has the wrong shape"};
  if (!(compose_functors(c.alpha, c.fact.f) == c.fact.TC))
    out.push_back("alpha∘f != TC(f)");
  if (!(compose_functors(c.fact.F, c.alpha) == identity_functor(c.fact.f.cod)))
    out.push_back("F(f)∘alpha != id");
  return out;
}

// One entry point per record kind, all named alike.
inline std::vector<std::string> validate_structure(const FAlgebra& a) { return validate_f_algebra(a); }
inline std::vector<std::string> validate_structure(const TFAlgebra& a) { return validate_tf_algebra(a); }
inline std::vector<std::string> validate_structure(const CCoalgebra& c) { return validate_c_coalgebra(c); }
inline std::vector<std::string> validate_structure(const TCCoalgebra& c) { return validate_tc_coalgebra(c); }
inline std::vector<std::string> validate_structure(const ClovenIsofibration& c) { return validate_cloven(c); }
inline std::vector<std::string> validate_structure(const AlgTrivCofibration& t) { return validate_algtrivcof(t); }
inline std::vector<std::string> validate_structure(const AlgSplitEpiEq& e) { return validate_splitepieq(e); }
inline std::vector<std::string> validate_structure(const AlgCompInclObj& a) { return validate_compincl(a); }

namespace detail {
// The canonical iso l/x -> r/(x,γ) in E(W f), whose Map(f) component is
// (id_x, square from the identity iso at f0 x to γ).
inline std::string wf_unit_arrow(const TrivCofFib& T, const std::string& lv,
                                 const std::string& map0) {
  auto [x, g] = split_pair(map0);
  std::string fid = T.f.cod.id_of(lv, T.f.f0(lv, x));
  return pair_label(pair_label("l/" + x, "r/" + map0),
                    pair_label(T.f.dom.id_of(lv, x), make_square(fid, fid, g, g)));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// F-algebras <-> cloven isofibrations

inline ClovenIsofibration f_algebra_to_cloven(const FAlgebra& a) {
  auto bad = validate_f_algebra(a);
  if (!bad.empty()) throw InvalidAlgebra("f_algebra_to_cloven: " + bad.front());
  const auto& f = a.fact.f;
  IsoData I = iso_object(f.cod);
  PullbackData pb = pullback(f.f0, compose(f.cod.d1, I.incl));
  std::map<std::string, std::map<std::string, std::string>> kt;
  for (const auto& [lv, l] : all_elements(pb.obj))
    kt[lv][l] = a.phi.f1(lv, detail::wf_unit_arrow(a.fact, lv, l));
  ClovenIsofibration out{f, {pb, make_morphism(pb.obj, f.dom.X1, std::move(kt))}};
  bad = validate_cloven(out);
  if (!bad.empty()) throw InvalidStructure("f_algebra_to_cloven: " + bad.front());
  return out;
}

inline FAlgebra cloven_to_f_algebra(const ClovenIsofibration& c) {
  auto bad = validate_cloven(c);
  if (!bad.empty()) throw InvalidStructure("cloven_to_f_algebra: " + bad.front());
  const auto& f = c.f;
  const auto& X = f.dom;
  TrivCofFib T = factorize_trivcof_fib(f);
  IsoData IX = iso_object(X);
  // K(e): the chosen iso from the underlying object of e to φ0(e)
  auto K = [&](const std::string& lv, const std::string& e) {
    if (is_left_label(e)) return X.id_of(lv, strip_tag(e));
    return c.k.k(lv, strip_tag(e));
  };
  std::map<std::string, std::map<std::string, std::string>> p0, p1;
  for (const auto& [lv, e] : all_elements(T.inner.E.X0))
    p0[lv][e] = is_left_label(e) ? strip_tag(e) : X.cod_of(lv, K(lv, e));
  for (const auto& [lv, l] : all_elements(T.inner.E.X1)) {
    std::string e = T.inner.E.dom_of(lv, l), ep = T.inner.E.cod_of(lv, l);
    std::string x1 = split_pair(T.inner.mor_pb.p2(lv, l)).first;
    p1[lv][l] = X.comp(lv, K(lv, ep), X.comp(lv, x1, IX.inverse(lv, K(lv, e))));
  }
  FAlgebra out{T, {T.inner.E, X, make_morphism(T.inner.E.X0, X.X0, std::move(p0)),
                   make_morphism(T.inner.E.X1, X.X1, std::move(p1))}};
  bad = validate_f_algebra(out);
  if (!bad.empty()) throw InvalidStructure("cloven_to_f_algebra: " + bad.front());
  return out;
}

// ---------------------------------------------------------------------------
// TF-algebras <-> algebraic split epi equivalences

inline AlgSplitEpiEq tf_algebra_to_splitepieq(const TFAlgebra& a) {
  auto bad = validate_tf_algebra(a);
  if (!bad.empty()) throw InvalidAlgebra("tf_algebra_to_splitepieq: " + bad.front());
  const auto& f = a.fact.f;
  const auto& Y = f.cod;
  std::map<std::string, std::map<std::string, std::string>> s0, s1, bt;
  for (const auto& [lv, y] : all_elements(Y.X0)) s0[lv][y] = a.phi.f0(lv, "r/" + y);
  for (const auto& [lv, y1] : all_elements(Y.X1))
    s1[lv][y1] = a.phi.f1(
        lv, pair_label(pair_label("r/" + Y.dom_of(lv, y1), "r/" + Y.cod_of(lv, y1)),
                       y1));
  for (const auto& [lv, x] : all_elements(f.dom.X0)) {
    std::string fx = f.f0(lv, x);
    bt[lv][x] = a.phi.f1(
        lv, pair_label(pair_label("l/" + x, "r/" + fx), Y.id_of(lv, fx)));
  }
  AlgSplitEpiEq out{f,
                    {Y, f.dom, make_morphism(Y.X0, f.dom.X0, std::move(s0)),
                     make_morphism(Y.X1, f.dom.X1, std::move(s1))},
                    make_morphism(f.dom.X0, f.dom.X1, std::move(bt))};
  bad = validate_splitepieq(out);
  if (!bad.empty())
    throw InvalidStructure("tf_algebra_to_splitepieq: " + bad.front());
  return out;
}

inline TFAlgebra splitepieq_to_tf_algebra(const AlgSplitEpiEq& e) {
  auto bad = validate_splitepieq(e);
  if (!bad.empty()) throw InvalidStructure("splitepieq_to_tf_algebra: " + bad.front());
  const auto& f = e.f;
  const auto& X = f.dom;
  CofTrivFib A = factorize_cof_trivfib(f);
  IsoData IX = iso_object(X);
  // adjust into / out of the section's image with β's components
  auto into = [&](const std::string& lv, const std::string& o) {
    if (is_left_label(o)) return e.beta(lv, strip_tag(o));
    return X.id_of(lv, e.s.f0(lv, strip_tag(o)));
  };
  std::map<std::string, std::map<std::string, std::string>> p0, p1;
  for (const auto& [lv, o] : all_elements(A.E.X0))
    p0[lv][o] = is_left_label(o) ? strip_tag(o) : e.s.f0(lv, strip_tag(o));
  for (const auto& [lv, l] : all_elements(A.E.X1)) {
    std::string o = A.E.dom_of(lv, l), op = A.E.cod_of(lv, l);
    std::string y1 = A.mor_pb.p2(lv, l);
    p1[lv][l] = X.comp(lv, IX.inverse(lv, into(lv, op)),
                       X.comp(lv, e.s.f1(lv, y1), into(lv, o)));
  }
  TFAlgebra out{A, {A.E, X, make_morphism(A.E.X0, X.X0, std::move(p0)),
                    make_morphism(A.E.X1, X.X1, std::move(p1))}};
  bad = validate_tf_algebra(out);
  if (!bad.empty()) throw InvalidStructure("splitepieq_to_tf_algebra: " + bad.front());
  return out;
}

// ---------------------------------------------------------------------------
// C-coalgebras <-> algebraic complemented inclusions on objects

inline AlgCompInclObj c_coalg_to_compincl(const CCoalgebra& c) {
  auto bad = validate_c_coalgebra(c);
  if (!bad.empty()) throw InvalidStructure("c_coalg_to_compincl: " + bad.front());
  const auto& f = c.fact.f;
  // read the retract presentation off the tags of alpha's object part
  std::map<std::string, std::set<std::string>> keep;
  for (const auto& [lv, y] : all_elements(f.cod.X0))
    if (!is_left_label(c.alpha.f0(lv, y))) keep[lv].insert(y);
  BaseObject comp = subobject(f.cod.X0, keep);
  CoproductData copr = coproduct(f.dom.X0, comp);
  std::map<std::string, std::map<std::string, std::string>> wt;
  for (const auto& [lv, l] : all_elements(copr.obj))
    wt[lv][l] = is_left_label(l) ? f.f0(lv, strip_tag(l)) : strip_tag(l);
  BaseMorphism w = make_morphism(copr.obj, f.cod.X0, std::move(wt));
  auto winv = invert(w);
  if (!winv) throw InvalidStructure("c_coalg_to_compincl: presentation not bijective");
  AlgCompInclObj out{f, {comp, copr, w, *winv}};
  bad = validate_compincl(out);
  if (!bad.empty()) throw InvalidStructure("c_coalg_to_compincl: " + bad.front());
  return out;
}

inline CCoalgebra compincl_to_c_coalg(const AlgCompInclObj& a) {
  auto bad = validate_compincl(a);
  if (!bad.empty()) throw InvalidStructure("compincl_to_c_coalg: " + bad.front());
  const auto& f = a.f;
  CofTrivFib A = factorize_cof_trivfib(f);
  std::map<std::string, std::map<std::string, std::string>> a0, a1;
  for (const auto& [lv, y] : all_elements(f.cod.X0)) {
    std::string l = a.j.witness_inv(lv, y);
    a0[lv][y] = is_left_label(l) ? l : "r/" + y;
  }
  for (const auto& [lv, y1] : all_elements(f.cod.X1))
    a1[lv][y1] = pair_label(pair_label(a0[lv][f.cod.dom_of(lv, y1)],
                                       a0[lv][f.cod.cod_of(lv, y1)]),
                            y1);
  CCoalgebra out{A, {f.cod, A.E, make_morphism(f.cod.X0, A.E.X0, std::move(a0)),
                     make_morphism(f.cod.X1, A.E.X1, std::move(a1))}};
  bad = validate_c_coalgebra(out);
  if (!bad.empty()) throw InvalidStructure("compincl_to_c_coalg: " + bad.front());
  return out;
}

// ---------------------------------------------------------------------------
// TC-coalgebras <-> algebraic trivial cofibrations

inline AlgTrivCofibration tc_coalg_to_algtrivcof(const TCCoalgebra& c) {
  auto bad = validate_tc_coalgebra(c);
  if (!bad.empty()) throw InvalidStructure("tc_coalg_to_algtrivcof: " + bad.front());
  const auto& g = c.fact.f;
  InternalFunctor r = compose_functors(beta_functor(c.fact), c.alpha);
  std::map<std::string, std::set<std::string>> keep;
  std::map<std::string, std::map<std::string, std::string>> bt, wt;
  for (const auto& [lv, y] : all_elements(g.cod.X0)) {
    std::string e = c.alpha.f0(lv, y);
    if (!is_left_label(e)) keep[lv].insert(y);
    // β's component at y: the iso carried by α0(y)
    bt[lv][y] = split_pair(c.fact.inner.TF.f0(lv, e)).second;
  }
  BaseObject comp = subobject(g.cod.X0, keep);
  CoproductData copr = coproduct(g.dom.X0, comp);
  for (const auto& [lv, l] : all_elements(copr.obj))
    wt[lv][l] = is_left_label(l) ? g.f0(lv, strip_tag(l)) : strip_tag(l);
  BaseMorphism w = make_morphism(copr.obj, g.cod.X0, std::move(wt));
  auto winv = invert(w);
  if (!winv) throw InvalidStructure("tc_coalg_to_algtrivcof: presentation not bijective");
  AlgTrivCofibration out{g, r, {comp, copr, w, *winv},
                         make_morphism(g.cod.X0, g.cod.X1, std::move(bt))};
  bad = validate_algtrivcof(out);
  if (!bad.empty()) throw InvalidStructure("tc_coalg_to_algtrivcof: " + bad.front());
  return out;
}

inline TCCoalgebra algtrivcof_to_tc_coalg(const AlgTrivCofibration& t) {
  auto bad = validate_algtrivcof(t);
  if (!bad.empty()) throw InvalidStructure("algtrivcof_to_tc_coalg: " + bad.front());
  const auto& g = t.g;
  const auto& Y = g.cod;
  TrivCofFib T = factorize_trivcof_fib(g);
  std::map<std::string, std::map<std::string, std::string>> a0, a1;
  for (const auto& [lv, y] : all_elements(Y.X0)) {
    std::string l = t.j.witness_inv(lv, y);
    a0[lv][y] = is_left_label(l)
                    ? l
                    : "r/" + pair_label(t.r.f0(lv, y), t.beta(lv, y));
  }
  for (const auto& [lv, y1] : all_elements(Y.X1)) {
    std::string y = Y.dom_of(lv, y1), yp = Y.cod_of(lv, y1);
    std::string m1 = pair_label(
        t.r.f1(lv, y1),
        make_square(t.beta(lv, y), g.f1(lv, t.r.f1(lv, y1)), y1, t.beta(lv, yp)));
    a1[lv][y1] = pair_label(pair_label(a0[lv][y], a0[lv][yp]), m1);
  }
  TCCoalgebra out{T, {Y, T.inner.E, make_morphism(Y.X0, T.inner.E.X0, std::move(a0)),
                      make_morphism(Y.X1, T.inner.E.X1, std::move(a1))}};
  bad = validate_tc_coalgebra(out);
  if (!bad.empty()) throw InvalidStructure("algtrivcof_to_tc_coalg: " + bad.front());
  return out;
}

// ---------------------------------------------------------------------------
// Free structures and the derived comultiplication

inline FAlgebra free_f_algebra(const InternalFunctor& f) {
  FMultiplication K = f_multiplication(f);
  return {K.fact2, K.kappa};
}

inline TFAlgebra free_tf_algebra(const InternalFunctor& f) {
  TFMultiplication M = tf_multiplication(f);
  return {M.fact2, M.mu};
}

inline CCoalgebra free_c_coalgebra(const InternalFunctor& f) {
  CComultiplication D = c_comultiplication(f);
  return {D.factC, D.delta};
}

// Coalgebra structure on the left factor TC(f).
inline TCCoalgebra tc_structure(const InternalFunctor& f) {
  return algtrivcof_to_tc_coalg(tc_retract_presentation(factorize_trivcof_fib(f)));
}

// Coassociativity of a TC-coalgebra with the derived comultiplication.
inline bool tc_comultiplication_compatible(const TCCoalgebra& c) {
  const auto& g = c.fact.f;
  TCCoalgebra rho = tc_structure(g);
  InternalFunctor act =
      ew_functorial(c.fact, rho.fact, identity_functor(g.dom), c.alpha);
  return compose_functors(rho.alpha, c.alpha) ==
         compose_functors(act, c.alpha);
}

// ---------------------------------------------------------------------------
// Canonical lifting of a TC-coalgebra against an F-algebra

inline InternalFunctor canonical_lift(const TCCoalgebra& left, const FAlgebra& right,
                                      const InternalFunctor& top,
                                      const InternalFunctor& bottom) {
  auto bad = validate_tc_coalgebra(left);
  if (!bad.empty()) throw InvalidStructure("canonical_lift: left: " + bad.front());
  bad = validate_f_algebra(right);
  if (!bad.empty()) throw InvalidStructure("canonical_lift: right: " + bad.front());
  if (!(compose_functors(right.fact.f, top) ==
        compose_functors(bottom, left.fact.f)))
    throw NonCommutingSquare("canonical_lift: square does not commute");
  InternalFunctor mid = ew_functorial(left.fact, right.fact, top, bottom);
  return compose_functors(right.phi, compose_functors(mid, left.alpha));
}

}  // namespace icat
