#pragma once

// The two functorial factorizations and their (co)monad structure maps.
//
//   f = TF(f)∘C(f):   E(f)_0 = X0 + Y0,
//                     E(f)_1 = (E(f)_0 x E(f)_0) x_{Y0 x Y0} Y1,
//                     labels "((e,e'),y1)" with summand tags "l/x", "r/y".
//   f = F(f)∘TC(f):   Map(f) = X x_Y Y^I (pullback along the domain
//                     projection of Y^I), W(f): X -> Map(f),
//                     TC(f) = C(W(f)), F(f) = cod∘iso-projection∘TF(W(f)).
//
// Structure maps: μ^f (TF multiplication), δ^f (C comultiplication),
// κ^f (F multiplication via β and τ), and the retract presentation of TC(f).

#include "model_structure.hpp"

namespace icat {

inline bool is_left_label(const std::string& l) { return l.rfind("l/", 0) == 0; }
inline std::string strip_tag(const std::string& l) { return l.substr(2); }

// ---------------------------------------------------------------------------
// Internal pullbacks (levelwise, componentwise structure)

struct InternalPullback {
  InternalCategory P;
  InternalFunctor p1, p2;
};

inline InternalPullback pullback_internal(const InternalFunctor& F,
                                          const InternalFunctor& G) {
  if (F.cod != G.cod) throw DomainMismatch("pullback_internal: different codomains");
  const auto& X = F.dom;
  const auto& W = G.dom;
  PullbackData pb0 = pullback(F.f0, G.f0);
  PullbackData pb1 = pullback(F.f1, G.f1);
  std::map<std::string, std::map<std::string, std::string>> d1t, d0t, it;
  for (const auto& [lv, l] : all_elements(pb1.obj)) {
    std::string a = pb1.p1(lv, l), b = pb1.p2(lv, l);
    d1t[lv][l] = pair_label(X.dom_of(lv, a), W.dom_of(lv, b));
    d0t[lv][l] = pair_label(X.cod_of(lv, a), W.cod_of(lv, b));
  }
  for (const auto& [lv, l] : all_elements(pb0.obj))
    it[lv][l] = pair_label(X.id_of(lv, pb0.p1(lv, l)), W.id_of(lv, pb0.p2(lv, l)));
  BaseMorphism d1 = make_morphism(pb1.obj, pb0.obj, std::move(d1t));
  BaseMorphism d0 = make_morphism(pb1.obj, pb0.obj, std::move(d0t));
  BaseMorphism i = make_morphism(pb0.obj, pb1.obj, std::move(it));
  auto comp = [&X, &W](const std::string& lv, const std::string& g,
                       const std::string& f) {
    auto [ga, gb] = split_pair(g);
    auto [fa, fb] = split_pair(f);
    return pair_label(X.comp(lv, ga, fa), W.comp(lv, gb, fb));
  };
  InternalPullback out;
  if (X.groupoid && W.groupoid) {
    auto inv = [&X, &W](const std::string& lv, const std::string& a) {
      auto [xa, wa] = split_pair(a);
      return pair_label(X.inv_of(lv, xa), W.inv_of(lv, wa));
    };
    out.P = assemble_category(pb0.obj, pb1.obj, d1, d0, i, comp, true, inv);
  } else {
    out.P = assemble_category(pb0.obj, pb1.obj, d1, d0, i, comp);
  }
  out.p1 = {out.P, X, pb0.p1, pb1.p1};
  out.p2 = {out.P, W, pb0.p2, pb1.p2};
  return out;
}

// Mediating functor into an internal pullback.
inline InternalFunctor mediate_internal(const InternalPullback& PB,
                                        const InternalFunctor& u,
                                        const InternalFunctor& v) {
  if (u.dom != v.dom) throw DomainMismatch("mediate_internal: different domains");
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(u.dom.X0))
    m0[lv][l] = pair_label(u.f0(lv, l), v.f0(lv, l));
  for (const auto& [lv, l] : all_elements(u.dom.X1))
    m1[lv][l] = pair_label(u.f1(lv, l), v.f1(lv, l));
  InternalFunctor out{u.dom, PB.P, make_morphism(u.dom.X0, PB.P.X0, std::move(m0)),
                      make_morphism(u.dom.X1, PB.P.X1, std::move(m1))};
  auto bad = validate_internal_functor(out);
  if (!bad.empty()) throw ConeMismatch("mediate_internal: " + bad.front());
  return out;
}

// ---------------------------------------------------------------------------
// (Cof, TrivFib) factorization

struct CofTrivFib {
  InternalFunctor f;      // X -> Y
  InternalCategory E;     // E(f)
  InternalFunctor C;      // X -> E(f), complemented inclusion on objects
  InternalFunctor TF;     // E(f) -> Y, split epi on objects + fully faithful
  CoproductData obj_sum;  // X0 + Y0
  PullbackData mor_pb;    // E(f)_1 with projections to (E0 x E0) and Y1
};

inline CofTrivFib factorize_cof_trivfib(const InternalFunctor& f) {
  const auto& X = f.dom;
  const auto& Y = f.cod;
  CofTrivFib R;
  R.f = f;
  R.obj_sum = coproduct(X.X0, Y.X0);
  BaseObject E0 = R.obj_sum.obj;
  BaseMorphism TF0 = copair(R.obj_sum, f.f0, identity(Y.X0));
  ProductData P00 = product(E0, E0);
  ProductData PY = product(Y.X0, Y.X0);
  BaseMorphism q = product_map(P00, PY, TF0, TF0);
  BaseMorphism endsY = pair_into_product(PY, Y.d1, Y.d0);
  R.mor_pb = pullback(q, endsY);
  BaseObject E1 = R.mor_pb.obj;
  BaseMorphism d1 = compose(P00.p1, R.mor_pb.p1);
  BaseMorphism d0 = compose(P00.p2, R.mor_pb.p1);
  BaseMorphism TF1 = R.mor_pb.p2;
  std::map<std::string, std::map<std::string, std::string>> it;
  for (const auto& [lv, e] : all_elements(E0))
    it[lv][e] = pair_label(pair_label(e, e), Y.id_of(lv, TF0(lv, e)));
  BaseMorphism i = make_morphism(E0, E1, std::move(it));
  auto comp = [d1, d0, TF1, &Y](const std::string& lv, const std::string& g,
                                const std::string& fa) {
    return pair_label(pair_label(d1(lv, fa), d0(lv, g)),
                      Y.comp(lv, TF1(lv, g), TF1(lv, fa)));
  };
  if (X.groupoid && Y.groupoid) {
    auto inv = [d1, d0, TF1, &Y](const std::string& lv, const std::string& a) {
      return pair_label(pair_label(d0(lv, a), d1(lv, a)),
                        Y.inv_of(lv, TF1(lv, a)));
    };
    R.E = assemble_category(E0, E1, d1, d0, i, comp, true, inv);
  } else {
    R.E = assemble_category(E0, E1, d1, d0, i, comp);
  }
  // C(f): x -> l/x, x1 -> ((l/d1 x1, l/d0 x1), f1 x1)
  std::map<std::string, std::map<std::string, std::string>> c1;
  for (const auto& [lv, x1] : all_elements(X.X1))
    c1[lv][x1] = pair_label(pair_label("l/" + X.dom_of(lv, x1),
                                       "l/" + X.cod_of(lv, x1)),
                            f.f1(lv, x1));
  R.C = {X, R.E, R.obj_sum.i1, make_morphism(X.X1, R.E.X1, std::move(c1))};
  R.TF = {R.E, Y, TF0, TF1};
  return R;
}

// Functorial action E(u,v): E(f) -> E(g) for a commuting square (u,v): f -> g.
inline InternalFunctor e_functorial(const CofTrivFib& Ff, const CofTrivFib& Fg,
                                    const InternalFunctor& u, const InternalFunctor& v) {
  if (u.dom != Ff.f.dom || u.cod != Fg.f.dom || v.dom != Ff.f.cod ||
      v.cod != Fg.f.cod)
    throw DomainMismatch("e_functorial: square shape mismatch");
  if (compose_functors(v, Ff.f) != compose_functors(Fg.f, u))
    throw NonCommutingSquare("e_functorial: square does not commute");
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, e] : all_elements(Ff.E.X0))
    m0[lv][e] = is_left_label(e) ? "l/" + u.f0(lv, strip_tag(e))
                                 : "r/" + v.f0(lv, strip_tag(e));
  for (const auto& [lv, l] : all_elements(Ff.E.X1)) {
    std::string e = Ff.E.dom_of(lv, l), ep = Ff.E.cod_of(lv, l);
    std::string y1 = Ff.mor_pb.p2(lv, l);
    m1[lv][l] = pair_label(pair_label(m0[lv][e], m0[lv][ep]), v.f1(lv, y1));
  }
  return {Ff.E, Fg.E, make_morphism(Ff.E.X0, Fg.E.X0, std::move(m0)),
          make_morphism(Ff.E.X1, Fg.E.X1, std::move(m1))};
}

// ---------------------------------------------------------------------------
// Mapping path object and the (TrivCof, Fib) factorization

struct MappingPath {
  InternalCategory Map;  // X x_Y Y^I over the domain projection
  InternalFunctor pX;    // Map(f) -> X
  InternalFunctor cod;   // Map(f) -> Y, the target of the iso component
  InternalFunctor W;     // X -> Map(f)
};

// Square labels in Y^I read "((γ,u),(v,γ'))".
inline std::string square_u(const std::string& sq) {
  return split_pair(split_pair(sq).first).second;
}
inline std::string square_v(const std::string& sq) {
  return split_pair(split_pair(sq).second).first;
}
inline std::string make_square(const std::string& g, const std::string& u,
                               const std::string& v, const std::string& gp) {
  return pair_label(pair_label(g, u), pair_label(v, gp));
}

inline MappingPath mapping_path_object(const InternalFunctor& f) {
  const auto& X = f.dom;
  const auto& Y = f.cod;
  MappingPath M;
  // Build X x_Y Y^I directly instead of materializing Y^I: an object is a
  // pair (x, γ) with γ an iso out of f0 x, an arrow pairs x1 with a square
  // whose u-component is f1 x1; the fourth side is forced, v = γ' ∘ u ∘ γ⁻¹.
  IsoData I = iso_object(Y);
  std::map<std::string, std::map<std::string, std::vector<std::string>>> by_dom;
  for (const auto& [lv, a] : all_elements(I.iso1))
    by_dom[lv][Y.dom_of(lv, a)].push_back(a);
  std::map<std::string, std::vector<std::string>> lv0, lv1;
  std::map<std::string, std::map<std::string, std::string>> d1t, d0t, it;
  for (const auto& io : Y.X0.base->index.objects) {
    auto& o0 = lv0[io];
    auto& o1 = lv1[io];
    for (const auto& x : X.X0.levels.at(io)) {
      for (const auto& a : by_dom[io][f.f0(io, x)]) {
        std::string l = pair_label(x, a);
        o0.push_back(l);
        it[io][l] = pair_label(
            X.id_of(io, x),
            make_square(a, Y.id_of(io, Y.dom_of(io, a)),
                        Y.id_of(io, Y.cod_of(io, a)), a));
      }
    }
    for (const auto& x1 : X.X1.levels.at(io)) {
      std::string u = f.f1(io, x1);
      std::string xd = X.dom_of(io, x1), xc = X.cod_of(io, x1);
      for (const auto& g : by_dom[io][Y.dom_of(io, u)]) {
        std::string ug = Y.comp(io, u, I.inverse(io, g));
        for (const auto& gp : by_dom[io][Y.cod_of(io, u)]) {
          std::string l =
              pair_label(x1, make_square(g, u, Y.comp(io, gp, ug), gp));
          o1.push_back(l);
          d1t[io][l] = pair_label(xd, g);
          d0t[io][l] = pair_label(xc, gp);
        }
      }
    }
    std::sort(o0.begin(), o0.end());
    std::sort(o1.begin(), o1.end());
  }
  std::map<std::string, std::map<std::string, std::string>> r0, r1;
  for (const auto& u : Y.X0.base->index.arrows) {
    if (Y.X0.base->index.is_identity(u.name)) continue;
    r0[u.name];
    r1[u.name];
    for (const auto& l : lv0.at(u.cod)) {
      auto [x, a] = split_pair(l);
      r0[u.name][l] = pair_label(X.X0.restrict(u.name, x),
                                 Y.X1.restrict(u.name, a));
    }
    for (const auto& l : lv1.at(u.cod)) {
      auto [x1, sq] = split_pair(l);
      auto [ga, vb] = split_pair(sq);
      auto [g, uu] = split_pair(ga);
      auto [v, gp] = split_pair(vb);
      r1[u.name][l] = pair_label(
          X.X1.restrict(u.name, x1),
          make_square(Y.X1.restrict(u.name, g), Y.X1.restrict(u.name, uu),
                      Y.X1.restrict(u.name, v), Y.X1.restrict(u.name, gp)));
    }
  }
  BaseObject M0 = make_object(Y.X0.base, std::move(lv0), std::move(r0));
  BaseObject M1 = make_object(Y.X0.base, std::move(lv1), std::move(r1));
  BaseMorphism d1 = make_morphism(M1, M0, std::move(d1t));
  BaseMorphism d0 = make_morphism(M1, M0, std::move(d0t));
  BaseMorphism i = make_morphism(M0, M1, std::move(it));
  auto comp = [&X, &Y](const std::string& lv, const std::string& q,
                       const std::string& p) {
    auto [px1, psq] = split_pair(p);
    auto [qx1, qsq] = split_pair(q);
    auto [pga, pvb] = split_pair(psq);
    auto [qga, qvb] = split_pair(qsq);
    auto [pg, pu] = split_pair(pga);
    auto [pv, pgp] = split_pair(pvb);
    auto [qg, qu] = split_pair(qga);
    auto [qv, qgp] = split_pair(qvb);
    (void)pgp;
    (void)qg;
    return pair_label(X.comp(lv, qx1, px1),
                      make_square(pg, Y.comp(lv, qu, pu), Y.comp(lv, qv, pv),
                                  qgp));
  };
  if (X.groupoid && Y.groupoid) {
    auto inv = [&X, &Y](const std::string& lv, const std::string& p) {
      auto [x1, sq] = split_pair(p);
      auto [ga, vb] = split_pair(sq);
      auto [g, uu] = split_pair(ga);
      auto [v, gp] = split_pair(vb);
      return pair_label(X.inv_of(lv, x1),
                        make_square(gp, Y.inv_of(lv, uu), Y.inv_of(lv, v), g));
    };
    M.Map = assemble_category(M0, M1, d1, d0, i, comp, true, inv);
  } else {
    M.Map = assemble_category(M0, M1, d1, d0, i, comp);
  }
  std::map<std::string, std::map<std::string, std::string>> px0, px1t, c0, c1;
  for (const auto& [lv, l] : all_elements(M.Map.X0)) {
    auto [x, a] = split_pair(l);
    px0[lv][l] = x;
    c0[lv][l] = Y.cod_of(lv, a);
  }
  for (const auto& [lv, l] : all_elements(M.Map.X1)) {
    auto [x1, sq] = split_pair(l);
    px1t[lv][l] = x1;
    c1[lv][l] = square_v(sq);
  }
  M.pX = {M.Map, X, make_morphism(M.Map.X0, X.X0, std::move(px0)),
          make_morphism(M.Map.X1, X.X1, std::move(px1t))};
  M.cod = {M.Map, Y, make_morphism(M.Map.X0, Y.X0, std::move(c0)),
           make_morphism(M.Map.X1, Y.X1, std::move(c1))};
  // W(f): x |-> (x, id-iso at f0 x)
  std::map<std::string, std::map<std::string, std::string>> w0, w1;
  for (const auto& [lv, x] : all_elements(X.X0))
    w0[lv][x] = pair_label(x, Y.id_of(lv, f.f0(lv, x)));
  for (const auto& [lv, x1] : all_elements(X.X1)) {
    std::string fid1 = Y.id_of(lv, f.f0(lv, X.dom_of(lv, x1)));
    std::string fid0 = Y.id_of(lv, f.f0(lv, X.cod_of(lv, x1)));
    w1[lv][x1] =
        pair_label(x1, make_square(fid1, f.f1(lv, x1), f.f1(lv, x1), fid0));
  }
  M.W = {X, M.Map, make_morphism(X.X0, M.Map.X0, std::move(w0)),
         make_morphism(X.X1, M.Map.X1, std::move(w1))};
  return M;
}

struct TrivCofFib {
  InternalFunctor f;  // X -> Y
  MappingPath path;
  CofTrivFib inner;    // factorization of W(f)
  InternalFunctor TC;  // X -> E(W f)   (= inner.C)
  InternalFunctor F;   // E(W f) -> Y
};

inline TrivCofFib factorize_trivcof_fib(const InternalFunctor& f) {
  TrivCofFib R;
  R.f = f;
  R.path = mapping_path_object(f);
  R.inner = factorize_cof_trivfib(R.path.W);
  R.TC = R.inner.C;
  R.F = compose_functors(R.path.cod, R.inner.TF);
  return R;
}

// Functorial action Map(u,v): Map(f) -> Map(g).
inline InternalFunctor map_functorial(const MappingPath& Mf, const MappingPath& Mg,
                                      const InternalFunctor& u,
                                      const InternalFunctor& v) {
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(Mf.Map.X0)) {
    auto [x, g] = split_pair(l);
    m0[lv][l] = pair_label(u.f0(lv, x), v.f1(lv, g));
  }
  for (const auto& [lv, l] : all_elements(Mf.Map.X1)) {
    auto [x1, sq] = split_pair(l);
    auto [gu, vg] = split_pair(sq);
    auto [g, uu] = split_pair(gu);
    auto [vv, gp] = split_pair(vg);
    m1[lv][l] = pair_label(u.f1(lv, x1),
                           make_square(v.f1(lv, g), v.f1(lv, uu), v.f1(lv, vv),
                                       v.f1(lv, gp)));
  }
  return {Mf.Map, Mg.Map, make_morphism(Mf.Map.X0, Mg.Map.X0, std::move(m0)),
          make_morphism(Mf.Map.X1, Mg.Map.X1, std::move(m1))};
}

// E(W(u,v)): E(W f) -> E(W g) for a commuting square (u,v): f -> g.
inline InternalFunctor ew_functorial(const TrivCofFib& Tf, const TrivCofFib& Tg,
                                     const InternalFunctor& u,
                                     const InternalFunctor& v) {
  if (compose_functors(v, Tf.f) != compose_functors(Tg.f, u))
    throw NonCommutingSquare("ew_functorial: square does not commute");
  return e_functorial(Tf.inner, Tg.inner, u, map_functorial(Tf.path, Tg.path, u, v));
}

// ---------------------------------------------------------------------------
// Structure maps

// μ^f: E(TF f) -> E(f); fold on objects, identity on the Y1 component.
struct TFMultiplication {
  CofTrivFib fact;    // of f
  CofTrivFib fact2;   // of TF(f)
  InternalFunctor mu;  // E(TF f) -> E(f)
};

inline TFMultiplication tf_multiplication(const InternalFunctor& f) {
  TFMultiplication R;
  R.fact = factorize_cof_trivfib(f);
  R.fact2 = factorize_cof_trivfib(R.fact.TF);
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, e] : all_elements(R.fact2.E.X0))
    m0[lv][e] = is_left_label(e) ? strip_tag(e) : "r/" + strip_tag(e);
  for (const auto& [lv, l] : all_elements(R.fact2.E.X1)) {
    std::string e = R.fact2.E.dom_of(lv, l), ep = R.fact2.E.cod_of(lv, l);
    m1[lv][l] = pair_label(pair_label(m0[lv][e], m0[lv][ep]),
                           R.fact2.mor_pb.p2(lv, l));
  }
  R.mu = {R.fact2.E, R.fact.E, make_morphism(R.fact2.E.X0, R.fact.E.X0, std::move(m0)),
          make_morphism(R.fact2.E.X1, R.fact.E.X1, std::move(m1))};
  return R;
}

// δ^f: E(f) -> E(C f); X-summand to the first X0 copy, morphisms by mediation.
struct CComultiplication {
  CofTrivFib fact;      // of f
  CofTrivFib factC;     // of C(f)
  InternalFunctor delta;  // E(f) -> E(C f)
};

inline CComultiplication c_comultiplication(const InternalFunctor& f) {
  CComultiplication R;
  R.fact = factorize_cof_trivfib(f);
  R.factC = factorize_cof_trivfib(R.fact.C);
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, e] : all_elements(R.fact.E.X0))
    m0[lv][e] = is_left_label(e) ? "l/" + strip_tag(e) : "r/" + e;
  for (const auto& [lv, l] : all_elements(R.fact.E.X1)) {
    std::string e = R.fact.E.dom_of(lv, l), ep = R.fact.E.cod_of(lv, l);
    m1[lv][l] = pair_label(pair_label(m0[lv][e], m0[lv][ep]), l);
  }
  R.delta = {R.fact.E, R.factC.E,
             make_morphism(R.fact.E.X0, R.factC.E.X0, std::move(m0)),
             make_morphism(R.fact.E.X1, R.factC.E.X1, std::move(m1))};
  return R;
}

// β: E(W f) -> X, identity on the X-summand and the X-projection on Map(f);
// on morphisms it reads off the X-component of the Map(f) part.
inline InternalFunctor beta_functor(const TrivCofFib& T) {
  const auto& X = T.f.dom;
  std::map<std::string, std::map<std::string, std::string>> b0, b1;
  for (const auto& [lv, e] : all_elements(T.inner.E.X0))
    b0[lv][e] = is_left_label(e) ? strip_tag(e)
                                 : split_pair(strip_tag(e)).first;
  for (const auto& [lv, l] : all_elements(T.inner.E.X1)) {
    std::string m1 = T.inner.mor_pb.p2(lv, l);  // element of Map(f)_1
    b1[lv][l] = split_pair(m1).first;           // its X1 component
  }
  return {T.inner.E, X, make_morphism(T.inner.E.X0, X.X0, std::move(b0)),
          make_morphism(T.inner.E.X1, X.X1, std::move(b1))};
}

// κ^f: E(W F f) -> E(W f).  Objects by the copair with
// τ(e, δ) = (β0 e, δ∘γ_e), where γ_e is the iso carried by e; morphisms
// through E(W f)_1's pullback presentation, with the Map(f)_1 component
// built from β's morphism part and the pasted square.
struct FMultiplication {
  TrivCofFib fact;     // of f
  TrivCofFib fact2;    // of F(f)
  InternalFunctor kappa;  // E(W F f) -> E(W f)
};

inline FMultiplication f_multiplication(const InternalFunctor& f) {
  FMultiplication R;
  R.fact = factorize_trivcof_fib(f);
  R.fact2 = factorize_trivcof_fib(R.fact.F);
  const auto& Y = f.cod;
  InternalFunctor beta = beta_functor(R.fact);
  const BaseMorphism& tfw0 = R.fact.inner.TF.f0;  // E(W f)_0 -> Map(f)_0
  // the iso from f0(β0 e) to F(f)_0(e) carried by e
  auto gamma_of = [&](const std::string& lv, const std::string& e) {
    return split_pair(tfw0(lv, e)).second;
  };
  // τ on objects: Map(F f)_0 -> Map(f)_0, (e, δ) |-> (β0 e, δ∘γ_e)
  auto tau0 = [&](const std::string& lv, const std::string& l) {
    auto [e, d] = split_pair(l);
    return pair_label(beta.f0(lv, e), Y.comp(lv, d, gamma_of(lv, e)));
  };
  // τ on morphisms: (ε1, ((δ,U),(V,δ'))) |-> (β1 ε1, pasted square)
  auto tau1 = [&](const std::string& lv, const std::string& l) {
    auto [e1, sq] = split_pair(l);
    auto [du, vd] = split_pair(sq);
    std::string d = split_pair(du).first;
    std::string V = split_pair(vd).first;
    std::string dp = split_pair(vd).second;
    std::string e = R.fact.inner.E.dom_of(lv, e1);
    std::string ep = R.fact.inner.E.cod_of(lv, e1);
    std::string b1 = beta.f1(lv, e1);
    return pair_label(b1, make_square(Y.comp(lv, d, gamma_of(lv, e)),
                                      f.f1(lv, b1), V,
                                      Y.comp(lv, dp, gamma_of(lv, ep))));
  };
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, e] : all_elements(R.fact2.inner.E.X0))
    m0[lv][e] = is_left_label(e) ? strip_tag(e) : "r/" + tau0(lv, strip_tag(e));
  for (const auto& [lv, l] : all_elements(R.fact2.inner.E.X1)) {
    std::string e = R.fact2.inner.E.dom_of(lv, l);
    std::string ep = R.fact2.inner.E.cod_of(lv, l);
    std::string M1 = R.fact2.inner.mor_pb.p2(lv, l);  // element of Map(F f)_1
    m1[lv][l] = pair_label(pair_label(m0[lv][e], m0[lv][ep]), tau1(lv, M1));
  }
  R.kappa = {R.fact2.inner.E, R.fact.inner.E,
             make_morphism(R.fact2.inner.E.X0, R.fact.inner.E.X0, std::move(m0)),
             make_morphism(R.fact2.inner.E.X1, R.fact.inner.E.X1, std::move(m1))};
  return R;
}

// Retract presentation (TC(f), r, j, β̄) of the left factor as an algebraic
// trivial cofibration: r = β, β̄ is the canonical comparison with identity
// components on the image of TC(f).
inline AlgTrivCofibration tc_retract_presentation(const TrivCofFib& T) {
  const auto& X = T.f.dom;
  const auto& Y = T.f.cod;
  InternalFunctor r = beta_functor(T);
  auto j = complemented_decomposition(T.TC.f0);
  if (!j) throw InvalidStructure("tc_retract_presentation: TC(f) not complemented");
  std::map<std::string, std::map<std::string, std::string>> bt;
  for (const auto& [lv, e] : all_elements(T.inner.E.X0)) {
    if (is_left_label(e)) {
      bt[lv][e] = T.inner.E.id_of(lv, e);
      continue;
    }
    // e = r/(x,γ): component l/x -> r/(x,γ) with Map(f) part
    // (id_x, square (id_{f0 x}, id, γ, γ)) from W(x) to (x, γ).
    auto [x, g] = split_pair(strip_tag(e));
    std::string fid = Y.id_of(lv, T.f.f0(lv, x));
    std::string map1 = pair_label(X.id_of(lv, x), make_square(fid, fid, g, g));
    bt[lv][e] = pair_label(pair_label("l/" + x, e), map1);
  }
  return AlgTrivCofibration{T.TC, r, *j,
                            make_morphism(T.inner.E.X0, T.inner.E.X1, std::move(bt))};
}

}  // namespace icat
