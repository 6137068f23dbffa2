#pragma once

// Classification of internal functors into the model-structure classes:
// isofibrations (cleavage search), cofibrations (complemented inclusion on
// objects), trivial fibrations (split epi on objects + fully faithful), weak
// equivalences (fully faithful + eso splitting), trivial cofibrations
// (retraction + invertible comparison), plus generating sets and brute-force
// lifting.  Also hosts the four "morphism with chosen structure" records that
// the classifiers produce.

#include "internal_cat.hpp"

namespace icat {

// ---------------------------------------------------------------------------
// Cleavages.  Orientation (fixed): lifts are indexed by pairs (x, γ) with
// d1(γ) = f0(x), and the lift k(x, γ) is an isomorphism of X with domain x
// lying over γ; so d1∘k = x-projection and f1∘k = γ-projection.

struct Cleavage {
  PullbackData pb;  // X0 x_{Y0} Iso(Y)_1 over (f0, d1), labels "(x,γ)"
  BaseMorphism k;   // pb.obj -> X1

  std::string lift(const std::string& lv, const std::string& x,
                   const std::string& gamma) const {
    return k(lv, pair_label(x, gamma));
  }
};

struct ClovenIsofibration {
  InternalFunctor f;
  Cleavage k;
};

inline std::vector<std::string> validate_cloven(const ClovenIsofibration& c) {
  std::vector<std::string> bad;
  for (auto& v : validate_internal_functor(c.f)) bad.push_back("f: " + v);
  for (auto& v : check_morphism(c.k.k)) bad.push_back("k: " + v);
  if (!bad.empty()) return bad;
  const auto& X = c.f.dom;
  const auto& Y = c.f.cod;
  IsoData IX = iso_object(X);
  IsoData IY = iso_object(Y);
  // domain carrier: X0 x_{Y0} Iso(Y)_1 over d1
  PullbackData want = pullback(c.f.f0, compose(Y.d1, IY.incl));
  if (c.k.pb.obj != want.obj || c.k.k.dom != want.obj)
    bad.push_back("cleavage domain is not X0 x_{Y0} Iso(Y)_1");
  if (c.k.k.cod != X.X1) bad.push_back("cleavage codomain is not X1");
  if (!bad.empty()) return bad;
  for (const auto& [lv, l] : all_elements(want.obj)) {
    std::string x = want.p1(lv, l), gamma = want.p2(lv, l);
    std::string lift = c.k.k(lv, l);
    if (!IX.iso1.has_label(lv, lift)) bad.push_back("lift not invertible at " + l);
    if (X.dom_of(lv, lift) != x) bad.push_back("lift has wrong domain at " + l);
    if (c.f.f1(lv, lift) != gamma) bad.push_back("lift not over γ at " + l);
  }
  return bad;
}

// Retraction-with-comparison presentation of a trivial cofibration g: A -> Y.
// Normalization (needed for the coalgebra translation to be a bijection):
// β's component at every object in the image of g0 is an identity.
struct AlgTrivCofibration {
  InternalFunctor g;  // A -> Y
  InternalFunctor r;  // Y -> A with r∘g = id
  Decomposition j;    // of g0
  BaseMorphism beta;  // component Y0 -> Y1 of g∘r ⇒ id_Y
};

inline std::vector<std::string> validate_algtrivcof(const AlgTrivCofibration& t) {
  std::vector<std::string> bad;
  for (auto& v : validate_internal_functor(t.g)) bad.push_back("g: " + v);
  for (auto& v : validate_internal_functor(t.r)) bad.push_back("r: " + v);
  if (!bad.empty()) return bad;
  if (t.r.dom != t.g.cod || t.r.cod != t.g.dom) {
    bad.push_back("r is not a map cod(g) -> dom(g)");
    return bad;
  }
  auto rg = compose_functors(t.r, t.g);
  if (rg != identity_functor(t.g.dom)) bad.push_back("r∘g ≠ id");
  try {
    if (!equal_morphisms(compose(t.j.witness, t.j.copr.i1), t.g.f0))
      bad.push_back("j does not restrict to g0");
    if (!invert(t.j.witness).has_value()) bad.push_back("j witness not invertible");
  } catch (const Error& e) {
    bad.push_back(std::string("j: ") + e.what());
  }
  NatIso beta{compose_functors(t.g, t.r), identity_functor(t.g.cod), t.beta};
  for (auto& v : validate_nat_iso(beta)) bad.push_back("β: " + v);
  if (!bad.empty()) return bad;
  const auto& Y = t.g.cod;
  for (const auto& [lv, a] : all_elements(t.g.dom.X0)) {
    std::string ga = t.g.f0(lv, a);
    if (t.beta(lv, ga) != Y.id_of(lv, ga))
      bad.push_back("β not an identity on the image at " + a);
  }
  return bad;
}

// Split-epi equivalence presentation (f, s, β) with f∘s = id and β: id ⇒ s∘f.
// Normalization: f1∘β = i∘f0 (β lies in the fibers of f).
struct AlgSplitEpiEq {
  InternalFunctor f;  // X -> Y
  InternalFunctor s;  // Y -> X with f∘s = id
  BaseMorphism beta;  // component X0 -> X1 of id_X ⇒ s∘f
};

inline std::vector<std::string> validate_splitepieq(const AlgSplitEpiEq& e) {
  std::vector<std::string> bad;
  for (auto& v : validate_internal_functor(e.f)) bad.push_back("f: " + v);
  for (auto& v : validate_internal_functor(e.s)) bad.push_back("s: " + v);
  if (!bad.empty()) return bad;
  if (e.s.dom != e.f.cod || e.s.cod != e.f.dom) {
    bad.push_back("s is not a map cod(f) -> dom(f)");
    return bad;
  }
  if (compose_functors(e.f, e.s) != identity_functor(e.f.cod))
    bad.push_back("f∘s ≠ id");
  NatIso beta{identity_functor(e.f.dom), compose_functors(e.s, e.f), e.beta};
  for (auto& v : validate_nat_iso(beta)) bad.push_back("β: " + v);
  if (!bad.empty()) return bad;
  const auto& X = e.f.dom;
  const auto& Y = e.f.cod;
  for (const auto& [lv, x] : all_elements(X.X0))
    if (e.f.f1(lv, e.beta(lv, x)) != Y.id_of(lv, e.f.f0(lv, x)))
      bad.push_back("β not vertical over Y at " + x);
  return bad;
}

struct AlgCompInclObj {
  InternalFunctor f;
  Decomposition j;  // of f0
};

inline std::vector<std::string> validate_compincl(const AlgCompInclObj& a) {
  std::vector<std::string> bad;
  for (auto& v : validate_internal_functor(a.f)) bad.push_back("f: " + v);
  if (!bad.empty()) return bad;
  try {
    if (!equal_morphisms(compose(a.j.witness, a.j.copr.i1), a.f.f0))
      bad.push_back("j does not restrict to f0");
    if (!invert(a.j.witness).has_value()) bad.push_back("j witness not invertible");
  } catch (const Error& e) {
    bad.push_back(std::string("j: ") + e.what());
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Classifiers

inline std::optional<Cleavage> is_isofibration(const InternalFunctor& f) {
  const auto& X = f.dom;
  const auto& Y = f.cod;
  IsoData IX = iso_object(X);
  IsoData IY = iso_object(Y);
  PullbackData pb = pullback(f.f0, compose(Y.d1, IY.incl));
  // canonical map Iso(X)_1 -> X0 x_{Y0} Iso(Y)_1, ξ |-> (d1 ξ, f1 ξ)
  std::map<std::string, std::map<std::string, std::string>> ft;
  for (const auto& [lv, xi] : all_elements(IX.iso1)) ft[lv][xi] = f.f1(lv, xi);
  BaseMorphism f_on_isos = make_morphism(IX.iso1, IY.iso1, std::move(ft));
  BaseMorphism u = mediate(pb, compose(X.d1, IX.incl), f_on_isos);
  auto sec = is_split_epi(u);
  if (!sec) return std::nullopt;
  return Cleavage{pb, compose(IX.incl, *sec)};
}

inline std::optional<Decomposition> is_cofibration(const InternalFunctor& f) {
  return complemented_decomposition(f.f0);
}

struct TrivFibWitness {
  BaseMorphism object_splitting;  // Y0 -> X0
  FFWitness ff;
};

inline std::optional<TrivFibWitness> is_trivial_fibration(const InternalFunctor& f) {
  auto s0 = is_split_epi(f.f0);
  if (!s0) return std::nullopt;
  auto ff = is_fully_faithful(f);
  if (!ff) return std::nullopt;
  return TrivFibWitness{*s0, *ff};
}

// Mapping-path object carrier X0 x_{Y0} Iso(Y)_1 (same pullback shape as a
// cleavage domain) with its eso splitting: s(y) = (x, γ: f0 x -> y).
struct EsoSplitting {
  PullbackData map0;  // X0 x_{Y0} Iso(Y)_1 over (f0, d1)
  BaseMorphism s;     // Y0 -> map0.obj with d0∘(iso-projection)∘s = id
};

struct WeakEqWitness {
  FFWitness ff;
  EsoSplitting eso;
};

inline std::optional<WeakEqWitness> is_weak_equivalence(const InternalFunctor& f) {
  auto ff = is_fully_faithful(f);
  if (!ff) return std::nullopt;
  const auto& Y = f.cod;
  IsoData IY = iso_object(Y);
  PullbackData map0 = pullback(f.f0, compose(Y.d1, IY.incl));
  auto s = search_natural(
      Y.X0, map0.obj, [&](const std::string& lv, const std::string& y) {
        std::vector<std::string> cands;
        for (const auto& l : map0.obj.levels.at(lv))
          if (Y.cod_of(lv, map0.p2(lv, l)) == y) cands.push_back(l);
        return cands;
      });
  if (!s) return std::nullopt;
  return WeakEqWitness{*ff, EsoSplitting{map0, *s}};
}

inline std::optional<AlgTrivCofibration> is_trivial_cofibration(
    const InternalFunctor& g) {
  auto j = complemented_decomposition(g.f0);
  if (!j) return std::nullopt;
  auto ff = is_fully_faithful(g);
  if (!ff) return std::nullopt;
  const auto& A = g.dom;
  const auto& Y = g.cod;
  IsoData IY = iso_object(Y);
  PullbackData map0 = pullback(g.f0, compose(Y.d1, IY.incl));
  // g0 is complemented, hence injective: record object preimages
  std::map<std::pair<std::string, std::string>, std::string> pre;
  for (const auto& [lv, a] : all_elements(A.X0)) pre[{lv, g.f0(lv, a)}] = a;
  // Eso splitting normalized to the identity iso at image points, so the
  // derived retraction satisfies r∘g = id on the nose.
  auto s = search_natural(
      Y.X0, map0.obj, [&](const std::string& lv, const std::string& y) {
        std::vector<std::string> cands;
        auto it = pre.find({lv, y});
        if (it != pre.end()) {
          cands.push_back(pair_label(it->second, Y.id_of(lv, y)));
          return cands;
        }
        for (const auto& l : map0.obj.levels.at(lv))
          if (Y.cod_of(lv, map0.p2(lv, l)) == y) cands.push_back(l);
        return cands;
      });
  if (!s) return std::nullopt;
  BaseMorphism pick = compose(map0.p2, *s);  // y |-> (β_y : g r y -> y) in Iso(Y)
  BaseMorphism r0 = compose(map0.p1, *s);
  BaseMorphism beta = compose(IY.incl, pick);
  // r on arrows: conjugate by the connecting isos, then pull back along g
  std::map<std::string, std::map<std::string, std::string>> r1t;
  for (const auto& [lv, d] : all_elements(Y.X1)) {
    std::string y = Y.dom_of(lv, d), yp = Y.cod_of(lv, d);
    std::string conj =
        Y.comp(lv, IY.inverse(lv, pick(lv, yp)), Y.comp(lv, d, beta(lv, y)));
    r1t[lv][d] = ff_preimage(*ff, lv, r0(lv, y), r0(lv, yp), conj);
  }
  InternalFunctor r{Y, A, r0, make_morphism(Y.X1, A.X1, std::move(r1t))};
  AlgTrivCofibration t{g, r, *j, beta};
  if (validate_algtrivcof(t).empty()) return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification report

struct ClassificationReport {
  std::optional<Decomposition> cofibration;
  std::optional<Cleavage> fibration;
  std::optional<WeakEqWitness> weak_equivalence;
  std::optional<TrivFibWitness> trivial_fibration;
  std::optional<AlgTrivCofibration> trivial_cofibration;
};

inline ClassificationReport classify(const InternalFunctor& f) {
  ClassificationReport r;
  r.cofibration = is_cofibration(f);
  r.fibration = is_isofibration(f);
  r.weak_equivalence = is_weak_equivalence(f);
  r.trivial_fibration = is_trivial_fibration(f);
  r.trivial_cofibration = is_trivial_cofibration(f);
  return r;
}

// ---------------------------------------------------------------------------
// Generating sets

struct GeneratingSets {
  std::vector<InternalFunctor> I_maps;  // {∅ -> 1, 1+1 -> 2, P -> 2}
  std::vector<InternalFunctor> J_maps;  // {1 -> I}
};

namespace detail {

inline FiniteCategory empty_cat() { return FiniteCategory{}; }

inline FiniteCategory parallel_pair_cat() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"p", "0", "1"}, {"q", "0", "1"}};
  c.identity = {{"0", "id0"}, {"1", "id1"}};
  c.comp = {{{"id0", "id0"}, "id0"}, {{"id1", "id1"}, "id1"},
            {{"p", "id0"}, "p"},     {{"id1", "p"}, "p"},
            {{"q", "id0"}, "q"},     {{"id1", "q"}, "q"}};
  return c;
}

inline FiniteCategory one_cat() {
  FiniteCategory c;
  c.objects = {"0"};
  c.arrows = {{"id0", "0", "0"}};
  c.identity = {{"0", "id0"}};
  c.comp = {{{"id0", "id0"}, "id0"}};
  return c;
}

inline FiniteCategory two_cat() {
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

inline FiniteCategory iso_cat() {
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

inline FiniteCategory discrete2_cat() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}};
  c.identity = {{"0", "id0"}, {"1", "id1"}};
  c.comp = {{{"id0", "id0"}, "id0"}, {{"id1", "id1"}, "id1"}};
  return c;
}

// Constant-labels functor between underlined categories.
inline InternalFunctor underline_functor(const InternalCategory& X,
                                         const InternalCategory& Y,
                                         const std::map<std::string, std::string>& on_obj,
                                         const std::map<std::string, std::string>& on_arr) {
  std::map<std::string, std::map<std::string, std::string>> m0, m1;
  for (const auto& [lv, l] : all_elements(X.X0)) m0[lv][l] = on_obj.at(l);
  for (const auto& [lv, l] : all_elements(X.X1)) m1[lv][l] = on_arr.at(l);
  return {X, Y, make_morphism(X.X0, Y.X0, std::move(m0)),
          make_morphism(X.X1, Y.X1, std::move(m1))};
}

}  // namespace detail

inline GeneratingSets generating_sets(const BasePtr& base) {
  InternalCategory empty = underline(detail::empty_cat(), base);
  InternalCategory one = underline(detail::one_cat(), base);
  InternalCategory two = underline(detail::two_cat(), base);
  InternalCategory d2 = underline(detail::discrete2_cat(), base);
  InternalCategory par = underline(detail::parallel_pair_cat(), base);
  InternalCategory iw = underline(detail::iso_cat(), base);
  GeneratingSets G;
  G.I_maps.push_back({empty, one, make_morphism(empty.X0, one.X0, {}),
                      make_morphism(empty.X1, one.X1, {})});
  G.I_maps.push_back(detail::underline_functor(
      d2, two, {{"0", "0"}, {"1", "1"}}, {{"id0", "id0"}, {"id1", "id1"}}));
  G.I_maps.push_back(detail::underline_functor(
      par, two, {{"0", "0"}, {"1", "1"}},
      {{"id0", "id0"}, {"id1", "id1"}, {"p", "a"}, {"q", "a"}}));
  G.J_maps.push_back(
      detail::underline_functor(one, iw, {{"0", "0"}}, {{"id0", "id0"}}));
  // Over a nontrivial index the constant generators only probe global
  // points, which some objects (e.g. a free orbit) do not have, so the
  // detecting family also contains each generator tensored with every
  // representable presheaf.  Lifting against a tensored generator is, by the
  // Yoneda correspondence, exactly a levelwise lifting problem.
  if (!base->finite_sets) {
    const FiniteCategory& ix = base->index;
    auto representable = [&](const std::string& e) {
      std::map<std::string, std::vector<std::string>> lv;
      std::map<std::string, std::map<std::string, std::string>> r;
      for (const auto& d : ix.objects) lv[d] = ix.hom(d, e);
      for (const auto& u : ix.arrows) {
        if (ix.is_identity(u.name)) continue;
        for (const auto& g : ix.hom(u.cod, e))
          r[u.name][g] = ix.compose(g, u.name);
      }
      return make_object(base, std::move(lv), std::move(r));
    };
    auto tensor = [](const InternalCategory& D, const InternalFunctor& j) {
      InternalCategory P1 = product_internal(D, j.dom);
      InternalCategory P2 = product_internal(D, j.cod);
      return pair_functors(P2, product_proj1(P1, D, j.dom),
                           compose_functors(j, product_proj2(P1, D, j.dom)));
    };
    std::vector<InternalFunctor> Ibase = G.I_maps, Jbase = G.J_maps;
    for (const auto& e : ix.objects) {
      BaseObject R = representable(e);
      BaseMorphism idR = identity(R);
      InternalCategory D = assemble_category(
          R, R, idR, idR, idR,
          [](const std::string&, const std::string& g, const std::string&) {
            return g;
          },
          true, [](const std::string&, const std::string& a) { return a; });
      for (const auto& j : Ibase) G.I_maps.push_back(tensor(D, j));
      for (const auto& j : Jbase) G.J_maps.push_back(tensor(D, j));
    }
  }
  return G;
}

// ---------------------------------------------------------------------------
// Lifting by search

inline std::optional<InternalFunctor> find_filler(const InternalFunctor& l,
                                                  const InternalFunctor& r,
                                                  const InternalFunctor& top,
                                                  const InternalFunctor& bottom) {
  if (top.dom != l.dom || top.cod != r.dom || bottom.dom != l.cod ||
      bottom.cod != r.cod)
    throw DomainMismatch("find_filler: square shape mismatch");
  if (compose_functors(r, top) != compose_functors(bottom, l))
    throw NonCommutingSquare("find_filler: square does not commute");
  for (const auto& d : enumerate_functors(l.cod, r.dom))
    if (compose_functors(d, l) == top && compose_functors(r, d) == bottom)
      return d;
  return std::nullopt;
}

inline bool has_rlp(const InternalFunctor& f,
                    const std::vector<InternalFunctor>& generators) {
  for (const auto& l : generators)
    for (const auto& top : enumerate_functors(l.dom, f.dom))
      for (const auto& bottom : enumerate_functors(l.cod, f.cod)) {
        if (compose_functors(f, top) != compose_functors(bottom, l)) continue;
        if (!find_filler(l, f, top, bottom)) return false;
      }
  return true;
}

}  // namespace icat
