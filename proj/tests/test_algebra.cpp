#include <catch_amalgamated.hpp>

#include <icat/algebra.hpp>
#include <icat/corpus.hpp>

#include "helpers.hpp"

using namespace icat;

namespace {
BasePtr S = BaseInstance::sets();
corpus::Fixtures F = corpus::fixtures(S);

InternalFunctor unique_to_T(const InternalCategory& X) {
  auto fs = enumerate_functors(X, F.T);
  REQUIRE(fs.size() == 1);
  return fs[0];
}

InternalCategory empty_cat() { return underline(FiniteCategory{}, S); }

InternalFunctor from_empty_to(const InternalCategory& Y) {
  InternalCategory empty = empty_cat();
  return {empty, Y, make_morphism(empty.X0, Y.X0, {}),
          make_morphism(empty.X1, Y.X1, {})};
}

InternalFunctor pick_point(const InternalCategory& Y, const std::string& o) {
  for (const auto& f : enumerate_functors(F.T, Y))
    if (f.f0("*", "0") == o) return f;
  FAIL("missing functor");
  throw 0;
}

ClovenIsofibration canonical_cloven(const InternalFunctor& f) {
  auto k = is_isofibration(f);
  REQUIRE(k.has_value());
  return {f, *k};
}
}

TEST_CASE("free structures validate") {
  for (const auto& [name, f] :
       {std::pair<std::string, InternalFunctor>{"id_T", identity_functor(F.T)},
        {"IwT", unique_to_T(F.Iw)},
        {"C2T", unique_to_T(F.C2)},
        {"pt0", pick_point(F.Iw, "0")},
        {"emptyT", from_empty_to(F.T)}}) {
    CAPTURE(name);
    CHECK(validate_structure(free_f_algebra(f)).empty());
    CHECK(validate_structure(free_tf_algebra(f)).empty());
    CHECK(validate_structure(free_c_coalgebra(f)).empty());
    CHECK(validate_structure(tc_structure(f)).empty());
  }
}

TEST_CASE("F-algebras and cloven isofibrations") {
  // free algebra on Iw -> T yields a cleavage on F(Iw -> T)
  auto a = free_f_algebra(unique_to_T(F.Iw));
  auto c = f_algebra_to_cloven(a);
  CHECK(validate_cloven(c).empty());

  // identity cloven fibration gives the algebra with the object fold
  auto cid = canonical_cloven(identity_functor(F.T));
  auto aid = cloven_to_f_algebra(cid);
  CHECK(aid.phi.f0("*", "l/0") == "0");
  CHECK(aid.phi.f0("*", "r/(0,id0)") == "0");

  // round trips, both ways, on several instances
  for (const auto& f : {identity_functor(F.T), unique_to_T(F.Iw),
                        identity_functor(F.Iw), unique_to_T(F.C2)}) {
    auto cv = canonical_cloven(f);
    auto alg = cloven_to_f_algebra(cv);
    CHECK(validate_f_algebra(alg).empty());
    auto back = f_algebra_to_cloven(alg);
    CHECK(equal_morphisms(back.k.k, cv.k.k));
  }
  auto round = cloven_to_f_algebra(f_algebra_to_cloven(a));
  CHECK(round.phi == a.phi);
}

TEST_CASE("TF-algebras and algebraic split epi equivalences") {
  auto a = free_tf_algebra(unique_to_T(F.Iw));
  auto e = tf_algebra_to_splitepieq(a);
  CHECK(validate_splitepieq(e).empty());
  auto round = splitepieq_to_tf_algebra(e);
  CHECK(round.phi == a.phi);

  // identity: s = id, beta = identity components
  AlgSplitEpiEq eid{identity_functor(F.Iw), identity_functor(F.Iw),
                    compose(F.Iw.i, identity(F.Iw.X0))};
  REQUIRE(validate_splitepieq(eid).empty());
  auto aid = splitepieq_to_tf_algebra(eid);
  CHECK(validate_tf_algebra(aid).empty());
  auto eround = tf_algebra_to_splitepieq(aid);
  CHECK(eround.s == eid.s);
  CHECK(equal_morphisms(eround.beta, eid.beta));

  // free algebra on C2 -> T exercises a non-trivial automorphism group
  auto a2 = free_tf_algebra(unique_to_T(F.C2));
  auto e2 = tf_algebra_to_splitepieq(a2);
  CHECK(validate_splitepieq(e2).empty());
  CHECK(splitepieq_to_tf_algebra(e2).phi == a2.phi);
}

TEST_CASE("C-coalgebras and complemented inclusions") {
  auto f = from_empty_to(F.T);
  auto d = is_cofibration(f);
  REQUIRE(d.has_value());
  AlgCompInclObj ai{f, *d};
  auto c = compincl_to_c_coalg(ai);
  CHECK(validate_c_coalgebra(c).empty());
  auto back = c_coalg_to_compincl(c);
  CHECK(equal_morphisms(back.j.witness, ai.j.witness));

  // identity: trivial complement
  auto did = is_cofibration(identity_functor(F.Iw));
  REQUIRE(did.has_value());
  AlgCompInclObj aid{identity_functor(F.Iw), *did};
  CHECK(aid.j.complement.total_size() == 0);
  auto cid = compincl_to_c_coalg(aid);
  CHECK(validate_c_coalgebra(cid).empty());
  CHECK(equal_morphisms(c_coalg_to_compincl(cid).j.witness, aid.j.witness));

  // free coalgebra on pt0 round-trips through its presentation
  auto fc = free_c_coalgebra(pick_point(F.Iw, "0"));
  auto p = c_coalg_to_compincl(fc);
  CHECK(compincl_to_c_coalg(p).alpha == fc.alpha);
}

TEST_CASE("TC-coalgebras and algebraic trivial cofibrations") {
  // structure on the left factor, per instance shapes
  auto t1 = tc_structure(identity_functor(F.T));
  CHECK(validate_tc_coalgebra(t1).empty());
  CHECK(t1.fact.f.cod.X0.total_size() == 2);

  auto t2 = tc_structure(unique_to_T(F.Iw));
  CHECK(validate_tc_coalgebra(t2).empty());
  CHECK(t2.fact.f.dom.X0.total_size() == 2);
  CHECK(t2.fact.f.cod.X0.total_size() == 4);

  // round trip through the retract presentation
  for (const auto& f : {identity_functor(F.T), unique_to_T(F.Iw),
                        pick_point(F.Iw, "0")}) {
    auto pres = tc_retract_presentation(factorize_trivcof_fib(f));
    auto coal = algtrivcof_to_tc_coalg(pres);
    CHECK(validate_tc_coalgebra(coal).empty());
    auto back = tc_coalg_to_algtrivcof(coal);
    CHECK(back.r == pres.r);
    CHECK(equal_morphisms(back.beta, pres.beta));
    CHECK(equal_morphisms(back.j.witness, pres.j.witness));
  }

  // endpoint inclusion T -> Iw, structure found by the classifier
  auto t = is_trivial_cofibration(pick_point(F.Iw, "0"));
  REQUIRE(t.has_value());
  auto coal = algtrivcof_to_tc_coalg(*t);
  CHECK(validate_tc_coalgebra(coal).empty());
  auto back = tc_coalg_to_algtrivcof(coal);
  CHECK(back.r == t->r);
  CHECK(equal_morphisms(back.beta, t->beta));

  // identity trivial cofibration: alpha is the canonical section
  auto tid = is_trivial_cofibration(identity_functor(F.Iw));
  REQUIRE(tid.has_value());
  auto cid = algtrivcof_to_tc_coalg(*tid);
  CHECK(cid.alpha.f0("*", "0") == "l/0");
  CHECK(cid.alpha.f0("*", "1") == "l/1");
}

TEST_CASE("derived comultiplication compatibility") {
  CHECK(tc_comultiplication_compatible(tc_structure(identity_functor(F.T))));
  auto t = is_trivial_cofibration(pick_point(F.Iw, "0"));
  REQUIRE(t.has_value());
  CHECK(tc_comultiplication_compatible(algtrivcof_to_tc_coalg(*t)));
}

TEST_CASE("canonical_lift") {
  auto l = pick_point(F.Iw, "0");
  auto tl = is_trivial_cofibration(l);
  REQUIRE(tl.has_value());
  auto left = algtrivcof_to_tc_coalg(*tl);
  auto right = cloven_to_f_algebra(canonical_cloven(unique_to_T(F.Iw)));

  auto top = pick_point(F.Iw, "0");
  auto bottom = unique_to_T(F.Iw);
  auto diag = canonical_lift(left, right, top, bottom);
  CHECK(compose_functors(diag, l) == top);
  CHECK(compose_functors(right.fact.f, diag) == bottom);
  CHECK(find_filler(l, right.fact.f, top, bottom).has_value());

  // identity square on id_T
  auto tid = is_trivial_cofibration(identity_functor(F.T));
  REQUIRE(tid.has_value());
  auto left_id = algtrivcof_to_tc_coalg(*tid);
  auto right_id = cloven_to_f_algebra(canonical_cloven(identity_functor(F.T)));
  auto d2 = canonical_lift(left_id, right_id, identity_functor(F.T),
                           identity_functor(F.T));
  CHECK(d2 == identity_functor(F.T));

  // degenerate square with empty source column
  auto le = tc_structure(identity_functor(empty_cat()));
  auto d3 = canonical_lift(le, right, from_empty_to(F.Iw), from_empty_to(F.T));
  CHECK(compose_functors(right.fact.f, d3) == from_empty_to(F.T));

  // non-commuting square is rejected
  auto right_iw = cloven_to_f_algebra(canonical_cloven(identity_functor(F.Iw)));
  CHECK_THROWS_AS(canonical_lift(left, right_iw, pick_point(F.Iw, "1"),
                                 identity_functor(F.Iw)),
                  NonCommutingSquare);
}

TEST_CASE("translations preserve structure-preserving squares") {
  // cloven square: (u, v) from the canonical cleavage on Iw -> T to id_T
  auto cf = canonical_cloven(unique_to_T(F.Iw));
  auto cg = canonical_cloven(identity_functor(F.T));
  auto u = unique_to_T(F.Iw);
  auto v = identity_functor(F.T);
  for (const auto& [lv, l] : all_elements(cf.k.pb.obj)) {
    auto [x, g] = split_pair(l);
    CHECK(u.f1(lv, cf.k.k(lv, l)) == cg.k.k(lv, pair_label(u.f0(lv, x), v.f1(lv, g))));
  }
  auto af = cloven_to_f_algebra(cf);
  auto ag = cloven_to_f_algebra(cg);
  auto ew = ew_functorial(af.fact, ag.fact, u, v);
  CHECK(compose_functors(ag.phi, ew) == compose_functors(u, af.phi));

  // complemented-inclusion square: (∅ -> T) into (∅ -> Iw) over an endpoint;
  // the codomain leg keeps complement points in the complement
  auto dj = is_cofibration(from_empty_to(F.T));
  REQUIRE(dj.has_value());
  auto c1 = compincl_to_c_coalg({from_empty_to(F.T), *dj});
  auto dj2 = is_cofibration(from_empty_to(F.Iw));
  REQUIRE(dj2.has_value());
  auto c2 = compincl_to_c_coalg({from_empty_to(F.Iw), *dj2});
  auto v2 = pick_point(F.Iw, "0");
  auto ef = e_functorial(c1.fact, c2.fact, identity_functor(c1.fact.f.dom), v2);
  CHECK(compose_functors(ef, c1.alpha) == compose_functors(c2.alpha, v2));
}

TEST_CASE("validate_structure rejects injected faults") {
  // cleavage with one lift replaced by a non-matching arrow
  auto c = canonical_cloven(unique_to_T(F.Iw));
  auto broken = c;
  auto kt = broken.k.k.map;
  kt["*"].begin()->second = "v";  // wrong domain for this lift
  broken.k.k = make_morphism(broken.k.pb.obj, broken.f.dom.X1, kt);
  CHECK(!validate_cloven(broken).empty());

  // retraction with r∘g != id
  auto t = is_trivial_cofibration(identity_functor(F.Iw));
  REQUIRE(t.has_value());
  auto tb = *t;
  auto rt = tb.r.f0.map;
  rt["*"]["0"] = "1";
  tb.r.f0 = make_morphism(tb.r.dom.X0, tb.r.cod.X0, rt);
  CHECK(!validate_algtrivcof(tb).empty());

  // algebra with a corrupted object part
  auto a = cloven_to_f_algebra(canonical_cloven(identity_functor(F.Iw)));
  auto ab = a;
  auto pt = ab.phi.f0.map;
  pt["*"]["l/0"] = "1";
  ab.phi.f0 = make_morphism(ab.phi.dom.X0, ab.phi.cod.X0, pt);
  CHECK(!validate_f_algebra(ab).empty());
}
