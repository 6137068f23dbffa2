#include <catch_amalgamated.hpp>

#include <icat/corpus.hpp>
#include <icat/factorization.hpp>

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
}

TEST_CASE("factorize_cof_trivfib sizes and composite") {
  auto Fe = factorize_cof_trivfib(from_empty_to(F.T));
  CHECK(Fe.E.X0.total_size() == 1);
  CHECK(Fe.E.X1.total_size() == 1);
  CHECK(compose_functors(Fe.TF, Fe.C) == Fe.f);

  auto Ft = factorize_cof_trivfib(identity_functor(F.T));
  CHECK(Ft.E.X0.total_size() == 2);
  CHECK(Ft.E.X1.total_size() == 4);
  CHECK(compose_functors(Ft.TF, Ft.C) == Ft.f);

  auto Fd = factorize_cof_trivfib(unique_to_T(F.D2));
  CHECK(Fd.E.X0.total_size() == 3);
  CHECK(Fd.E.X1.total_size() == 9);
  CHECK(compose_functors(Fd.TF, Fd.C) == Fd.f);
  CHECK(validate_internal_category(Fd.E).empty());
  CHECK(validate_internal_functor(Fd.C).empty());
  CHECK(validate_internal_functor(Fd.TF).empty());
}

TEST_CASE("e_functorial") {
  auto Fe = factorize_cof_trivfib(from_empty_to(F.T));
  auto Ft = factorize_cof_trivfib(identity_functor(F.T));

  // identity square gives the identity functor
  CHECK(e_functorial(Ft, Ft, identity_functor(F.T), identity_functor(F.T)) ==
        identity_functor(Ft.E));

  // square from the empty inclusion into id_T: object part is an inclusion
  InternalFunctor into = from_empty_to(F.T);
  auto ev = e_functorial(Fe, Ft, into, identity_functor(F.T));
  CHECK(ev.f0("*", "r/0") == "r/0");
  CHECK(validate_internal_functor(ev).empty());

  // pasted squares: E of the composite equals the composite of the E's
  auto t0 = pick_point(F.D2, "0");
  auto Fd = factorize_cof_trivfib(identity_functor(F.D2));
  auto e1 = e_functorial(Fe, Ft, into, identity_functor(F.T));
  auto e2 = e_functorial(Ft, Fd, t0, t0);
  auto ec = e_functorial(Fe, Fd, compose_functors(t0, into), t0);
  CHECK(ec == compose_functors(e2, e1));

  // non-commuting square is rejected
  auto t1 = pick_point(F.D2, "1");
  CHECK_THROWS_AS(e_functorial(Ft, Fd, t0, t1), NonCommutingSquare);
}

TEST_CASE("tf_multiplication") {
  auto A = tf_multiplication(identity_functor(F.T));
  CHECK(A.fact2.E.X0.total_size() == 3);
  CHECK(A.fact.E.X0.total_size() == 2);
  CHECK(validate_internal_functor(A.mu).empty());
  // the right factor coequalizes: TF(f)∘μ = TF²(f)
  CHECK(compose_functors(A.fact.TF, A.mu) == A.fact2.TF);

  // unit laws on the empty inclusion
  auto B = tf_multiplication(from_empty_to(F.T));
  CHECK(compose_functors(B.mu, B.fact2.C) == identity_functor(B.fact.E));
  auto unit2 = e_functorial(B.fact, B.fact2, B.fact.C,
                            identity_functor(B.fact.f.cod));
  CHECK(compose_functors(B.mu, unit2) == identity_functor(B.fact.E));

  // associativity on id_T
  auto C2m = tf_multiplication(A.fact.TF);
  auto lhs_mid = e_functorial(C2m.fact2, A.fact2, A.mu,
                              identity_functor(A.fact.f.cod));
  CHECK(compose_functors(A.mu, lhs_mid) == compose_functors(A.mu, C2m.mu));
}

TEST_CASE("c_comultiplication") {
  auto A = c_comultiplication(identity_functor(F.T));
  CHECK(A.factC.E.X0.total_size() == 3);
  // 2 -> 3 injection avoiding the middle copy
  CHECK(A.delta.f0("*", "l/0") == "l/0");
  CHECK(A.delta.f0("*", "r/0") == "r/r/0");
  CHECK(validate_internal_functor(A.delta).empty());
  // coalgebra square: δ∘C(f) = C(C f)
  CHECK(compose_functors(A.delta, A.fact.C) == A.factC.C);

  // counit laws on the empty inclusion
  auto B = c_comultiplication(from_empty_to(F.T));
  CHECK(compose_functors(B.factC.TF, B.delta) == identity_functor(B.fact.E));
  auto count2 = e_functorial(B.factC, B.fact, identity_functor(B.fact.f.dom),
                             B.fact.TF);
  CHECK(compose_functors(count2, B.delta) == identity_functor(B.fact.E));

  // coassociativity on id_T
  auto D2m = c_comultiplication(A.fact.C);
  auto lhs_mid = e_functorial(A.factC, D2m.factC,
                              identity_functor(A.fact.f.dom), A.delta);
  CHECK(compose_functors(lhs_mid, A.delta) ==
        compose_functors(D2m.delta, A.delta));
}

TEST_CASE("mapping_path_object") {
  auto Mi = mapping_path_object(identity_functor(F.Iw));
  CHECK(Mi.Map.X0.total_size() == 4);
  CHECK(validate_internal_category(Mi.Map).empty());
  CHECK(validate_internal_functor(Mi.W).empty());

  auto Mt = mapping_path_object(unique_to_T(F.Iw));
  CHECK(Mt.Map.X0.total_size() == 2);

  auto M1 = mapping_path_object(identity_functor(F.T));
  CHECK(M1.Map.X0.total_size() == 1);
  auto ws = enumerate_functors(F.T, M1.Map);
  REQUIRE(ws.size() == 1);
  CHECK(M1.W == ws[0]);

  // projection identities: pX∘W = id and the composite to Y is f
  CHECK(compose_functors(Mi.pX, Mi.W) == identity_functor(F.Iw));
  CHECK(compose_functors(Mi.cod, Mi.W) == identity_functor(F.Iw));
  CHECK(validate_internal_functor(Mi.pX).empty());
  CHECK(validate_internal_functor(Mi.cod).empty());
}

TEST_CASE("factorize_trivcof_fib sizes and composite") {
  auto A = factorize_trivcof_fib(identity_functor(F.Iw));
  CHECK(A.inner.E.X0.total_size() == 6);
  CHECK(compose_functors(A.F, A.TC) == A.f);

  auto B = factorize_trivcof_fib(identity_functor(F.T));
  CHECK(B.inner.E.X0.total_size() == 2);
  CHECK(B.inner.E.X1.total_size() == 4);
  CHECK(compose_functors(B.F, B.TC) == B.f);

  auto C = factorize_trivcof_fib(unique_to_T(F.Iw));
  CHECK(C.inner.E.X0.total_size() == 4);
  CHECK(compose_functors(C.F, C.TC) == C.f);
  CHECK(validate_internal_category(C.inner.E).empty());
  CHECK(validate_internal_functor(C.TC).empty());
  CHECK(validate_internal_functor(C.F).empty());
}

TEST_CASE("f_multiplication") {
  auto K = f_multiplication(identity_functor(F.T));
  CHECK(K.fact.inner.E.X0.total_size() == 2);
  CHECK(K.fact2.inner.E.X0.total_size() == 4);
  CHECK(validate_internal_functor(K.kappa).empty());
  CHECK(compose_functors(K.fact.F, K.kappa) == K.fact2.F);

  // unit laws on the empty inclusion
  auto Ke = f_multiplication(from_empty_to(F.T));
  CHECK(compose_functors(Ke.kappa, Ke.fact2.TC) ==
        identity_functor(Ke.fact.inner.E));
  auto unit2 = ew_functorial(Ke.fact, Ke.fact2, Ke.fact.TC,
                             identity_functor(F.T));
  CHECK(compose_functors(Ke.kappa, unit2) == identity_functor(Ke.fact.inner.E));

  // F(f)∘κ = F²(f) and unit laws on id_Iw
  auto Ki = f_multiplication(identity_functor(F.Iw));
  CHECK(validate_internal_functor(Ki.kappa).empty());
  CHECK(compose_functors(Ki.fact.F, Ki.kappa) == Ki.fact2.F);
  CHECK(compose_functors(Ki.kappa, Ki.fact2.TC) ==
        identity_functor(Ki.fact.inner.E));
  auto unit2i = ew_functorial(Ki.fact, Ki.fact2, Ki.fact.TC,
                              identity_functor(F.Iw));
  CHECK(compose_functors(Ki.kappa, unit2i) ==
        identity_functor(Ki.fact.inner.E));

  // associativity on id_T
  auto K2 = f_multiplication(K.fact.F);
  auto lhs_mid = ew_functorial(K2.fact2, K.fact2, K.kappa,
                               identity_functor(F.T));
  CHECK(compose_functors(K.kappa, lhs_mid) ==
        compose_functors(K.kappa, K2.kappa));
}

TEST_CASE("tc_retract_presentation") {
  for (const auto& [name, f] :
       {std::pair<std::string, InternalFunctor>{"id_T", identity_functor(F.T)},
        {"IwT", unique_to_T(F.Iw)},
        {"id_Iw", identity_functor(F.Iw)},
        {"pt0", pick_point(F.Iw, "0")}}) {
    CAPTURE(name);
    auto T = factorize_trivcof_fib(f);
    auto a = tc_retract_presentation(T);
    CHECK(validate_algtrivcof(a).empty());
  }
  // shapes: 1 -> 2 and 2 -> 4 inclusions
  auto T1 = factorize_trivcof_fib(identity_functor(F.T));
  CHECK(tc_retract_presentation(T1).g.cod.X0.total_size() == 2);
  auto T2 = factorize_trivcof_fib(unique_to_T(F.Iw));
  CHECK(tc_retract_presentation(T2).g.cod.X0.total_size() == 4);
}

TEST_CASE("factor classification over a corpus sample") {
  std::vector<std::pair<std::string, InternalFunctor>> fs = {
      {"id_T", identity_functor(F.T)},
      {"IwT", unique_to_T(F.Iw)},
      {"C2T", unique_to_T(F.C2)},
      {"pt0", pick_point(F.Iw, "0")},
      {"emptyT", from_empty_to(F.T)}};
  for (const auto& [name, f] : fs) {
    CAPTURE(name);
    auto A = factorize_cof_trivfib(f);
    CHECK(is_cofibration(A.C).has_value());
    CHECK(is_trivial_fibration(A.TF).has_value());
    auto B = factorize_trivcof_fib(f);
    CHECK(is_trivial_cofibration(B.TC).has_value());
    CHECK(is_isofibration(B.F).has_value());
  }
}

TEST_CASE("factorizations validate over all functors between small fixtures") {
  std::vector<InternalCategory> small = {F.T, F.D2, F.Iw, F.C2};
  for (const auto& X : small)
    for (const auto& Y : small)
      for (const auto& f : enumerate_functors(X, Y)) {
        auto A = factorize_cof_trivfib(f);
        CHECK(validate_internal_category(A.E).empty());
        CHECK(validate_internal_functor(A.C).empty());
        CHECK(validate_internal_functor(A.TF).empty());
        CHECK(compose_functors(A.TF, A.C) == f);
        auto B = factorize_trivcof_fib(f);
        CHECK(validate_internal_category(B.inner.E).empty());
        CHECK(validate_internal_functor(B.TC).empty());
        CHECK(validate_internal_functor(B.F).empty());
        CHECK(compose_functors(B.F, B.TC) == f);
      }
}

TEST_CASE("extensivity decomposition of the middle object's morphisms") {
  auto f = pick_point(F.Iw, "0");
  auto A = factorize_cof_trivfib(f);
  const auto& X = f.dom;
  const auto& Y = f.cod;
  // partition the morphism carrier by the summand tags of its endpoints
  std::map<std::pair<bool, bool>, std::size_t> part;
  for (const auto& [lv, l] : all_elements(A.E.X1))
    part[{is_left_label(A.E.dom_of(lv, l)), is_left_label(A.E.cod_of(lv, l))}]++;
  auto block = [&](const BaseMorphism& a, const BaseMorphism& b) {
    ProductData p = product(a.dom, b.dom);
    ProductData py = product(Y.X0, Y.X0);
    return pullback(product_map(p, py, a, b),
                    pair_into_product(py, Y.d1, Y.d0))
        .obj.total_size();
  };
  CHECK(part[{true, true}] == block(f.f0, f.f0));
  CHECK(part[{true, false}] == block(f.f0, identity(Y.X0)));
  CHECK(part[{false, true}] == block(identity(Y.X0), f.f0));
  CHECK(part[{false, false}] == block(identity(Y.X0), identity(Y.X0)));
  std::size_t total = 0;
  for (const auto& [k, v] : part) total += v;
  CHECK(total == A.E.X1.total_size());
}

TEST_CASE("groupoid closure") {
  for (const auto& f : {identity_functor(F.Iw), unique_to_T(F.Iw),
                        unique_to_T(F.C2), pick_point(F.C2, "0")}) {
    auto A = factorize_cof_trivfib(f);
    CHECK(A.E.groupoid);
    CHECK(validate_internal_category(A.E).empty());
    auto B = factorize_trivcof_fib(f);
    CHECK(B.inner.E.groupoid);
    CHECK(validate_internal_category(B.inner.E).empty());
  }
}

TEST_CASE("presheaf base factorization") {
  auto P = BaseInstance::presheaves(th::walking_arrow_index());
  auto Iw = underline(corpus::walking_iso(), P);
  auto A = factorize_cof_trivfib(identity_functor(Iw));
  CHECK(validate_internal_category(A.E).empty());
  CHECK(compose_functors(A.TF, A.C) == identity_functor(Iw));
  CHECK(A.E.X0.levels.at("0").size() == 4);
  CHECK(A.E.X0.levels.at("1").size() == 4);
  auto B = factorize_trivcof_fib(identity_functor(Iw));
  CHECK(validate_internal_category(B.inner.E).empty());
  CHECK(compose_functors(B.F, B.TC) == identity_functor(Iw));
}
