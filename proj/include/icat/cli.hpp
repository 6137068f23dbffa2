#pragma once

// Document format, command dispatch, and deterministic reporting.
//
// A document is a single self-contained JSON object describing a base
// instance, named internal categories, named internal functors, and named
// structures (cleavages, retraction presentations, natural isomorphisms)
// that reference the other names.  Every element carries an explicit label
// string; composition tables are triples [g, f, g∘f] with the convention
// "g after f".  All named items are validated on load.
//
// Reports are JSON objects with sorted keys; identical inputs produce
// byte-identical output.  Exit codes: 0 = ok, 1 = parse/validation failure,
// 2 = axiom/property failure.

#include <json.hpp>

#include "type_theory.hpp"

namespace icat::cli {

using json = nlohmann::json;

struct UnknownCommand : Error {
  using Error::Error;
};

struct Document {
  BasePtr base;
  std::map<std::string, InternalCategory> categories;
  std::map<std::string, InternalFunctor> functors;
  std::map<std::string, ClovenIsofibration> cleavages;
  std::map<std::string, AlgTrivCofibration> trivial_cofibrations;
  std::map<std::string, NatIso> nat_isos;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

using Tables = std::map<std::string, std::map<std::string, std::string>>;
using Levels = std::map<std::string, std::vector<std::string>>;

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text,
                                                    std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Levels levels_of(const json& j) { return j.get<Levels>(); }
inline Tables tables_of(const json& j) { return j.get<Tables>(); }

// Composition triples [g, f, g∘f] per level -> a lookup table keyed (g, f).
inline std::map<std::string, std::map<std::pair<std::string, std::string>, std::string>>
triples_of(const json& j, const std::string& who) {
  std::map<std::string, std::map<std::pair<std::string, std::string>, std::string>> out;
  for (const auto& [lv, rows] : j.items()) {
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 3)
        throw ValidationError(who + ": composition entries must be triples [g, f, g∘f]");
      out[lv][{row[0].get<std::string>(), row[1].get<std::string>()}] =
          row[2].get<std::string>();
    }
  }
  return out;
}

inline InternalCategory build_category(const BasePtr& base, const json& j,
                                       const std::string& name) {
  std::string who = "category " + name;
  BaseObject X0 = make_object(base, levels_of(j.at("objects")),
                              j.contains("object_restrictions")
                                  ? tables_of(j.at("object_restrictions"))
                                  : Tables{});
  BaseObject X1 = make_object(base, levels_of(j.at("morphisms")),
                              j.contains("morphism_restrictions")
                                  ? tables_of(j.at("morphism_restrictions"))
                                  : Tables{});
  for (auto& v : check_object(X0)) throw ValidationError(who + ": objects: " + v);
  for (auto& v : check_object(X1)) throw ValidationError(who + ": morphisms: " + v);
  auto triples = triples_of(j.at("compose"), who);
  for (const auto& [lv, t] : triples)
    for (const auto& [gf, c] : t)
      for (const auto& l : {gf.first, gf.second, c})
        if (!X1.has_label(lv, l))
          throw ValidationError(who + ": compose entry references unknown morphism label " +
                                l + " at level " + lv);
  BaseMorphism d1 = make_morphism(X1, X0, tables_of(j.at("dom")));
  BaseMorphism d0 = make_morphism(X1, X0, tables_of(j.at("cod")));
  BaseMorphism i = make_morphism(X0, X1, tables_of(j.at("identity")));
  bool groupoid = j.value("groupoid", false);
  Tables inv_t;
  if (groupoid) {
    if (!j.contains("inverse"))
      throw ValidationError(who + ": groupoid requires an inverse table");
    inv_t = tables_of(j.at("inverse"));
  }
  auto comp = [&](const std::string& lv, const std::string& g, const std::string& f) {
    auto lt = triples.find(lv);
    if (lt != triples.end()) {
      auto it = lt->second.find({g, f});
      if (it != lt->second.end()) return it->second;
    }
    throw ValidationError(who + ": missing composite " + g + " after " + f +
                          " at level " + lv);
  };
  auto inv = [&](const std::string& lv, const std::string& a) {
    auto lt = inv_t.find(lv);
    if (lt != inv_t.end()) {
      auto it = lt->second.find(a);
      if (it != lt->second.end()) return it->second;
    }
    throw ValidationError(who + ": missing inverse for " + a + " at level " + lv);
  };
  InternalCategory X =
      groupoid ? assemble_category(X0, X1, d1, d0, i, comp, true, inv)
               : assemble_category(X0, X1, d1, d0, i, comp);
  auto bad = validate_internal_category(X);
  if (!bad.empty()) throw ValidationError(who + ": " + bad.front());
  return X;
}

inline const InternalCategory& category_ref(const Document& d, const std::string& name) {
  auto it = d.categories.find(name);
  if (it == d.categories.end()) throw ValidationError("unknown category: " + name);
  return it->second;
}

inline InternalFunctor build_functor(const Document& d, const json& j,
                                     const std::string& name) {
  std::string who = "functor " + name;
  const InternalCategory& dom = category_ref(d, j.at("dom").get<std::string>());
  const InternalCategory& cod = category_ref(d, j.at("cod").get<std::string>());
  InternalFunctor f{dom, cod,
                    make_morphism(dom.X0, cod.X0, tables_of(j.at("objects"))),
                    make_morphism(dom.X1, cod.X1, tables_of(j.at("morphisms")))};
  auto bad = validate_internal_functor(f);
  if (!bad.empty()) throw ValidationError(who + ": " + bad.front());
  return f;
}

inline const InternalFunctor& functor_ref(const Document& d, const std::string& name) {
  auto it = d.functors.find(name);
  if (it == d.functors.end()) throw ValidationError("unknown functor: " + name);
  return it->second;
}

inline ClovenIsofibration build_cleavage(const Document& d, const json& j,
                                         const std::string& name) {
  std::string who = "cleavage " + name;
  const InternalFunctor& f = functor_ref(d, j.at("functor").get<std::string>());
  if (j.value("derive", false)) {
    auto k = is_isofibration(f);
    if (!k) throw ValidationError(who + ": functor is not an isofibration");
    return {f, *k};
  }
  const auto& Y = f.cod;
  IsoData IY = iso_object(Y);
  PullbackData pb = pullback(f.f0, compose(Y.d1, IY.incl));
  Tables kt;
  for (const auto& [lv, rows] : j.at("lifts").items())
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 3)
        throw ValidationError(who + ": lift entries must be triples [x, γ, lift]");
      kt[lv][pair_label(row[0].get<std::string>(), row[1].get<std::string>())] =
          row[2].get<std::string>();
    }
  ClovenIsofibration c{f, {pb, make_morphism(pb.obj, f.dom.X1, std::move(kt))}};
  auto bad = validate_cloven(c);
  if (!bad.empty()) throw ValidationError(who + ": " + bad.front());
  return c;
}

inline AlgTrivCofibration build_trivcof(const Document& d, const json& j,
                                        const std::string& name) {
  std::string who = "trivial cofibration " + name;
  const InternalFunctor& g = functor_ref(d, j.at("functor").get<std::string>());
  if (j.value("derive", false)) {
    auto t = is_trivial_cofibration(g);
    if (!t) throw ValidationError(who + ": functor is not a trivial cofibration");
    return *t;
  }
  const json& rj = j.at("retraction");
  InternalFunctor r{g.cod, g.dom,
                    make_morphism(g.cod.X0, g.dom.X0, tables_of(rj.at("objects"))),
                    make_morphism(g.cod.X1, g.dom.X1, tables_of(rj.at("morphisms")))};
  BaseMorphism beta = make_morphism(g.cod.X0, g.cod.X1, tables_of(j.at("beta")));
  auto dec = complemented_decomposition(g.f0);
  if (!dec) throw ValidationError(who + ": functor is not complemented on objects");
  AlgTrivCofibration t{g, r, *dec, beta};
  auto bad = validate_algtrivcof(t);
  if (!bad.empty()) throw ValidationError(who + ": " + bad.front());
  return t;
}

inline NatIso build_nat_iso(const Document& d, const json& j, const std::string& name) {
  std::string who = "natural isomorphism " + name;
  const InternalFunctor& f = functor_ref(d, j.at("from").get<std::string>());
  const InternalFunctor& g = functor_ref(d, j.at("to").get<std::string>());
  NatIso n{f, g, make_morphism(f.dom.X0, f.cod.X1, tables_of(j.at("components")))};
  auto bad = validate_nat_iso(n);
  if (!bad.empty()) throw ValidationError(who + ": " + bad.front());
  return n;
}

inline BasePtr build_base(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sets") return BaseInstance::sets();
  if (kind != "presheaves")
    throw ValidationError("base kind must be \"sets\" or \"presheaves\"");
  const json& ij = j.at("index");
  FiniteCategory idx;
  idx.objects = ij.at("objects").get<std::vector<std::string>>();
  for (const auto& row : ij.at("arrows")) {
    if (!row.is_array() || row.size() != 3)
      throw ValidationError("index arrows must be triples [name, dom, cod]");
    idx.arrows.push_back({row[0].get<std::string>(), row[1].get<std::string>(),
                          row[2].get<std::string>()});
  }
  idx.identity = ij.at("identity").get<std::map<std::string, std::string>>();
  for (const auto& row : ij.at("compose")) {
    if (!row.is_array() || row.size() != 3)
      throw ValidationError("index compose entries must be triples [g, f, g∘f]");
    idx.comp[{row[0].get<std::string>(), row[1].get<std::string>()}] =
        row[2].get<std::string>();
  }
  return BaseInstance::presheaves(std::move(idx));
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  try {
    Document d;
    d.base = detail::build_base(j.at("base"));
    const json cats = j.value("categories", json::object());
    for (const auto& [name, cj] : cats.items())
      d.categories.emplace(name, detail::build_category(d.base, cj, name));
    const json funs = j.value("functors", json::object());
    for (const auto& [name, fj] : funs.items())
      d.functors.emplace(name, detail::build_functor(d, fj, name));
    const json clvs = j.value("cleavages", json::object());
    for (const auto& [name, kj] : clvs.items())
      d.cleavages.emplace(name, detail::build_cleavage(d, kj, name));
    const json tcs = j.value("trivial_cofibrations", json::object());
    for (const auto& [name, tj] : tcs.items())
      d.trivial_cofibrations.emplace(name, detail::build_trivcof(d, tj, name));
    const json nis = j.value("nat_isos", json::object());
    for (const auto& [name, nj] : nis.items())
      d.nat_isos.emplace(name, detail::build_nat_iso(d, nj, name));
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Serialization (inverse of parsing, up to canonical ordering)

namespace detail {

inline json triples_json(const std::map<std::string, std::vector<std::string>>& levels,
                         const std::function<std::array<std::string, 3>(
                             const std::string&, const std::string&)>& row) {
  json out = json::object();
  for (const auto& [lv, labels] : levels) {
    json rows = json::array();
    for (const auto& l : labels) {
      auto r = row(lv, l);
      rows.push_back(json::array({r[0], r[1], r[2]}));
    }
    out[lv] = rows;
  }
  return out;
}

inline json category_json(const InternalCategory& X) {
  json out;
  out["objects"] = X.X0.levels;
  out["morphisms"] = X.X1.levels;
  if (!X.X0.restr.empty()) out["object_restrictions"] = X.X0.restr;
  if (!X.X1.restr.empty()) out["morphism_restrictions"] = X.X1.restr;
  out["dom"] = X.d1.map;
  out["cod"] = X.d0.map;
  out["identity"] = X.i.map;
  out["compose"] =
      triples_json(X.pairs().levels, [&](const std::string& lv, const std::string& l) {
        auto [g, f] = split_pair(l);
        return std::array<std::string, 3>{g, f, X.m()(lv, l)};
      });
  if (X.groupoid) {
    out["groupoid"] = true;
    if (X.inv) out["inverse"] = X.inv->map;
  }
  return out;
}

inline std::string category_name(const Document& d, const InternalCategory& X) {
  for (const auto& [name, C] : d.categories)
    if (C == X) return name;
  throw ValidationError("category has no name in the document");
}

inline std::string functor_name(const Document& d, const InternalFunctor& f) {
  for (const auto& [name, g] : d.functors)
    if (g == f) return name;
  throw ValidationError("functor has no name in the document");
}

inline json functor_json(const Document& d, const InternalFunctor& f) {
  json out;
  out["dom"] = category_name(d, f.dom);
  out["cod"] = category_name(d, f.cod);
  out["objects"] = f.f0.map;
  out["morphisms"] = f.f1.map;
  return out;
}

}  // namespace detail

inline json serialize_document(const Document& d) {
  json out;
  if (d.base->finite_sets) {
    out["base"] = json{{"kind", "sets"}};
  } else {
    const FiniteCategory& I = d.base->index;
    json arrows = json::array(), comp = json::array();
    for (const auto& a : I.arrows) arrows.push_back(json::array({a.name, a.dom, a.cod}));
    for (const auto& [gf, c] : I.comp)
      comp.push_back(json::array({gf.first, gf.second, c}));
    out["base"] = json{{"kind", "presheaves"},
                       {"index", json{{"objects", I.objects},
                                      {"arrows", arrows},
                                      {"identity", I.identity},
                                      {"compose", comp}}}};
  }
  json cats = json::object();
  for (const auto& [name, X] : d.categories) cats[name] = detail::category_json(X);
  if (!cats.empty()) out["categories"] = cats;
  json funs = json::object();
  for (const auto& [name, f] : d.functors) funs[name] = detail::functor_json(d, f);
  if (!funs.empty()) out["functors"] = funs;
  json clvs = json::object();
  for (const auto& [name, c] : d.cleavages) {
    json rows = detail::triples_json(
        c.k.pb.obj.levels, [&](const std::string& lv, const std::string& l) {
          return std::array<std::string, 3>{c.k.pb.p1(lv, l), c.k.pb.p2(lv, l),
                                            c.k.k(lv, l)};
        });
    clvs[name] = json{{"functor", detail::functor_name(d, c.f)}, {"lifts", rows}};
  }
  if (!clvs.empty()) out["cleavages"] = clvs;
  json tcs = json::object();
  for (const auto& [name, t] : d.trivial_cofibrations)
    tcs[name] = json{{"functor", detail::functor_name(d, t.g)},
                     {"retraction",
                      json{{"objects", t.r.f0.map}, {"morphisms", t.r.f1.map}}},
                     {"beta", t.beta.map}};
  if (!tcs.empty()) out["trivial_cofibrations"] = tcs;
  json nis = json::object();
  for (const auto& [name, n] : d.nat_isos)
    nis[name] = json{{"from", detail::functor_name(d, n.f)},
                     {"to", detail::functor_name(d, n.g)},
                     {"components", n.component.map}};
  if (!nis.empty()) out["nat_isos"] = nis;
  return out;
}

// ---------------------------------------------------------------------------
// Commands and reports

struct Command {
  std::string name;
  std::map<std::string, std::string> options;
  std::vector<std::string> args;
};

struct Report {
  json body = json::object();
  int exit_code = 0;
};

inline std::string emit(const Report& r) { return r.body.dump(2) + "\n"; }

namespace detail {

inline json carrier_summary(const InternalCategory& X) {
  json out;
  out["object_count"] = X.X0.total_size();
  out["morphism_count"] = X.X1.total_size();
  out["objects"] = X.X0.levels;
  return out;
}

inline json tables_summary(const InternalFunctor& f) {
  return json{{"objects", f.f0.map}, {"morphisms", f.f1.map}};
}

inline const ClovenIsofibration& cleavage_ref(const Document& d, const std::string& n) {
  auto it = d.cleavages.find(n);
  if (it == d.cleavages.end()) throw ValidationError("unknown cleavage: " + n);
  return it->second;
}

inline const AlgTrivCofibration& trivcof_ref(const Document& d, const std::string& n) {
  auto it = d.trivial_cofibrations.find(n);
  if (it == d.trivial_cofibrations.end())
    throw ValidationError("unknown trivial cofibration: " + n);
  return it->second;
}

inline const std::string& arg_at(const Command& c, std::size_t i,
                                 const std::string& what) {
  if (i >= c.args.size())
    throw ValidationError(c.name + ": missing argument: " + what);
  return c.args[i];
}

inline const std::string& option_at(const Command& c, const std::string& key) {
  auto it = c.options.find(key);
  if (it == c.options.end())
    throw ValidationError(c.name + ": missing option --" + key);
  return it->second;
}

// Translation between algebra and algebraic-presentation forms.  Sources:
// "cloven" and "triv-cof" name document structures; the (co)algebra forms
// and the remaining presentations are built canonically on a named functor
// ((co)free structure, translated once for presentation sources).
inline json run_translate(const Command& cmd, const Document& doc, bool& pass) {
  const std::string& from = option_at(cmd, "from");
  const std::string& to = option_at(cmd, "to");
  const std::string& name = arg_at(cmd, 0, "structure or functor name");
  json out;
  pass = false;
  if (from == "cloven" && to == "f-algebra") {
    const auto& c = cleavage_ref(doc, name);
    FAlgebra a = cloven_to_f_algebra(c);
    ClovenIsofibration back = f_algebra_to_cloven(a);
    pass = back.f == c.f && back.k.k == c.k.k;
    out["result"] = json{{"middle", carrier_summary(a.fact.inner.E)},
                         {"phi", tables_summary(a.phi)}};
  } else if (from == "f-algebra" && to == "cloven") {
    FAlgebra a = free_f_algebra(functor_ref(doc, name));
    ClovenIsofibration c = f_algebra_to_cloven(a);
    FAlgebra back = cloven_to_f_algebra(c);
    pass = back.phi == a.phi;
    out["result"] = json{{"lifts", c.k.k.map}};
  } else if (from == "tf-algebra" && to == "split-epi-eq") {
    TFAlgebra a = free_tf_algebra(functor_ref(doc, name));
    AlgSplitEpiEq e = tf_algebra_to_splitepieq(a);
    TFAlgebra back = splitepieq_to_tf_algebra(e);
    pass = back.phi == a.phi;
    out["result"] = json{{"section", tables_summary(e.s)}, {"beta", e.beta.map}};
  } else if (from == "split-epi-eq" && to == "tf-algebra") {
    AlgSplitEpiEq e = tf_algebra_to_splitepieq(free_tf_algebra(functor_ref(doc, name)));
    TFAlgebra a = splitepieq_to_tf_algebra(e);
    AlgSplitEpiEq back = tf_algebra_to_splitepieq(a);
    pass = back.s == e.s && back.beta == e.beta;
    out["result"] = json{{"phi", tables_summary(a.phi)}};
  } else if (from == "c-coalgebra" && to == "comp-incl") {
    CCoalgebra c = free_c_coalgebra(functor_ref(doc, name));
    AlgCompInclObj a = c_coalg_to_compincl(c);
    CCoalgebra back = compincl_to_c_coalg(a);
    pass = back.alpha == c.alpha;
    out["result"] = json{{"complement", a.j.complement.levels}};
  } else if (from == "comp-incl" && to == "c-coalgebra") {
    AlgCompInclObj a = c_coalg_to_compincl(free_c_coalgebra(functor_ref(doc, name)));
    CCoalgebra c = compincl_to_c_coalg(a);
    AlgCompInclObj back = c_coalg_to_compincl(c);
    pass = back.j.witness == a.j.witness;
    out["result"] = json{{"alpha", tables_summary(c.alpha)}};
  } else if (from == "tc-coalgebra" && to == "triv-cof") {
    TCCoalgebra c = tc_structure(functor_ref(doc, name));
    AlgTrivCofibration t = tc_coalg_to_algtrivcof(c);
    TCCoalgebra back = algtrivcof_to_tc_coalg(t);
    pass = back.alpha == c.alpha;
    out["result"] = json{{"retraction", tables_summary(t.r)}, {"beta", t.beta.map}};
  } else if (from == "triv-cof" && to == "tc-coalgebra") {
    const auto& t = trivcof_ref(doc, name);
    TCCoalgebra c = algtrivcof_to_tc_coalg(t);
    AlgTrivCofibration back = tc_coalg_to_algtrivcof(c);
    pass = back.r == t.r && back.beta == t.beta;
    out["result"] = json{{"alpha", tables_summary(c.alpha)}};
  } else {
    throw ValidationError("translate: unsupported direction --from " + from +
                          " --to " + to);
  }
  out["verdicts"] = json{{"round_trip", pass}};
  return out;
}

}  // namespace detail

inline Report execute(const Command& cmd, const Document& doc) {
  using detail::carrier_summary;
  using detail::tables_summary;
  Report rep;
  json& body = rep.body;
  body["command"] = cmd.name;
  if (!cmd.args.empty()) body["arguments"] = cmd.args;
  if (!cmd.options.empty()) body["options"] = cmd.options;
  bool pass = true;

  if (cmd.name == "validate") {
    // Load already rejects invalid items; report what was accepted.
    json items;
    auto names = [](const auto& m) {
      std::vector<std::string> v;
      for (const auto& [n, x] : m) v.push_back(n);
      return v;
    };
    items["categories"] = names(doc.categories);
    items["functors"] = names(doc.functors);
    items["cleavages"] = names(doc.cleavages);
    items["trivial_cofibrations"] = names(doc.trivial_cofibrations);
    items["nat_isos"] = names(doc.nat_isos);
    body["items"] = items;
    body["verdicts"] = json{{"document", true}};
  } else if (cmd.name == "classify") {
    const InternalFunctor& f =
        detail::functor_ref(doc, detail::arg_at(cmd, 0, "functor name"));
    ClassificationReport r = classify(f);
    body["verdicts"] =
        json{{"cofibration", r.cofibration.has_value()},
             {"fibration", r.fibration.has_value()},
             {"trivial_cofibration", r.trivial_cofibration.has_value()},
             {"trivial_fibration", r.trivial_fibration.has_value()},
             {"weak_equivalence", r.weak_equivalence.has_value()}};
  } else if (cmd.name == "factorize") {
    const std::string& system = detail::option_at(cmd, "system");
    const InternalFunctor& f =
        detail::functor_ref(doc, detail::arg_at(cmd, 0, "functor name"));
    if (system == "ctf") {
      CofTrivFib F = factorize_cof_trivfib(f);
      body["middle"] = carrier_summary(F.E);
      body["first"] = tables_summary(F.C);
      body["second"] = tables_summary(F.TF);
      pass = compose_functors(F.TF, F.C) == f;
    } else if (system == "tcf") {
      TrivCofFib F = factorize_trivcof_fib(f);
      body["middle"] = carrier_summary(F.inner.E);
      body["first"] = tables_summary(F.TC);
      body["second"] = tables_summary(F.F);
      pass = compose_functors(F.F, F.TC) == f;
    } else {
      throw ValidationError("factorize: --system must be ctf or tcf");
    }
    body["verdicts"] = json{{"composes", pass}};
  } else if (cmd.name == "translate") {
    json t = detail::run_translate(cmd, doc, pass);
    body.update(t);
  } else if (cmd.name == "lift") {
    const auto& t = detail::trivcof_ref(doc, detail::arg_at(cmd, 0, "trivial cofibration"));
    const auto& c = detail::cleavage_ref(doc, detail::arg_at(cmd, 1, "cleavage"));
    const auto& top = detail::functor_ref(doc, detail::arg_at(cmd, 2, "top functor"));
    const auto& bottom =
        detail::functor_ref(doc, detail::arg_at(cmd, 3, "bottom functor"));
    InternalFunctor diag =
        canonical_lift(algtrivcof_to_tc_coalg(t), cloven_to_f_algebra(c), top, bottom);
    bool upper = compose_functors(diag, t.g) == top;
    bool lower = compose_functors(c.f, diag) == bottom;
    body["diagonal"] = tables_summary(diag);
    body["verdicts"] = json{{"upper_triangle", upper}, {"lower_triangle", lower}};
    pass = upper && lower;
  } else if (cmd.name == "frobenius") {
    const auto& t = detail::trivcof_ref(doc, detail::arg_at(cmd, 0, "trivial cofibration"));
    const auto& c = detail::cleavage_ref(doc, detail::arg_at(cmd, 1, "cleavage"));
    FrobeniusOutput fr = frobenius(t, c);
    auto bad = validate_algtrivcof(fr.structure);
    body["pullback"] = carrier_summary(fr.pb.P);
    body["verdicts"] = json{{"validates", bad.empty()}};
    if (!bad.empty()) body["witness"] = bad.front();
    pass = bad.empty();
  } else if (cmd.name == "sigma") {
    const auto& p = detail::cleavage_ref(doc, detail::arg_at(cmd, 0, "outer cleavage"));
    const auto& q = detail::cleavage_ref(doc, detail::arg_at(cmd, 1, "inner cleavage"));
    ClovenIsofibration s = sigma(p, q);
    auto bad = validate_cloven(s);
    body["composite"] = tables_summary(s.f);
    body["lifts"] = s.k.k.map;
    body["verdicts"] = json{{"validates", bad.empty()}};
    pass = bad.empty();
  } else if (cmd.name == "pi") {
    const auto& p = detail::cleavage_ref(doc, detail::arg_at(cmd, 0, "base cleavage"));
    const auto& q = detail::cleavage_ref(doc, detail::arg_at(cmd, 1, "family cleavage"));
    PiOutput P = pi(p, q);
    auto bad = validate_cloven(P.structure);
    body["carrier"] = carrier_summary(P.carrier);
    body["identity_case"] = P.identity_case;
    body["projection"] = tables_summary(P.proj);
    body["verdicts"] = json{{"validates", bad.empty()}};
    pass = bad.empty();
  } else if (cmd.name == "path-object") {
    const auto& c = detail::cleavage_ref(doc, detail::arg_at(cmd, 0, "cleavage"));
    PathObject po = path_object(c);
    bool composes = compose_functors(po.fact.F, po.fact.TC) == po.delta;
    bool lam = validate_tc_coalgebra(po.lambda).empty();
    bool rho = validate_f_algebra(po.rho).empty();
    body["carrier"] = carrier_summary(po.fact.inner.E);
    body["verdicts"] =
        json{{"composes", composes}, {"lambda", lam}, {"rho", rho}};
    pass = composes && lam && rho;
  } else if (cmd.name == "id-type") {
    const auto& c = detail::cleavage_ref(doc, detail::arg_at(cmd, 0, "cleavage"));
    IdType it = id_type(c);
    auto bad = validate_cloven(it.id_fib);
    body["carrier"] = carrier_summary(it.path.fact.inner.E);
    body["refl"] = tables_summary(it.refl);
    body["verdicts"] = json{{"validates", bad.empty()}};
    pass = bad.empty();
  } else if (cmd.name == "verify-ttawfs") {
    TTAWFSInstances in;
    std::vector<std::string> fib_names, tc_names;
    for (const auto& [name, c] : doc.cleavages) {
      in.fibrations.push_back(c);
      fib_names.push_back(name);
    }
    for (const auto& [name, t] : doc.trivial_cofibrations) {
      in.trivial_cofibrations.push_back(t);
      tc_names.push_back(name);
    }
    TTAWFSReport r = verify_ttawfs(in);
    body["instances"] =
        json{{"fibrations", fib_names}, {"trivial_cofibrations", tc_names}};
    json entries = json::array();
    for (const auto& e : r.entries)
      entries.push_back(json{{"axiom", e.axiom},
                             {"instance", e.instance},
                             {"pass", e.pass},
                             {"witness", e.witness}});
    body["entries"] = entries;
    body["verdicts"] = json{{"all_pass", r.all_pass}};
    pass = r.all_pass;
  } else {
    throw UnknownCommand("unknown command: " + cmd.name);
  }

  rep.exit_code = pass ? 0 : 2;
  body["status"] = pass ? "ok" : "property-failure";
  body["exit"] = rep.exit_code;
  return rep;
}

}  // namespace icat::cli
