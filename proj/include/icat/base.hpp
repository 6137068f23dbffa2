#pragma once

// Ambient base category: finite sets, or finite presheaves over a finite
// index category.  Both are handled by one implementation: a finite set is a
// presheaf over the terminal index category.  Objects carry one sorted label
// list per index object and one restriction table per non-identity index
// arrow; all operations produce canonical labels so that results can be
// compared bytewise.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace icat {

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainMismatch : Error { using Error::Error; };
struct ConeMismatch : Error { using Error::Error; };
struct BaseMismatch : Error { using Error::Error; };
struct UnsupportedShape : Error { using Error::Error; };
struct InvalidCategory : Error { using Error::Error; };
struct NonCommutingSquare : Error { using Error::Error; };
struct NotGroupoid : Error { using Error::Error; };
struct InvalidStructure : Error { using Error::Error; };
struct InvalidAlgebra : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Finite category description (used as presheaf index and by `underline`)

struct FiniteCategory {
  struct Arrow {
    std::string name, dom, cod;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;                      // including identities
  std::map<std::string, std::string> identity;    // object -> identity arrow
  // (g, f) -> g∘f, convention "g after f": cod(f) = dom(g).
  std::map<std::pair<std::string, std::string>, std::string> comp;

  const Arrow& arrow(const std::string& name) const {
    for (const auto& a : arrows)
      if (a.name == name) return a;
    throw InvalidCategory("unknown arrow: " + name);
  }
  bool has_object(const std::string& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
  }
  bool is_identity(const std::string& arrow_name) const {
    for (const auto& [o, id] : identity)
      if (id == arrow_name) return true;
    return false;
  }
  std::string compose(const std::string& g, const std::string& f) const {
    auto it = comp.find({g, f});
    if (it == comp.end())
      throw InvalidCategory("composite undefined: " + g + " after " + f);
    return it->second;
  }
  std::vector<std::string> hom(const std::string& d, const std::string& c) const {
    std::vector<std::string> out;
    for (const auto& a : arrows)
      if (a.dom == d && a.cod == c) out.push_back(a.name);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    std::set<std::string> names;
    for (const auto& a : arrows) {
      if (!names.insert(a.name).second) bad.push_back("duplicate arrow name: " + a.name);
      if (!has_object(a.dom) || !has_object(a.cod))
        bad.push_back("arrow with unknown endpoint: " + a.name);
    }
    for (const auto& o : objects) {
      auto it = identity.find(o);
      if (it == identity.end()) {
        bad.push_back("missing identity for object: " + o);
        continue;
      }
      const Arrow& i = arrow(it->second);
      if (i.dom != o || i.cod != o) bad.push_back("identity has wrong endpoints: " + o);
    }
    // Closure and endpoint compatibility of the composition table.
    for (const auto& g : arrows)
      for (const auto& f : arrows) {
        if (f.cod != g.dom) {
          if (comp.count({g.name, f.name}))
            bad.push_back("composite of non-composable pair: " + g.name + ", " + f.name);
          continue;
        }
        auto it = comp.find({g.name, f.name});
        if (it == comp.end()) {
          bad.push_back("missing composite: " + g.name + " after " + f.name);
          continue;
        }
        const Arrow& gf = arrow(it->second);
        if (gf.dom != f.dom || gf.cod != g.cod)
          bad.push_back("composite has wrong endpoints: " + it->second);
      }
    if (!bad.empty()) return bad;
    // Unit and associativity laws.
    for (const auto& f : arrows) {
      if (compose(identity.at(f.cod), f.name) != f.name)
        bad.push_back("left unit fails at " + f.name);
      if (compose(f.name, identity.at(f.dom)) != f.name)
        bad.push_back("right unit fails at " + f.name);
    }
    for (const auto& h : arrows)
      for (const auto& g : arrows)
        for (const auto& f : arrows)
          if (f.cod == g.dom && g.cod == h.dom)
            if (compose(h.name, compose(g.name, f.name)) !=
                compose(compose(h.name, g.name), f.name))
              bad.push_back("associativity fails at " + h.name + "," + g.name + "," + f.name);
    return bad;
  }

  static FiniteCategory terminal() {
    FiniteCategory c;
    c.objects = {"*"};
    c.arrows = {{"id", "*", "*"}};
    c.identity = {{"*", "id"}};
    c.comp = {{{"id", "id"}, "id"}};
    return c;
  }
};

inline bool operator==(const FiniteCategory::Arrow& a, const FiniteCategory::Arrow& b) {
  return a.name == b.name && a.dom == b.dom && a.cod == b.cod;
}
inline bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
  return a.objects == b.objects && a.arrows == b.arrows && a.identity == b.identity &&
         a.comp == b.comp;
}

// ---------------------------------------------------------------------------
// Base instance

struct BaseInstance;
using BasePtr = std::shared_ptr<const BaseInstance>;

struct BaseInstance {
  bool finite_sets = true;
  FiniteCategory index;  // terminal category when finite_sets

  static BasePtr sets() {
    auto b = std::make_shared<BaseInstance>();
    b->finite_sets = true;
    b->index = FiniteCategory::terminal();
    return b;
  }
  static BasePtr presheaves(FiniteCategory idx) {
    auto bad = idx.validate();
    if (!bad.empty()) throw InvalidCategory("index category invalid: " + bad.front());
    auto b = std::make_shared<BaseInstance>();
    b->finite_sets = false;
    b->index = std::move(idx);
    return b;
  }
};

inline bool same_base(const BasePtr& a, const BasePtr& b) {
  return a == b || (a->finite_sets == b->finite_sets && a->index == b->index);
}

// ---------------------------------------------------------------------------
// Objects and morphisms

struct BaseObject {
  BasePtr base;
  // index object -> sorted labels
  std::map<std::string, std::vector<std::string>> levels;
  // index arrow u: c -> d  |->  table X(d) -> X(c); identities omitted
  std::map<std::string, std::map<std::string, std::string>> restr;

  bool has_label(const std::string& level, const std::string& l) const {
    auto it = levels.find(level);
    if (it == levels.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), l);
  }
  // Restriction along an index arrow (identity arrows act trivially).
  std::string restrict(const std::string& arrow_name, const std::string& label) const {
    if (base->index.is_identity(arrow_name)) return label;
    return restr.at(arrow_name).at(label);
  }
  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& [lv, ls] : levels) n += ls.size();
    return n;
  }
};

inline bool operator==(const BaseObject& a, const BaseObject& b) {
  return same_base(a.base, b.base) && a.levels == b.levels && a.restr == b.restr;
}
inline bool operator!=(const BaseObject& a, const BaseObject& b) { return !(a == b); }

struct BaseMorphism {
  BaseObject dom, cod;
  std::map<std::string, std::map<std::string, std::string>> map;  // level -> table

  std::string operator()(const std::string& level, const std::string& label) const {
    auto lt = map.find(level);
    if (lt == map.end()) throw DomainMismatch("no table at level " + level);
    auto it = lt->second.find(label);
    if (it == lt->second.end())
      throw DomainMismatch("label not in domain: " + label + " at " + level);
    return it->second;
  }
};

inline bool operator==(const BaseMorphism& f, const BaseMorphism& g) {
  return f.dom == g.dom && f.cod == g.cod && f.map == g.map;
}
inline bool operator!=(const BaseMorphism& f, const BaseMorphism& g) { return !(f == g); }

// Normalizes level lists (sorted, all index objects present) on construction.
inline BaseObject make_object(BasePtr base,
                              std::map<std::string, std::vector<std::string>> levels,
                              std::map<std::string, std::map<std::string, std::string>> restr = {}) {
  BaseObject o;
  o.base = std::move(base);
  for (const auto& io : o.base->index.objects) {
    auto& v = levels[io];
    std::sort(v.begin(), v.end());
  }
  o.levels = std::move(levels);
  o.restr = std::move(restr);
  return o;
}

inline std::vector<std::string> check_object(const BaseObject& X) {
  std::vector<std::string> bad;
  const auto& C = X.base->index;
  for (const auto& io : C.objects) {
    auto it = X.levels.find(io);
    if (it == X.levels.end()) {
      bad.push_back("missing level " + io);
      continue;
    }
    for (std::size_t k = 1; k < it->second.size(); ++k)
      if (it->second[k - 1] >= it->second[k])
        bad.push_back("labels not sorted/distinct at level " + io);
  }
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    auto it = X.restr.find(u.name);
    if (it == X.restr.end()) {
      bad.push_back("missing restriction table for " + u.name);
      continue;
    }
    for (const auto& l : X.levels.at(u.cod)) {
      auto v = it->second.find(l);
      if (v == it->second.end())
        bad.push_back("restriction " + u.name + " undefined at " + l);
      else if (!X.has_label(u.dom, v->second))
        bad.push_back("restriction " + u.name + " leaves carrier at " + l);
    }
    if (it->second.size() != X.levels.at(u.cod).size())
      bad.push_back("restriction " + u.name + " has extraneous entries");
  }
  if (!bad.empty()) return bad;
  // Functoriality: X(v∘u) = X(u)∘X(v) for composable u: c->d, v: d->e.
  for (const auto& v : C.arrows)
    for (const auto& u : C.arrows)
      if (u.cod == v.dom) {
        std::string vu = C.compose(v.name, u.name);
        for (const auto& l : X.levels.at(v.cod))
          if (X.restrict(vu, l) != X.restrict(u.name, X.restrict(v.name, l)))
            bad.push_back("functoriality fails for " + v.name + "∘" + u.name + " at " + l);
      }
  return bad;
}

inline std::vector<std::string> check_morphism(const BaseMorphism& f) {
  std::vector<std::string> bad;
  const auto& C = f.dom.base->index;
  if (!same_base(f.dom.base, f.cod.base)) {
    bad.push_back("domain and codomain over different bases");
    return bad;
  }
  for (const auto& io : C.objects) {
    auto it = f.map.find(io);
    if (it == f.map.end()) {
      bad.push_back("missing table at level " + io);
      continue;
    }
    for (const auto& l : f.dom.levels.at(io)) {
      auto v = it->second.find(l);
      if (v == it->second.end())
        bad.push_back("unassigned label " + l + " at level " + io);
      else if (!f.cod.has_label(io, v->second))
        bad.push_back("value not in codomain: " + v->second + " at level " + io);
    }
  }
  if (!bad.empty()) return bad;
  // Naturality with every restriction.
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    for (const auto& l : f.dom.levels.at(u.cod))
      if (f(u.dom, f.dom.restrict(u.name, l)) != f.cod.restrict(u.name, f(u.cod, l)))
        bad.push_back("naturality fails for " + u.name + " at " + l);
  }
  return bad;
}

inline BaseMorphism make_morphism(BaseObject dom, BaseObject cod,
                                  std::map<std::string, std::map<std::string, std::string>> map) {
  BaseMorphism f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.map = std::move(map);
  for (const auto& io : f.dom.base->index.objects) f.map[io];  // ensure tables exist
  return f;
}

inline BaseMorphism identity(const BaseObject& A) {
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, ls] : A.levels)
    for (const auto& l : ls) m[lv][l] = l;
  return make_morphism(A, A, std::move(m));
}

inline BaseMorphism compose(const BaseMorphism& g, const BaseMorphism& f) {
  if (f.cod != g.dom) throw DomainMismatch("compose: cod(f) != dom(g)");
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, tbl] : f.map)
    for (const auto& [x, y] : tbl) m[lv][x] = g(lv, y);
  return make_morphism(f.dom, g.cod, std::move(m));
}

inline bool equal_morphisms(const BaseMorphism& f, const BaseMorphism& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    throw DomainMismatch("equal_morphisms: mismatched carriers");
  return f.map == g.map;
}

inline bool is_identity_morphism(const BaseMorphism& f) {
  return f.dom == f.cod && f.map == identity(f.dom).map;
}

// ---------------------------------------------------------------------------
// Label helpers

inline std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// Splits "(a,b)" at the top-level comma (labels may nest (), {}, []).
inline std::pair<std::string, std::string> split_pair(const std::string& l) {
  if (l.size() < 3 || l.front() != '(' || l.back() != ')')
    throw Error("not a pair label: " + l);
  int depth = 0;
  for (std::size_t k = 1; k + 1 < l.size(); ++k) {
    char c = l[k];
    if (c == '(' || c == '{' || c == '[') ++depth;
    else if (c == ')' || c == '}' || c == ']') --depth;
    else if (c == ',' && depth == 0)
      return {l.substr(1, k - 1), l.substr(k + 1, l.size() - k - 2)};
  }
  throw Error("not a pair label: " + l);
}

// ---------------------------------------------------------------------------
// Terminal / initial

inline BaseObject terminal_object(const BasePtr& base) {
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> r;
  for (const auto& io : base->index.objects) lv[io] = {"*"};
  for (const auto& u : base->index.arrows)
    if (!base->index.is_identity(u.name)) r[u.name] = {{"*", "*"}};
  return make_object(base, std::move(lv), std::move(r));
}

inline BaseObject initial_object(const BasePtr& base) {
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> r;
  for (const auto& io : base->index.objects) lv[io] = {};
  for (const auto& u : base->index.arrows)
    if (!base->index.is_identity(u.name)) r[u.name] = {};
  return make_object(base, std::move(lv), std::move(r));
}

inline BaseMorphism to_terminal(const BaseObject& A) {
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, ls] : A.levels)
    for (const auto& l : ls) m[lv][l] = "*";
  return make_morphism(A, terminal_object(A.base), std::move(m));
}

inline BaseMorphism from_initial(const BaseObject& A) {
  return make_morphism(initial_object(A.base), A, {});
}

// ---------------------------------------------------------------------------
// Product

struct ProductData {
  BaseObject obj;
  BaseMorphism p1, p2;
};

inline ProductData product(const BaseObject& A, const BaseObject& B) {
  if (!same_base(A.base, B.base)) throw BaseMismatch("product over different bases");
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> r;
  std::map<std::string, std::map<std::string, std::string>> m1, m2;
  for (const auto& io : A.base->index.objects)
    for (const auto& x : A.levels.at(io))
      for (const auto& y : B.levels.at(io)) {
        std::string l = pair_label(x, y);
        lv[io].push_back(l);
        m1[io][l] = x;
        m2[io][l] = y;
      }
  for (const auto& u : A.base->index.arrows) {
    if (A.base->index.is_identity(u.name)) continue;
    for (const auto& x : A.levels.at(u.cod))
      for (const auto& y : B.levels.at(u.cod))
        r[u.name][pair_label(x, y)] =
            pair_label(A.restrict(u.name, x), B.restrict(u.name, y));
  }
  ProductData P;
  P.obj = make_object(A.base, std::move(lv), std::move(r));
  P.p1 = make_morphism(P.obj, A, std::move(m1));
  P.p2 = make_morphism(P.obj, B, std::move(m2));
  return P;
}

inline BaseMorphism pair_into_product(const ProductData& P, const BaseMorphism& f,
                                      const BaseMorphism& g) {
  if (f.dom != g.dom) throw DomainMismatch("pair: different domains");
  if (f.cod != P.p1.cod || g.cod != P.p2.cod)
    throw DomainMismatch("pair: codomains do not match the product factors");
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, tbl] : f.map)
    for (const auto& [z, fz] : tbl) m[lv][z] = pair_label(fz, g(lv, z));
  return make_morphism(f.dom, P.obj, std::move(m));
}

// f x g : A x B -> A' x B' componentwise.
inline BaseMorphism product_map(const ProductData& P, const ProductData& Q,
                                const BaseMorphism& f, const BaseMorphism& g) {
  return pair_into_product(Q, compose(f, P.p1), compose(g, P.p2));
}

// ---------------------------------------------------------------------------
// Coproduct

struct CoproductData {
  BaseObject obj;
  BaseMorphism i1, i2;
};

inline CoproductData coproduct(const BaseObject& A, const BaseObject& B) {
  if (!same_base(A.base, B.base)) throw BaseMismatch("coproduct over different bases");
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> r;
  std::map<std::string, std::map<std::string, std::string>> m1, m2;
  for (const auto& io : A.base->index.objects) {
    lv[io];
    for (const auto& x : A.levels.at(io)) {
      lv[io].push_back("l/" + x);
      m1[io][x] = "l/" + x;
    }
    for (const auto& y : B.levels.at(io)) {
      lv[io].push_back("r/" + y);
      m2[io][y] = "r/" + y;
    }
  }
  for (const auto& u : A.base->index.arrows) {
    if (A.base->index.is_identity(u.name)) continue;
    r[u.name];
    for (const auto& x : A.levels.at(u.cod))
      r[u.name]["l/" + x] = "l/" + A.restrict(u.name, x);
    for (const auto& y : B.levels.at(u.cod))
      r[u.name]["r/" + y] = "r/" + B.restrict(u.name, y);
  }
  CoproductData S;
  S.obj = make_object(A.base, std::move(lv), std::move(r));
  S.i1 = make_morphism(A, S.obj, std::move(m1));
  S.i2 = make_morphism(B, S.obj, std::move(m2));
  return S;
}

inline BaseMorphism copair(const CoproductData& S, const BaseMorphism& f,
                           const BaseMorphism& g) {
  if (f.cod != g.cod) throw DomainMismatch("copair: different codomains");
  if (f.dom != S.i1.dom || g.dom != S.i2.dom)
    throw DomainMismatch("copair: domains do not match the summands");
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, tbl] : f.map)
    for (const auto& [x, fx] : tbl) m[lv]["l/" + x] = fx;
  for (const auto& [lv, tbl] : g.map)
    for (const auto& [y, gy] : tbl) m[lv]["r/" + y] = gy;
  return make_morphism(S.obj, f.cod, std::move(m));
}

// f + g : A + B -> A' + B' componentwise.
inline BaseMorphism coproduct_map(const CoproductData& S, const CoproductData& T,
                                  const BaseMorphism& f, const BaseMorphism& g) {
  return copair(S, compose(T.i1, f), compose(T.i2, g));
}

// ---------------------------------------------------------------------------
// Pullback

struct PullbackData {
  BaseObject obj;
  BaseMorphism p1, p2;
  BaseMorphism f, g;  // the cospan A -f-> C <-g- B
};

inline PullbackData pullback(const BaseMorphism& f, const BaseMorphism& g) {
  if (f.cod != g.cod) throw DomainMismatch("pullback: different codomains");
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> r;
  std::map<std::string, std::map<std::string, std::string>> m1, m2;
  const auto& C = f.dom.base->index;
  for (const auto& io : C.objects) {
    lv[io];
    for (const auto& x : f.dom.levels.at(io))
      for (const auto& y : g.dom.levels.at(io))
        if (f(io, x) == g(io, y)) {
          std::string l = pair_label(x, y);
          lv[io].push_back(l);
          m1[io][l] = x;
          m2[io][l] = y;
        }
  }
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    r[u.name];
    for (const auto& l : lv.at(u.cod)) {
      const auto& x = m1.at(u.cod).at(l);
      const auto& y = m2.at(u.cod).at(l);
      r[u.name][l] =
          pair_label(f.dom.restrict(u.name, x), g.dom.restrict(u.name, y));
    }
  }
  PullbackData P;
  P.obj = make_object(f.dom.base, std::move(lv), std::move(r));
  P.p1 = make_morphism(P.obj, f.dom, std::move(m1));
  P.p2 = make_morphism(P.obj, g.dom, std::move(m2));
  P.f = f;
  P.g = g;
  return P;
}

inline BaseMorphism mediate(const PullbackData& P, const BaseMorphism& u,
                            const BaseMorphism& v) {
  if (u.dom != v.dom) throw DomainMismatch("mediate: different cone tips");
  if (u.cod != P.f.dom || v.cod != P.g.dom)
    throw DomainMismatch("mediate: cone legs do not match the span");
  if (!equal_morphisms(compose(P.f, u), compose(P.g, v)))
    throw ConeMismatch("mediate: cone does not commute");
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, tbl] : u.map)
    for (const auto& [z, uz] : tbl) m[lv][z] = pair_label(uz, v(lv, z));
  return make_morphism(u.dom, P.obj, std::move(m));
}

// ---------------------------------------------------------------------------
// Coequalizer / pushout

struct CoequalizerData {
  BaseObject obj;
  BaseMorphism q;
  BaseMorphism f, g;  // the parallel pair A => B
};

inline CoequalizerData coequalizer(const BaseMorphism& f, const BaseMorphism& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    throw DomainMismatch("coequalizer: not a parallel pair");
  const BaseObject& B = f.cod;
  // Union-find per level, representatives = least label.
  std::map<std::string, std::map<std::string, std::string>> parent;
  std::function<std::string(const std::string&, const std::string&)> find =
      [&](const std::string& lv, const std::string& x) -> std::string {
    std::string r = x;
    while (parent[lv][r] != r) r = parent[lv][r];
    return r;
  };
  for (const auto& [lv, ls] : B.levels)
    for (const auto& l : ls) parent[lv][l] = l;
  for (const auto& [lv, tbl] : f.map)
    for (const auto& [a, fa] : tbl) {
      std::string ra = find(lv, fa), rb = find(lv, g(lv, a));
      if (ra != rb) parent[lv][std::max(ra, rb)] = std::min(ra, rb);
    }
  std::map<std::string, std::vector<std::string>> lv;
  std::map<std::string, std::map<std::string, std::string>> qm;
  for (const auto& [l0, ls] : B.levels) {
    lv[l0];
    for (const auto& l : ls) {
      std::string r = find(l0, l);
      qm[l0][l] = r;
      if (r == l) lv[l0].push_back(l);
    }
  }
  std::map<std::string, std::map<std::string, std::string>> rr;
  const auto& C = B.base->index;
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    rr[u.name];
    for (const auto& rep : lv.at(u.cod))
      rr[u.name][rep] = qm.at(u.dom).at(B.restrict(u.name, rep));
  }
  CoequalizerData Q;
  Q.obj = make_object(B.base, std::move(lv), std::move(rr));
  Q.q = make_morphism(B, Q.obj, std::move(qm));
  Q.f = f;
  Q.g = g;
  return Q;
}

inline BaseMorphism comediate(const CoequalizerData& Q, const BaseMorphism& h) {
  if (h.dom != Q.f.cod) throw DomainMismatch("comediate: wrong domain");
  if (!equal_morphisms(compose(h, Q.f), compose(h, Q.g)))
    throw ConeMismatch("comediate: cocone does not coequalize");
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, ls] : Q.obj.levels)
    for (const auto& rep : ls) m[lv][rep] = h(lv, rep);
  return make_morphism(Q.obj, h.cod, std::move(m));
}

struct PushoutData {
  BaseObject obj;
  BaseMorphism i1, i2;
  CoproductData copr;
  CoequalizerData coeq;
};

inline PushoutData pushout(const BaseMorphism& f, const BaseMorphism& g) {
  if (f.dom != g.dom) throw DomainMismatch("pushout: different domains");
  PushoutData P;
  P.copr = coproduct(f.cod, g.cod);
  P.coeq = coequalizer(compose(P.copr.i1, f), compose(P.copr.i2, g));
  P.obj = P.coeq.obj;
  P.i1 = compose(P.coeq.q, P.copr.i1);
  P.i2 = compose(P.coeq.q, P.copr.i2);
  return P;
}

inline BaseMorphism pushout_comediate(const PushoutData& P, const BaseMorphism& u,
                                      const BaseMorphism& v) {
  return comediate(P.coeq, copair(P.copr, u, v));
}

// ---------------------------------------------------------------------------
// Natural-transformation search (backbone of exponentials, sections, functor
// enumeration).  Assignments are explored in lexicographic key order and
// candidate values in sorted order, so "first found" is deterministic.

namespace detail {

struct NatSearch {
  const BaseObject* P;
  const BaseObject* Q;
  // flattened (level, label) keys in lexicographic order
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::string, std::map<std::string, std::string>> assign;
  std::function<std::vector<std::string>(const std::string&, const std::string&)> cands;
  std::function<bool(const BaseMorphism&)> on_found;  // return true to stop

  bool consistent_at(const std::string& lv, const std::string& x) const {
    const auto& C = P->base->index;
    for (const auto& u : C.arrows) {
      if (C.is_identity(u.name)) continue;
      // s natural: s_{dom u}(P(u) y) = Q(u)(s_{cod u} y) for y at level cod u.
      if (u.cod == lv) {
        auto y = x;
        auto st = assign.at(u.cod).find(y);
        if (st == assign.at(u.cod).end()) continue;
        auto sd = assign.at(u.dom).find(P->restrict(u.name, y));
        if (sd != assign.at(u.dom).end() &&
            sd->second != Q->restrict(u.name, st->second))
          return false;
      }
      if (u.dom == lv) {
        for (const auto& y : P->levels.at(u.cod)) {
          if (P->restrict(u.name, y) != x) continue;
          auto st = assign.at(u.cod).find(y);
          if (st == assign.at(u.cod).end()) continue;
          auto sd = assign.at(u.dom).find(x);
          if (sd != assign.at(u.dom).end() &&
              sd->second != Q->restrict(u.name, st->second))
            return false;
        }
      }
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == keys.size()) {
      BaseMorphism s = make_morphism(*P, *Q, assign);
      return on_found(s);
    }
    const auto& [lv, x] = keys[k];
    for (const auto& c : cands(lv, x)) {
      assign[lv][x] = c;
      if (consistent_at(lv, x) && run(k + 1)) return true;
      assign[lv].erase(x);
    }
    return false;
  }
};

inline bool search_natural_impl(
    const BaseObject& P, const BaseObject& Q,
    std::function<std::vector<std::string>(const std::string&, const std::string&)> cands,
    std::function<bool(const BaseMorphism&)> on_found) {
  NatSearch s;
  s.P = &P;
  s.Q = &Q;
  for (const auto& [lv, ls] : P.levels) {
    s.assign[lv];
    for (const auto& l : ls) s.keys.emplace_back(lv, l);
  }
  s.cands = std::move(cands);
  s.on_found = std::move(on_found);
  return s.run(0);
}

}  // namespace detail

// First natural map with images restricted by `cands`, or nullopt.
inline std::optional<BaseMorphism> search_natural(
    const BaseObject& P, const BaseObject& Q,
    std::function<std::vector<std::string>(const std::string&, const std::string&)> cands) {
  std::optional<BaseMorphism> out;
  detail::search_natural_impl(P, Q, std::move(cands), [&](const BaseMorphism& s) {
    out = s;
    return true;
  });
  return out;
}

// All natural maps P -> Q in deterministic order.
inline std::vector<BaseMorphism> enumerate_natural(const BaseObject& P,
                                                   const BaseObject& Q) {
  std::vector<BaseMorphism> out;
  detail::search_natural_impl(
      P, Q, [&](const std::string& lv, const std::string&) { return Q.levels.at(lv); },
      [&](const BaseMorphism& s) {
        out.push_back(s);
        return false;
      });
  return out;
}

// ---------------------------------------------------------------------------
// Exponential

struct ExponentialData {
  BaseObject obj;       // B^A
  BaseMorphism eval;    // B^A x A -> B
  ProductData prod;     // the product B^A x A
  BaseObject A, B;
  // element label -> (index object c -> ((level d, hom-arrow g: d->c, a) -> b))
  std::map<std::string,
           std::map<std::tuple<std::string, std::string, std::string>, std::string>>
      family;
  std::map<std::string, std::vector<std::string>> label_at_level;  // bookkeeping
};

namespace detail {

// Serializes a family; finite-sets families are plain function tables.
inline std::string family_label(
    bool finite_sets,
    const std::map<std::tuple<std::string, std::string, std::string>, std::string>& fam) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : fam) {
    if (!first) os << ",";
    first = false;
    const auto& [d, g, a] = k;
    if (finite_sets)
      os << a << ":" << v;
    else
      os << d << "." << g << "." << a << ":" << v;
  }
  os << "}";
  return os.str();
}

}  // namespace detail

inline ExponentialData exponential(const BaseObject& A, const BaseObject& B) {
  if (!same_base(A.base, B.base)) throw BaseMismatch("exponential over different bases");
  const auto& C = A.base->index;
  ExponentialData E;
  E.A = A;
  E.B = B;
  std::map<std::string, std::vector<std::string>> lv;
  // For each index object c enumerate natural families θ with components
  // θ_d : Hom(d, c) x A(d) -> B(d).
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<std::string, std::vector<std::map<Key, std::string>>> fams;
  for (const auto& c : C.objects) {
    std::vector<Key> keys;
    for (const auto& d : C.objects)
      for (const auto& g : C.hom(d, c))
        for (const auto& a : A.levels.at(d)) keys.push_back({d, g, a});
    std::sort(keys.begin(), keys.end());
    std::map<Key, std::string> cur;
    // Naturality: for u: d' -> d, θ_{d'}(g∘u, A(u)a) = B(u) θ_d(g, a).
    auto consistent = [&]() {
      for (const auto& u : C.arrows) {
        if (C.is_identity(u.name)) continue;
        for (const auto& g : C.hom(u.cod, c))
          for (const auto& a : A.levels.at(u.cod)) {
            auto t1 = cur.find({u.cod, g, a});
            if (t1 == cur.end()) continue;
            auto t2 = cur.find({u.dom, C.compose(g, u.name), A.restrict(u.name, a)});
            if (t2 != cur.end() && t2->second != B.restrict(u.name, t1->second))
              return false;
          }
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == keys.size()) {
        fams[c].push_back(cur);
        return;
      }
      const auto& [d, g, a] = keys[k];
      for (const auto& b : B.levels.at(d)) {
        cur[keys[k]] = b;
        if (consistent()) rec(k + 1);
        cur.erase(keys[k]);
      }
    };
    rec(0);
    for (const auto& fam : fams[c]) {
      std::string l = detail::family_label(A.base->finite_sets, fam);
      lv[c].push_back(l);
      E.family[l] = fam;  // same family serialization at every level it appears
      E.label_at_level[c].push_back(l);
    }
  }
  // Restriction along u: c' -> c reindexes a family by precomposition.
  std::map<std::string, std::map<std::string, std::string>> r;
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    r[u.name];
    for (const auto& fam : fams[u.cod]) {
      std::map<Key, std::string> out;
      for (const auto& d : C.objects)
        for (const auto& g : C.hom(d, u.dom))
          for (const auto& a : A.levels.at(d))
            out[{d, g, a}] = fam.at({d, C.compose(u.name, g), a});
      r[u.name][detail::family_label(A.base->finite_sets, fam)] =
          detail::family_label(A.base->finite_sets, out);
    }
  }
  E.obj = make_object(A.base, std::move(lv), std::move(r));
  E.prod = product(E.obj, A);
  std::map<std::string, std::map<std::string, std::string>> ev;
  for (const auto& c : C.objects) {
    ev[c];
    for (const auto& l : E.prod.obj.levels.at(c)) {
      const std::string& th = E.prod.p1(c, l);
      const std::string& a = E.prod.p2(c, l);
      ev[c][l] = E.family.at(th).at({c, C.identity.at(c), a});
    }
  }
  E.eval = make_morphism(E.prod.obj, B, std::move(ev));
  return E;
}

// curry(h): Z -> B^A for h: Z x A -> B (domain built by `product(Z, A)`).
inline BaseMorphism curry(const ExponentialData& E, const BaseMorphism& h,
                          const BaseObject& Z) {
  ProductData ZA = product(Z, E.A);
  if (h.dom != ZA.obj || h.cod != E.B)
    throw DomainMismatch("curry: h must be a map Z x A -> B");
  const auto& C = Z.base->index;
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& c : C.objects) {
    m[c];
    for (const auto& z : Z.levels.at(c)) {
      std::map<std::tuple<std::string, std::string, std::string>, std::string> fam;
      for (const auto& d : C.objects)
        for (const auto& g : C.hom(d, c))
          for (const auto& a : E.A.levels.at(d))
            fam[{d, g, a}] = h(d, pair_label(Z.restrict(g, z), a));
      m[c][z] = detail::family_label(Z.base->finite_sets, fam);
    }
  }
  return make_morphism(Z, E.obj, std::move(m));
}

// ---------------------------------------------------------------------------
// Split epis and complemented inclusions

inline std::optional<BaseMorphism> is_split_epi(const BaseMorphism& f) {
  // Candidates for s(y) are the f-preimages of y; lexicographic-first search
  // gives the least-preimage section on finite sets.
  return search_natural(f.cod, f.dom, [&](const std::string& lv, const std::string& y) {
    std::vector<std::string> pre;
    for (const auto& [x, fx] : f.map.at(lv))
      if (fx == y) pre.push_back(x);
    return pre;  // map iteration is already sorted
  });
}

struct Decomposition {
  BaseObject complement;
  CoproductData copr;        // dom(f) + complement
  BaseMorphism witness;      // j : dom(f) + complement -> cod(f)
  BaseMorphism witness_inv;  // its inverse
};

inline std::optional<BaseMorphism> invert(const BaseMorphism& f) {
  std::map<std::string, std::map<std::string, std::string>> inv;
  for (const auto& [lv, tbl] : f.map) {
    inv[lv];
    for (const auto& [x, y] : tbl)
      if (!inv[lv].emplace(y, x).second) return std::nullopt;  // not injective
  }
  for (const auto& [lv, ls] : f.cod.levels)
    if (inv[lv].size() != ls.size()) return std::nullopt;  // not surjective
  return make_morphism(f.cod, f.dom, std::move(inv));
}

inline std::optional<Decomposition> complemented_decomposition(const BaseMorphism& f) {
  // f must be levelwise injective with restriction-closed complement.
  std::map<std::string, std::set<std::string>> image;
  for (const auto& [lv, tbl] : f.map) {
    auto& im = image[lv];
    for (const auto& [x, y] : tbl)
      if (!im.insert(y).second) return std::nullopt;
  }
  std::map<std::string, std::vector<std::string>> comp_lv;
  for (const auto& [lv, ls] : f.cod.levels) {
    comp_lv[lv];
    for (const auto& l : ls)
      if (!image[lv].count(l)) comp_lv[lv].push_back(l);
  }
  const auto& C = f.cod.base->index;
  std::map<std::string, std::map<std::string, std::string>> comp_r;
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    comp_r[u.name];
    for (const auto& l : comp_lv.at(u.cod)) {
      std::string rl = f.cod.restrict(u.name, l);
      if (image[u.dom].count(rl)) return std::nullopt;  // complement not closed
      comp_r[u.name][l] = rl;
    }
  }
  Decomposition D;
  D.complement = make_object(f.cod.base, std::move(comp_lv), std::move(comp_r));
  D.copr = coproduct(f.dom, D.complement);
  std::map<std::string, std::map<std::string, std::string>> incl;
  for (const auto& [lv, ls] : D.complement.levels)
    for (const auto& l : ls) incl[lv][l] = l;
  D.witness = copair(D.copr, f, make_morphism(D.complement, f.cod, std::move(incl)));
  auto inv = invert(D.witness);
  if (!inv) return std::nullopt;
  D.witness_inv = *inv;
  return D;
}

// ---------------------------------------------------------------------------
// Subobjects

inline BaseObject subobject(const BaseObject& X,
                            const std::map<std::string, std::set<std::string>>& keep) {
  const auto& C = X.base->index;
  std::map<std::string, std::vector<std::string>> lv;
  for (const auto& io : C.objects) {
    lv[io];
    auto it = keep.find(io);
    if (it == keep.end()) continue;
    for (const auto& l : it->second) {
      if (!X.has_label(io, l)) throw Error("subobject: label not in parent: " + l);
      lv[io].push_back(l);
    }
  }
  std::map<std::string, std::map<std::string, std::string>> r;
  for (const auto& u : C.arrows) {
    if (C.is_identity(u.name)) continue;
    r[u.name];
    for (const auto& l : lv.at(u.cod)) {
      std::string rl = X.restrict(u.name, l);
      bool in = std::find(lv.at(u.dom).begin(), lv.at(u.dom).end(), rl) != lv.at(u.dom).end();
      if (!in) throw Error("subobject: not closed under restriction at " + l);
      r[u.name][l] = rl;
    }
  }
  return make_object(X.base, std::move(lv), std::move(r));
}

inline BaseMorphism sub_inclusion(const BaseObject& S, const BaseObject& X) {
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [lv, ls] : S.levels)
    for (const auto& l : ls) {
      if (!X.has_label(lv, l)) throw Error("sub_inclusion: label missing in parent");
      m[lv][l] = l;
    }
  return make_morphism(S, X, std::move(m));
}

// All (level, label) pairs of an object, in deterministic order.
inline std::vector<std::pair<std::string, std::string>> all_elements(const BaseObject& X) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [lv, ls] : X.levels)
    for (const auto& l : ls) out.emplace_back(lv, l);
  return out;
}

}  // namespace icat
