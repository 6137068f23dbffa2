#pragma once

#include <icat/base.hpp>

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace th {

inline icat::BaseObject fset(const icat::BasePtr& b, std::vector<std::string> labels) {
  return icat::make_object(b, {{"*", std::move(labels)}});
}

inline icat::BaseMorphism fmap(const icat::BaseObject& dom, const icat::BaseObject& cod,
                               std::map<std::string, std::string> table) {
  return icat::make_morphism(dom, cod, {{"*", std::move(table)}});
}

// Index category 0 --a--> 1.
inline icat::FiniteCategory walking_arrow_index() {
  icat::FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}};
  c.identity = {{"0", "id0"}, {"1", "id1"}};
  c.comp = {{{"id0", "id0"}, "id0"},
            {{"id1", "id1"}, "id1"},
            {{"a", "id0"}, "a"},
            {{"id1", "a"}, "a"}};
  return c;
}

// One object with an involution t (t∘t = id).
inline icat::FiniteCategory involution_index() {
  icat::FiniteCategory c;
  c.objects = {"*"};
  c.arrows = {{"id", "*", "*"}, {"t", "*", "*"}};
  c.identity = {{"*", "id"}};
  c.comp = {{{"id", "id"}, "id"},
            {{"id", "t"}, "t"},
            {{"t", "id"}, "t"},
            {{"t", "t"}, "id"}};
  return c;
}

}  // namespace th
