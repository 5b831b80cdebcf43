#pragma once

#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/tree.hpp"

namespace fixtures {

using leafbridge::RootedTree;
using leafbridge::UnrootedTree;

inline RootedTree cat3() {
  return RootedTree::from_children("r", {{"r", {"m", "c"}}, {"m", {"a", "b"}}});
}

inline RootedTree star3() { return RootedTree::from_children("r", {{"r", {"a", "b", "c"}}}); }

inline RootedTree star(const std::vector<std::string>& leaves, const std::string& root = "r") {
  return RootedTree::from_children(root, {{root, leaves}});
}

// Center a with leaves x,y,z; b hangs off a with leaves u,v.
inline UnrootedTree qt5() {
  return UnrootedTree::from_edges({"a", "b", "u", "v", "x", "y", "z"},
                                  {{"a", "x"}, {"a", "y"}, {"a", "z"}, {"a", "b"}, {"b", "u"}, {"b", "v"}});
}

// Path a-b-c-e-g-h, d at c, f at e.
inline UnrootedTree ex67() {
  return UnrootedTree::from_edges(
      {"a", "b", "c", "d", "e", "f", "g", "h"},
      {{"a", "b"}, {"b", "c"}, {"c", "e"}, {"e", "g"}, {"g", "h"}, {"c", "d"}, {"e", "f"}});
}

}  // namespace fixtures
