#pragma once

#include <iosfwd>
#include <string>

#include "hardy/tree.hpp"

namespace hardy {

struct Instance {
  RootedTree tree;
  WeightPair weights;
};

// Tree+weights file format (JSON, UTF-8):
//   {"root": <id>, "vertices": [{"id": int, "parent": int|null,
//                                "u": number, "w": number}, ...]}
// Ids are dense from 0 and exactly one parent is null. On load the vertices
// are relabeled (stably) so that the root becomes id 0; files written by
// this library already satisfy that, so save/load round-trips are
// bit-exact.
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

void save_instance(std::ostream& out, const RootedTree& t, const WeightPair& wt);
void save_instance_file(const std::string& path, const RootedTree& t, const WeightPair& wt);

// Graphviz rendering; each vertex is labeled "id\nu=...\nw=...".
std::string to_dot(const RootedTree& t, const WeightPair& wt);

}  // namespace hardy
