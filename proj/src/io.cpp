#include "hardy/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hardy {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad_file(const std::string& what) { throw InvalidFile(what); }

}  // namespace

Instance load_instance(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    bad_file(std::string("JSON parse error: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("root") || !doc.contains("vertices"))
    bad_file("expected an object with \"root\" and \"vertices\"");
  const auto& verts = doc["vertices"];
  if (!verts.is_array() || verts.empty()) bad_file("\"vertices\" must be a nonempty array");

  const int n = static_cast<int>(verts.size());
  std::vector<VertexId> parent(n, kNoParent);
  std::vector<double> u(n, 0.0), w(n, 0.0);
  std::vector<char> seen(n, 0);
  for (const auto& entry : verts) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("parent") ||
        !entry.contains("u") || !entry.contains("w"))
      bad_file("each vertex needs id, parent, u, w");
    if (!entry["id"].is_number_integer()) bad_file("vertex id must be an integer");
    const int id = entry["id"].get<int>();
    if (id < 0 || id >= n) bad_file("vertex ids must be dense in 0.." + std::to_string(n - 1));
    if (seen[id]) bad_file("duplicate vertex id " + std::to_string(id));
    seen[id] = 1;
    if (entry["parent"].is_null()) {
      parent[id] = kNoParent;
    } else if (entry["parent"].is_number_integer()) {
      parent[id] = entry["parent"].get<int>();
    } else {
      bad_file("parent must be an integer or null");
    }
    if (!entry["u"].is_number() || !entry["w"].is_number()) bad_file("u and w must be numbers");
    u[id] = entry["u"].get<double>();
    w[id] = entry["w"].get<double>();
  }

  int root = -1;
  for (int v = 0; v < n; ++v)
    if (parent[v] == kNoParent) {
      if (root >= 0) bad_file("more than one root");
      root = v;
    }
  if (root < 0) bad_file("no root (every vertex has a parent)");
  if (!doc["root"].is_number_integer() || doc["root"].get<int>() != root)
    bad_file("\"root\" does not match the vertex with null parent");

  // normalize so the root is id 0; stable for all other vertices
  std::vector<int> relabel(n);
  relabel[root] = 0;
  int next = 1;
  for (int v = 0; v < n; ++v)
    if (v != root) relabel[v] = next++;
  std::vector<VertexId> parent2(n, kNoParent);
  std::vector<double> u2(n), w2(n);
  for (int v = 0; v < n; ++v) {
    const int nv = relabel[v];
    parent2[nv] = parent[v] == kNoParent ? kNoParent : relabel[parent[v]];
    u2[nv] = u[v];
    w2[nv] = w[v];
  }

  Instance inst;
  try {
    inst.tree = build_tree(parent2);
    inst.weights = make_weights(inst.tree, std::move(u2), std::move(w2));
  } catch (const Error& ex) {
    bad_file(ex.what());
  }
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_file("cannot open " + path);
  return load_instance(in);
}

void save_instance(std::ostream& out, const RootedTree& t, const WeightPair& wt) {
  ordered_json doc;
  doc["root"] = t.root;
  ordered_json verts = ordered_json::array();
  for (VertexId v = 0; v < t.n; ++v) {
    ordered_json entry;
    entry["id"] = v;
    if (t.parent[v] == kNoParent)
      entry["parent"] = nullptr;
    else
      entry["parent"] = t.parent[v];
    entry["u"] = wt.u[v];
    entry["w"] = wt.w[v];
    verts.push_back(std::move(entry));
  }
  doc["vertices"] = std::move(verts);
  out << doc.dump(2) << '\n';
}

void save_instance_file(const std::string& path, const RootedTree& t, const WeightPair& wt) {
  std::ofstream out(path);
  if (!out) bad_file("cannot open " + path + " for writing");
  save_instance(out, t, wt);
}

std::string to_dot(const RootedTree& t, const WeightPair& wt) {
  std::ostringstream os;
  os << "digraph tree {\n  node [shape=box];\n";
  os.precision(6);
  for (VertexId v = 0; v < t.n; ++v)
    os << "  v" << v << " [label=\"" << v << "\\nu=" << wt.u[v] << "\\nw=" << wt.w[v] << "\"];\n";
  for (VertexId v = 0; v < t.n; ++v)
    if (t.parent[v] != kNoParent) os << "  v" << t.parent[v] << " -> v" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hardy
