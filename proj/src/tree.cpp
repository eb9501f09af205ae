#include "hardy/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

namespace {

std::string vtx(VertexId v) { return "vertex " + std::to_string(v); }

}  // namespace

RootedTree build_tree(const std::vector<VertexId>& parents) {
  const int n = static_cast<int>(parents.size());
  if (n == 0) throw InvalidSize("tree must have at least one vertex");

  RootedTree t;
  t.n = n;
  t.parent = parents;
  t.children.assign(n, {});
  t.depth.assign(n, -1);

  VertexId root = kNoParent;
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = parents[v];
    if (p == kNoParent) {
      if (root != kNoParent)
        throw MultipleRoots("second root at " + vtx(v) + " (first at " + vtx(root) + ")");
      root = v;
    } else {
      if (p < 0 || p >= n) throw DanglingParent(vtx(v) + " has parent " + std::to_string(p));
      if (p == v) throw CycleDetected(vtx(v) + " is its own parent");
      t.children[p].push_back(v);
    }
  }
  if (root == kNoParent) {
    // every vertex has a parent, so some parent chain must loop
    throw CycleDetected("no root: parent links contain a cycle");
  }
  t.root = root;

  t.order.reserve(n);
  t.order.push_back(root);
  t.depth[root] = 0;
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    const VertexId v = t.order[head];
    for (VertexId c : t.children[v]) {
      t.depth[c] = t.depth[v] + 1;
      t.order.push_back(c);
    }
  }
  if (static_cast<int>(t.order.size()) != n) {
    // unreached vertices lie on parent cycles detached from the root
    for (VertexId v = 0; v < n; ++v)
      if (t.depth[v] < 0) throw CycleDetected(vtx(v) + " is not reachable from the root");
  }
  t.max_depth = *std::max_element(t.depth.begin(), t.depth.end());
  return t;
}

RootedTree build_tree(const std::vector<std::optional<VertexId>>& parents) {
  std::vector<VertexId> raw(parents.size());
  for (std::size_t i = 0; i < parents.size(); ++i) raw[i] = parents[i].value_or(kNoParent);
  return build_tree(raw);
}

std::vector<VertexId> subtree_vertices(const RootedTree& t, VertexId xi) {
  if (!t.valid_vertex(xi)) throw InvalidVertex(vtx(xi));
  std::vector<VertexId> out;
  out.push_back(xi);
  for (std::size_t head = 0; head < out.size(); ++head)
    for (VertexId c : t.children[out[head]]) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> path_to_root(const RootedTree& t, VertexId xi) {
  if (!t.valid_vertex(xi)) throw InvalidVertex(vtx(xi));
  std::vector<VertexId> out(t.depth[xi] + 1);
  for (int i = t.depth[xi]; i >= 0; --i) {
    out[i] = xi;
    xi = t.parent[xi];
  }
  return out;
}

std::vector<std::vector<VertexId>> level_sets(const RootedTree& t) {
  std::vector<std::vector<VertexId>> levels(t.max_depth + 1);
  for (VertexId v = 0; v < t.n; ++v) levels[t.depth[v]].push_back(v);
  return levels;
}

namespace {

void check_exponent(double r) {
  if (!(r > 1.0) || !std::isfinite(r))
    throw InvalidExponent("norm exponent must satisfy 1 < r < inf, got " + std::to_string(r));
}

void check_size(const RootedTree& t, std::size_t m) {
  if (m != static_cast<std::size_t>(t.n))
    throw DimensionMismatch("expected " + std::to_string(t.n) + " values, got " + std::to_string(m));
}

}  // namespace

std::vector<double> subtree_norms(const RootedTree& t, std::span<const double> x, double r) {
  check_exponent(r);
  check_size(t, x.size());
  std::vector<double> maxv(t.n, 0.0), sum(t.n, 0.0), out(t.n, 0.0);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    const VertexId v = *it;
    double m = std::abs(x[v]);
    for (VertexId c : t.children[v]) m = std::max(m, maxv[c]);
    maxv[v] = m;
    if (m == 0.0) continue;
    double s = std::pow(std::abs(x[v]) / m, r);
    for (VertexId c : t.children[v])
      if (maxv[c] > 0.0) s += sum[c] * std::pow(maxv[c] / m, r);
    sum[v] = s;
    out[v] = m * std::pow(s, 1.0 / r);
  }
  return out;
}

std::vector<double> path_norms(const RootedTree& t, std::span<const double> x, double r) {
  check_exponent(r);
  check_size(t, x.size());
  std::vector<double> maxv(t.n, 0.0), sum(t.n, 0.0), out(t.n, 0.0);
  for (VertexId v : t.order) {
    const VertexId p = t.parent[v];
    const double pm = p == kNoParent ? 0.0 : maxv[p];
    const double m = std::max(pm, std::abs(x[v]));
    maxv[v] = m;
    if (m == 0.0) continue;
    double s = std::pow(std::abs(x[v]) / m, r);
    if (pm > 0.0) s += sum[p] * std::pow(pm / m, r);
    sum[v] = s;
    out[v] = m * std::pow(s, 1.0 / r);
  }
  return out;
}

WeightPair make_weights(const RootedTree& t, std::vector<double> u, std::vector<double> w) {
  check_size(t, u.size());
  check_size(t, w.size());
  for (VertexId v = 0; v < t.n; ++v) {
    if (!(u[v] >= 0.0) || !std::isfinite(u[v]))
      throw InvalidLaw("u must be finite and nonnegative at " + vtx(v));
    if (!(w[v] >= 0.0) || !std::isfinite(w[v]))
      throw InvalidLaw("w must be finite and nonnegative at " + vtx(v));
  }
  return WeightPair{std::move(u), std::move(w)};
}

Exponents::Exponents(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 1.0) || !std::isfinite(p) || !(q > 1.0) || !std::isfinite(q))
    throw InvalidExponent("exponents must satisfy 1 < p, q < inf");
  p_prime = p / (p - 1.0);
  q_prime = q / (q - 1.0);
}

Exponents Exponents::strict(double p, double q) {
  Exponents e(p, q);
  if (!(p < q)) throw InvalidExponent("this regime requires p < q");
  return e;
}

Exponents Exponents::non_strict(double p, double q) {
  Exponents e(p, q);
  if (!(p <= q)) throw InvalidExponent("this regime requires p <= q");
  return e;
}

}  // namespace hardy
