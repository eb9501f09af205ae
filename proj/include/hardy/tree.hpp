#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

using VertexId = int;
inline constexpr VertexId kNoParent = -1;

// Finite rooted tree over dense vertex ids 0..n-1. The partial order used
// throughout: xi' >= xi iff xi lies on the path from the root to xi'.
// Immutable after construction; `order` lists every parent before its
// children, so linear passes run top-down along it and bottom-up in reverse.
struct RootedTree {
  int n = 0;
  VertexId root = 0;
  std::vector<VertexId> parent;                // kNoParent for the root
  std::vector<std::vector<VertexId>> children;
  std::vector<int> depth;                      // distance to the root
  std::vector<VertexId> order;                 // BFS order from the root
  int max_depth = 0;

  bool valid_vertex(VertexId v) const { return v >= 0 && v < n; }
};

// Validates and assembles a tree from a parent list (one entry per vertex,
// nullopt marks the root). Throws MultipleRoots, CycleDetected or
// DanglingParent naming the offending vertex.
RootedTree build_tree(const std::vector<std::optional<VertexId>>& parents);

// Same, with kNoParent encoding the missing entry.
RootedTree build_tree(const std::vector<VertexId>& parents);

// Vertex set of the subtree A_xi = {xi' : xi' >= xi}, ascending ids.
std::vector<VertexId> subtree_vertices(const RootedTree& t, VertexId xi);

// The root path [root, xi], root first; length = depth(xi) + 1.
std::vector<VertexId> path_to_root(const RootedTree& t, VertexId xi);

// Vertices grouped by depth; sets partition 0..n-1.
std::vector<std::vector<VertexId>> level_sets(const RootedTree& t);

// out[xi] = (sum_{xi' >= xi} x[xi']^r)^(1/r), one bottom-up pass.
// The per-subtree maximum is factored out before powers are summed.
std::vector<double> subtree_norms(const RootedTree& t, std::span<const double> x, double r);

// out[xi] = (sum_{root <= eta <= xi} x[eta]^r)^(1/r), one top-down pass.
std::vector<double> path_norms(const RootedTree& t, std::span<const double> x, double r);

// Vertex weight functions u, w >= 0, one value per vertex.
struct WeightPair {
  std::vector<double> u;
  std::vector<double> w;
};

// Validates lengths against the tree and entry-wise finiteness/sign.
WeightPair make_weights(const RootedTree& t, std::vector<double> u, std::vector<double> w);

enum class ExponentRegime { p_less_q, p_equal_q, p_greater_q };

// Exponent pair (p, q) with duals p' = p/(p-1), q' = q/(q-1).
struct Exponents {
  double p = 2.0;
  double q = 2.0;
  double p_prime = 2.0;
  double q_prime = 2.0;

  Exponents() = default;
  Exponents(double p_, double q_);

  ExponentRegime regime() const {
    return p < q ? ExponentRegime::p_less_q
                 : (p == q ? ExponentRegime::p_equal_q : ExponentRegime::p_greater_q);
  }

  // Constructors for the two theorem-scoped regimes.
  static Exponents strict(double p, double q);     // requires p < q
  static Exponents non_strict(double p, double q); // requires p <= q
};

}  // namespace hardy
