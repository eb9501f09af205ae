#pragma once

#include <span>
#include <vector>

#include "hardy/generators.hpp"
#include "hardy/tree.hpp"

namespace hardy {

// Result of maximizing a per-vertex (or per-level) product; `value` is the
// term at `argmax`, ties broken toward the smallest index.
struct BoundReport {
  double value = 0.0;
  int argmax = -1;
  std::vector<double> terms;
};

// M = max_xi ||u||_{p'}([root, xi]) * ||w||_q(A_xi); two linear passes.
BoundReport theorem1_bound(const RootedTree& t, const WeightPair& wt, const Exponents& e);

// Root-path witness at xi: f(eta) = u(eta)^(p'/p) on [root, xi], else 0.
// Its Rayleigh ratio is >= ||u||_{p'}([root, xi]) * ||w||_q(A_xi), so the
// best witness certifies norm >= M with constant one.
std::vector<double> lower_certificate(const RootedTree& t, const WeightPair& wt,
                                      const Exponents& e, VertexId xi);

// Chain criterion: max_m (suffix q-norm of w from m) * (prefix p'-norm of u
// through m). Requires p <= q.
BoundReport bennett_bound(std::span<const double> u_seq, std::span<const double> w_seq,
                          const Exponents& e);

// Level form: max_j u_j * (sum_{i >= j} w_i^q S(i)/S(j))^(1/q).
BoundReport theorem2_bound(const LevelProfile& profile, const LevelWeights& lw,
                           const Exponents& e);

// Vertex form: max_xi u(xi) * ||w||_q(A_xi).
BoundReport theorem2_vertex_form(const RootedTree& t, const WeightPair& wt, const Exponents& e);

}  // namespace hardy
