#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/operator.hpp"
#include "hardy/tree.hpp"

namespace hardy {

// Partition of the tree into subtree blocks carved by the sigma-set rule,
// plus (after reduce) the reduced tree D with one vertex per block and the
// block norms u_hat = ||u||_{p'}(block), w_hat = ||w||_q(block).
struct SigmaPartition {
  double sigma = 0.0;
  double q = 0.0;
  std::vector<VertexId> block_root;         // minimal vertex of each block
  std::vector<std::vector<VertexId>> blocks;  // ascending vertex ids per block
  std::vector<int> membership;              // vertex -> block index
  int zero_norm_blocks = 0;                 // blocks carved under the zero-norm convention

  bool reduced_built = false;
  RootedTree reduced;
  std::vector<double> u_hat;
  std::vector<double> w_hat;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// The sigma-set at xi: every eta >= xi whose subtree q-norm of w is at
// least sigma times the one at xi. Subtree norms only decrease along
// descent, so the set is ancestor-closed within A_xi and induces a tree.
// Convention: if ||w||_q(A_xi) = 0 the set is {xi}.
std::vector<VertexId> sigma_set(const RootedTree& t, std::span<const double> w, double q,
                                VertexId xi, double sigma);

// Carves the whole tree round by round: every minimal vertex of the
// remaining forest (ascending id) roots a new block equal to its
// sigma-set. Residual components are full subtrees of the original tree,
// so the global subtree norms can be reused throughout.
SigmaPartition build_partition(const RootedTree& t, std::span<const double> w, double q,
                               double sigma);

// Completes a partition with the reduced tree D (edges given by block
// succession) and the block norms u_hat, w_hat.
SigmaPartition reduce(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                      const SigmaPartition& partition);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

struct PartitionReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  int domination_max_n = 40;     // run the two-solver check only up to this size
  double domination_tol = 1e-6;  // slack relative to the norm scale
  SolverOptions solver;          // matched budget for both sides
};

// Named checks of the partition invariants:
//   succession-ratio  strict decay of subtree norms across reduced edges
//   vmax-card         maximal-vertex count of every sigma-set <= sigma^-q
//   partition-exact   disjoint subtree blocks covering every vertex
//   norm-domination   solver norm on the tree <= solver norm on D (small n)
PartitionReport verify_partition(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                                 const SigmaPartition& partition, double sigma,
                                 const VerifyOptions& opts = {});

// For every xi: the sigma-set is covered by the root paths of its maximal
// vertices, and the p'-power sum of u over the set is bounded by the sum
// over that path cover.
PartitionReport uw_block_bound_check(const RootedTree& t, const WeightPair& wt,
                                     const Exponents& e, double sigma);

}  // namespace hardy
