#include "hardy/partition.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !(sigma < 1.0))
    throw InvalidSigma("sigma must lie in (0, 1), got " + std::to_string(sigma));
}

// descend from xi collecting {eta >= xi : norms[eta] >= sigma * norms[xi]}
std::vector<VertexId> carve(const RootedTree& t, const std::vector<double>& norms, VertexId xi,
                            double sigma) {
  std::vector<VertexId> block{xi};
  const double threshold = sigma * norms[xi];
  if (norms[xi] > 0.0) {
    for (std::size_t head = 0; head < block.size(); ++head)
      for (VertexId c : t.children[block[head]])
        if (norms[c] >= threshold) block.push_back(c);
  }
  std::sort(block.begin(), block.end());
  return block;
}

std::vector<VertexId> maximal_vertices(const RootedTree& t, const std::vector<VertexId>& set,
                                       const std::vector<char>& in_set) {
  std::vector<VertexId> out;
  for (VertexId v : set) {
    bool has_child_in = false;
    for (VertexId c : t.children[v])
      if (in_set[c]) {
        has_child_in = true;
        break;
      }
    if (!has_child_in) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<VertexId> sigma_set(const RootedTree& t, std::span<const double> w, double q,
                                VertexId xi, double sigma) {
  check_sigma(sigma);
  if (!t.valid_vertex(xi)) throw InvalidVertex("vertex " + std::to_string(xi));
  const std::vector<double> norms = subtree_norms(t, w, q);
  return carve(t, norms, xi, sigma);
}

SigmaPartition build_partition(const RootedTree& t, std::span<const double> w, double q,
                               double sigma) {
  check_sigma(sigma);
  const std::vector<double> norms = subtree_norms(t, w, q);

  SigmaPartition part;
  part.sigma = sigma;
  part.q = q;
  part.membership.assign(t.n, -1);

  std::vector<VertexId> frontier{t.root};
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId xi : frontier) {
      std::vector<VertexId> block = carve(t, norms, xi, sigma);
      const int id = part.block_count();
      if (norms[xi] == 0.0) ++part.zero_norm_blocks;
      for (VertexId v : block) {
        part.membership[v] = id;
        for (VertexId c : t.children[v])
          if (norms[c] < sigma * norms[xi] || norms[xi] == 0.0) next.push_back(c);
      }
      part.block_root.push_back(xi);
      part.blocks.push_back(std::move(block));
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return part;
}

SigmaPartition reduce(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                      const SigmaPartition& partition) {
  SigmaPartition part = partition;
  const int m = part.block_count();
  std::vector<VertexId> parents(m, kNoParent);
  for (int k = 0; k < m; ++k) {
    const VertexId root = part.block_root[k];
    if (root != t.root) parents[k] = part.membership[t.parent[root]];
  }
  part.reduced = build_tree(parents);

  part.u_hat.assign(m, 0.0);
  part.w_hat.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    std::vector<double> bu, bw;
    bu.reserve(part.blocks[k].size());
    bw.reserve(part.blocks[k].size());
    for (VertexId v : part.blocks[k]) {
      bu.push_back(wt.u[v]);
      bw.push_back(wt.w[v]);
    }
    part.u_hat[k] = lp_norm(bu, e.p_prime);
    part.w_hat[k] = lp_norm(bw, e.q);
  }
  part.reduced_built = true;
  return part;
}

PartitionReport verify_partition(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                                 const SigmaPartition& partition, double sigma,
                                 const VerifyOptions& opts) {
  check_sigma(sigma);
  PartitionReport report;
  const std::vector<double> norms = subtree_norms(t, wt.w, e.q);

  // (i) succession ratio over reduced edges: strict decay by a factor sigma
  {
    CheckResult c{"succession-ratio", true, 0.0, sigma, ""};
    int degenerate = 0;
    for (int k = 0; k < partition.block_count(); ++k) {
      const VertexId r = partition.block_root[k];
      if (r == t.root) continue;
      const VertexId pr = partition.block_root[partition.membership[t.parent[r]]];
      if (norms[pr] == 0.0) {
        ++degenerate;
        continue;
      }
      const double ratio = norms[r] / norms[pr];
      c.measured = std::max(c.measured, ratio);
      if (!(ratio < sigma)) c.pass = false;
    }
    if (degenerate > 0)
      c.note = std::to_string(degenerate) + " zero-norm parent blocks skipped";
    report.checks.push_back(std::move(c));
  }

  // (ii) card V_max(A_{xi,sigma}) <= sigma^-q for every vertex
  {
    CheckResult c{"vmax-card", true, 0.0, std::pow(sigma, -e.q), ""};
    std::vector<char> in_set(t.n, 0);
    for (VertexId xi = 0; xi < t.n; ++xi) {
      const std::vector<VertexId> set = carve(t, norms, xi, sigma);
      for (VertexId v : set) in_set[v] = 1;
      const std::size_t card = maximal_vertices(t, set, in_set).size();
      for (VertexId v : set) in_set[v] = 0;
      c.measured = std::max(c.measured, static_cast<double>(card));
      if (!(static_cast<double>(card) <= c.bound + 1e-9)) c.pass = false;
    }
    report.checks.push_back(std::move(c));
  }

  // (iii) disjoint subtree blocks covering every vertex
  {
    CheckResult c{"partition-exact", true, 0.0, 0.0, ""};
    std::vector<int> seen(t.n, 0);
    for (int k = 0; k < partition.block_count() && c.pass; ++k) {
      const VertexId r = partition.block_root[k];
      for (VertexId v : partition.blocks[k]) {
        if (!t.valid_vertex(v) || ++seen[v] > 1 || partition.membership[v] != k) c.pass = false;
        // connected with the block root as minimum: parents stay inside
        if (v != r && (t.depth[v] <= t.depth[r] || partition.membership[t.parent[v]] != k))
          c.pass = false;
      }
    }
    for (VertexId v = 0; v < t.n && c.pass; ++v)
      if (seen[v] != 1) c.pass = false;
    c.measured = c.pass ? 1.0 : 0.0;
    c.bound = 1.0;
    report.checks.push_back(std::move(c));
  }

  // (iv) norm domination by the reduced tree, both sides estimated with the
  // same budget
  {
    CheckResult c{"norm-domination", true, 0.0, 0.0, ""};
    if (t.n > opts.domination_max_n) {
      c.note = "skipped: n > " + std::to_string(opts.domination_max_n);
    } else {
      const SigmaPartition full =
          partition.reduced_built ? partition : reduce(t, wt, e, partition);
      const NormEstimate lhs = operator_norm(t, wt, e, opts.solver);
      const WeightPair hat{full.u_hat, full.w_hat};
      const NormEstimate rhs = operator_norm(full.reduced, hat, e, opts.solver);
      c.measured = lhs.value;
      c.bound = rhs.value;
      const double slack = opts.domination_tol * std::max(1.0, rhs.value);
      c.pass = lhs.value <= rhs.value + slack;
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

PartitionReport uw_block_bound_check(const RootedTree& t, const WeightPair& wt,
                                     const Exponents& e, double sigma) {
  check_sigma(sigma);
  PartitionReport report;
  const std::vector<double> norms = subtree_norms(t, wt.w, e.q);

  CheckResult cover{"path-cover", true, 0.0, 0.0, ""};
  CheckResult ineq{"u-power-bound", true, 0.0, 0.0, ""};

  std::vector<char> in_set(t.n, 0), covered(t.n, 0);
  for (VertexId xi = 0; xi < t.n; ++xi) {
    const std::vector<VertexId> set = carve(t, norms, xi, sigma);
    for (VertexId v : set) in_set[v] = 1;
    const std::vector<VertexId> vmax = maximal_vertices(t, set, in_set);

    // union of the paths [xi, zeta] over maximal zeta must equal the set
    double rhs = 0.0;
    for (VertexId zeta : vmax) {
      for (VertexId v = zeta;; v = t.parent[v]) {
        covered[v] = 1;
        rhs += std::pow(wt.u[v], e.p_prime);
        if (v == xi) break;
      }
    }
    bool cover_ok = true;
    double lhs = 0.0;
    for (VertexId v : set) {
      if (!covered[v]) cover_ok = false;
      lhs += std::pow(wt.u[v], e.p_prime);
    }
    for (VertexId v : set) {
      in_set[v] = 0;
      covered[v] = 0;
    }
    if (!cover_ok) cover.pass = false;
    if (!(lhs <= rhs * (1.0 + 1e-12) + 1e-300)) ineq.pass = false;
    ineq.measured = std::max(ineq.measured, rhs > 0.0 ? lhs / rhs : 1.0);
  }
  cover.measured = cover.pass ? 1.0 : 0.0;
  cover.bound = 1.0;
  ineq.bound = 1.0 + 1e-12;

  report.checks.push_back(std::move(cover));
  report.checks.push_back(std::move(ineq));
  return report;
}

}  // namespace hardy
