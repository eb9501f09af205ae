#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hardy/bounds.hpp"
#include "hardy/partition.hpp"
#include "test_util.hpp"

using namespace hardy;
using namespace testutil;

namespace {

const VertexId N = kNoParent;

// direct simulation of the carving rule from exact suffix sums
std::vector<VertexId> simulated_sigma_set(const RootedTree& t, const std::vector<double>& w,
                                          double q, VertexId xi, double sigma) {
  const auto norms = naive_subtree_norms(t, w, q);
  std::vector<VertexId> out;
  if (norms[xi] == 0.0) return {xi};
  for (VertexId v = 0; v < t.n; ++v)
    if (is_ancestor(t, xi, v) && norms[v] >= sigma * norms[xi]) out.push_back(v);
  return out;
}

WeightPair geometric_chain_weights(const RootedTree& chain, double rho) {
  return make_weights(chain, gen_weights(chain, 0, WeightLaw::constant(1.0)),
                      gen_weights(chain, 0, WeightLaw::geometric_by_depth(rho)));
}

}  // namespace

TEST_CASE("sigma_set examples") {
  const RootedTree chain = gen_chain(4);
  const WeightPair wt = geometric_chain_weights(chain, 0.01);

  // steep decay: the set collapses to the root
  CHECK(sigma_set(chain, wt.w, 2.0, 0, 0.1) == std::vector<VertexId>{0});

  // constant w with sigma below the smallest ratio: the whole subtree
  const std::vector<double> ones(4, 1.0);
  CHECK(sigma_set(chain, ones, 2.0, 0, 0.2) == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(sigma_set(chain, ones, 2.0, 2, 0.2) == std::vector<VertexId>{2, 3});

  // zero-norm subtree: the singleton convention
  const std::vector<double> zeros(4, 0.0);
  CHECK(sigma_set(chain, zeros, 2.0, 1, 0.5) == std::vector<VertexId>{1});

  CHECK_THROWS_AS(sigma_set(chain, ones, 2.0, 0, 0.0), InvalidSigma);
  CHECK_THROWS_AS(sigma_set(chain, ones, 2.0, 0, 1.0), InvalidSigma);
  CHECK_THROWS_AS(sigma_set(chain, ones, 2.0, 9, 0.5), InvalidVertex);
}

TEST_CASE("sigma_set matches direct simulation and is ancestor-closed") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RootedTree t = gen_random_tree(40, seed, TreeModel::UniformAttachment);
    const WeightPair wt = random_weights(t, seed + 9);
    for (double sigma : {0.05, 0.3, 0.7}) {
      for (VertexId xi = 0; xi < t.n; ++xi) {
        const auto set = sigma_set(t, wt.w, 2.5, xi, sigma);
        CHECK(set == simulated_sigma_set(t, wt.w, 2.5, xi, sigma));
        // ancestor-closed within the subtree at xi
        std::set<VertexId> inside(set.begin(), set.end());
        CHECK(inside.count(xi) == 1);
        for (VertexId v : set)
          for (VertexId cur = v; cur != xi; cur = t.parent[cur]) CHECK(inside.count(cur) == 1);
      }
    }
  }
}

TEST_CASE("build_partition examples") {
  const RootedTree single = build_tree(std::vector<VertexId>{N});
  const SigmaPartition sp = build_partition(single, std::vector<double>{1.0}, 2.0, 0.5);
  CHECK(sp.block_count() == 1);
  CHECK(sp.blocks[0] == std::vector<VertexId>{0});

  // steep geometric decay: every block is a singleton
  const RootedTree chain4 = gen_chain(4);
  const WeightPair geo = geometric_chain_weights(chain4, 0.01);
  const SigmaPartition gp = build_partition(chain4, geo.w, 2.0, 0.1);
  CHECK(gp.block_count() == 4);
  for (int k = 0; k < 4; ++k) CHECK(gp.blocks[k].size() == 1);

  CHECK_THROWS_AS(build_partition(chain4, geo.w, 2.0, 1.5), InvalidSigma);
}

TEST_CASE("constant-weight chain blocks match direct simulation of the rule") {
  for (int n : {5, 12, 30}) {
    for (double sigma : {0.1, 0.5, 0.9}) {
      const RootedTree chain = gen_chain(n);
      const std::vector<double> ones(n, 1.0);
      const SigmaPartition part = build_partition(chain, ones, 2.0, sigma);

      // simulate: repeatedly carve the sigma-set of the first remaining vertex
      std::vector<std::vector<VertexId>> expected;
      VertexId start = 0;
      while (start < n) {
        std::vector<double> rest(ones.begin() + start, ones.end());
        const RootedTree sub = gen_chain(n - start);
        const auto set = simulated_sigma_set(sub, rest, 2.0, 0, sigma);
        std::vector<VertexId> block;
        for (VertexId v : set) block.push_back(v + start);
        start += static_cast<VertexId>(block.size());
        expected.push_back(std::move(block));
      }
      CHECK(part.blocks == expected);
    }
  }
}

TEST_CASE("reduce examples") {
  const Exponents e22(2, 2);

  const RootedTree single = build_tree(std::vector<VertexId>{N});
  const WeightPair sw = make_weights(single, {2.0}, {3.0});
  SigmaPartition one = build_partition(single, sw.w, 2.0, 0.5);
  one = reduce(single, sw, e22, one);
  CHECK(one.reduced.n == 1);
  CHECK(one.u_hat[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(one.w_hat[0] == doctest::Approx(3.0).epsilon(1e-15));

  // hand-built blocks {0,1},{2} on the 3-chain with unit weights
  const RootedTree chain = gen_chain(3);
  const WeightPair ones = make_weights(chain, {1, 1, 1}, {1, 1, 1});
  SigmaPartition manual;
  manual.sigma = 0.5;
  manual.q = 2.0;
  manual.block_root = {0, 2};
  manual.blocks = {{0, 1}, {2}};
  manual.membership = {0, 0, 1};
  const SigmaPartition done = reduce(chain, ones, e22, manual);
  CHECK(done.reduced.n == 2);
  CHECK(done.reduced.parent == std::vector<VertexId>{N, 0});
  CHECK(done.u_hat[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(done.u_hat[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(done.w_hat[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(done.w_hat[1] == doctest::Approx(1.0).epsilon(1e-15));

  // all-singleton partition reduces to an isomorphic copy
  const RootedTree chain4 = gen_chain(4);
  const WeightPair geo = geometric_chain_weights(chain4, 0.01);
  SigmaPartition gp = build_partition(chain4, geo.w, 2.0, 0.1);
  gp = reduce(chain4, geo, Exponents(2, 2), gp);
  CHECK(gp.reduced.parent == chain4.parent);
  for (int k = 0; k < 4; ++k) {
    CHECK(gp.u_hat[k] == doctest::Approx(geo.u[k]).epsilon(1e-15));
    CHECK(gp.w_hat[k] == doctest::Approx(geo.w[k]).epsilon(1e-15));
  }
}

TEST_CASE("reduced subtree norms equal original subtree norms at block roots") {
  // the q-norm of w_hat over a subtree of D equals the q-norm of w over the
  // matching subtree of the original tree
  for (std::uint64_t seed : {4u, 5u}) {
    const RootedTree t = gen_random_tree(45, seed, TreeModel::UniformAttachment);
    const WeightPair wt = random_weights(t, seed + 20);
    const Exponents e(2, 3);
    SigmaPartition part = build_partition(t, wt.w, e.q, 0.2);
    part = reduce(t, wt, e, part);
    const auto d_norms = subtree_norms(part.reduced, part.w_hat, e.q);
    const auto a_norms = subtree_norms(t, wt.w, e.q);
    for (int k = 0; k < part.block_count(); ++k)
      CHECK(rel_err(d_norms[k], a_norms[part.block_root[k]]) <= 1e-12);
  }
}

TEST_CASE("verify_partition structural checks pass on random ensembles") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const RootedTree t = gen_random_tree(35, seed, TreeModel::UniformAttachment);
    const WeightPair wt = random_weights(t, seed + 31);
    for (double sigma : {0.05, 0.3}) {
      const Exponents e(2, 3);
      const SigmaPartition part = build_partition(t, wt.w, e.q, sigma);
      VerifyOptions opts;
      opts.domination_max_n = 0;  // structural checks only here
      const PartitionReport rep = verify_partition(t, wt, e, part, sigma, opts);
      REQUIRE(rep.checks.size() == 4);
      CHECK(rep.checks[0].pass);  // succession-ratio
      CHECK(rep.checks[0].measured < sigma);
      CHECK(rep.checks[1].pass);  // vmax-card
      CHECK(rep.checks[2].pass);  // partition-exact
    }
  }
}

TEST_CASE("vmax-card bound is sigma^-q") {
  const RootedTree t = gen_random_tree(30, 3, TreeModel::UniformAttachment);
  const WeightPair wt = random_weights(t, 77);
  const Exponents e(2, 2);
  const SigmaPartition part = build_partition(t, wt.w, e.q, 0.5);
  const PartitionReport rep = verify_partition(t, wt, e, part, 0.5);
  CHECK(rep.checks[1].bound == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.checks[1].measured <= 4.0);
}

TEST_CASE("norm domination holds on the chain example") {
  const RootedTree chain = gen_chain(5);
  const WeightPair ones = make_weights(chain, std::vector<double>(5, 1.0),
                                       std::vector<double>(5, 1.0));
  const Exponents e(2, 3);
  const SigmaPartition part = build_partition(chain, ones.w, e.q, 0.1);
  VerifyOptions opts;
  opts.solver.restarts = 4;
  const PartitionReport rep = verify_partition(chain, ones, e, part, 0.1, opts);
  const CheckResult& dom = rep.checks[3];
  REQUIRE(dom.name == "norm-domination");
  CHECK(dom.pass);
  CHECK(dom.measured <= dom.bound + 1e-6 * std::max(1.0, dom.bound));
}

TEST_CASE("degenerate all-zero w yields singleton blocks and no NaNs") {
  const RootedTree t = gen_random_tree(12, 9, TreeModel::UniformAttachment);
  const std::vector<double> zeros(t.n, 0.0);
  const SigmaPartition part = build_partition(t, zeros, 2.0, 0.3);
  CHECK(part.block_count() == t.n);
  CHECK(part.zero_norm_blocks == t.n);
  for (const auto& b : part.blocks) CHECK(b.size() == 1);

  const WeightPair wt = make_weights(t, std::vector<double>(t.n, 1.0), zeros);
  const SigmaPartition full = reduce(t, wt, Exponents(2, 3), part);
  for (double x : full.w_hat) CHECK(x == 0.0);
  const PartitionReport rep = verify_partition(t, wt, Exponents(2, 3), full, 0.3);
  CHECK(rep.checks[1].pass);
  CHECK(rep.checks[2].pass);
}

TEST_CASE("partition construction is deterministic") {
  const RootedTree t = gen_random_tree(50, 21, TreeModel::UniformAttachment);
  const WeightPair wt = random_weights(t, 22);
  const SigmaPartition a = build_partition(t, wt.w, 2.5, 0.15);
  const SigmaPartition b = build_partition(t, wt.w, 2.5, 0.15);
  CHECK(a.blocks == b.blocks);
  CHECK(a.block_root == b.block_root);
  CHECK(a.membership == b.membership);
}

TEST_CASE("uw_block_bound_check") {
  // singleton set: both sides equal u(xi)^{p'}
  const RootedTree chain4 = gen_chain(4);
  const WeightPair geo = geometric_chain_weights(chain4, 0.01);
  const PartitionReport singleton = uw_block_bound_check(chain4, geo, Exponents(2, 3), 0.1);
  CHECK(singleton.all_pass());
  CHECK(singleton.checks[1].measured == doctest::Approx(1.0).epsilon(1e-12));

  // chain sets: the cover is a single path, equality again
  const WeightPair ones = make_weights(chain4, std::vector<double>(4, 1.0),
                                       std::vector<double>(4, 1.0));
  const PartitionReport chain_rep = uw_block_bound_check(chain4, ones, Exponents(2, 3), 0.5);
  CHECK(chain_rep.all_pass());

  // random trees with constant w
  for (std::uint64_t seed : {31u, 32u}) {
    const RootedTree t = gen_random_tree(30, seed, TreeModel::UniformAttachment);
    const WeightPair wt = make_weights(t, random_weights(t, seed).u,
                                       std::vector<double>(t.n, 1.0));
    const PartitionReport rep = uw_block_bound_check(t, wt, Exponents(2, 3), 0.3);
    CHECK(rep.all_pass());
    CHECK(rep.checks[1].measured <= 1.0 + 1e-12);
  }
}
