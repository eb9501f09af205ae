#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hardy/tree.hpp"
#include "test_util.hpp"

using namespace hardy;
using namespace testutil;

namespace {
const VertexId N = kNoParent;
}

TEST_CASE("build_tree basic shapes") {
  const RootedTree single = build_tree(std::vector<VertexId>{N});
  CHECK(single.n == 1);
  CHECK(single.root == 0);
  CHECK(single.depth == std::vector<int>{0});

  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  CHECK(chain.depth == std::vector<int>{0, 1, 2});
  CHECK(chain.children[0] == std::vector<VertexId>{1});
  CHECK(chain.max_depth == 2);

  // root id need not be 0
  const RootedTree shifted = build_tree(std::vector<VertexId>{2, 2, N});
  CHECK(shifted.root == 2);
  CHECK(shifted.depth[0] == 1);
  CHECK(shifted.depth[2] == 0);
}

TEST_CASE("build_tree rejects malformed input") {
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{N, N}), MultipleRoots);
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{N, 0, 0, 1, 4}), CycleDetected);
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{N, 7}), DanglingParent);
  // 1 <-> 2 cycle detached from the root
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{N, 2, 1}), CycleDetected);
  // no root at all
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{1, 0}), CycleDetected);
  CHECK_THROWS_AS(build_tree(std::vector<VertexId>{}), InvalidSize);
}

TEST_CASE("parent/child consistency and depth invariants") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RootedTree t = gen_random_tree(37, seed, TreeModel::UniformAttachment);
    int roots = 0;
    for (VertexId v = 0; v < t.n; ++v) {
      if (t.parent[v] == kNoParent) {
        ++roots;
        CHECK(v == t.root);
        CHECK(t.depth[v] == 0);
      } else {
        CHECK(t.depth[v] == t.depth[t.parent[v]] + 1);
        const auto& sib = t.children[t.parent[v]];
        CHECK(std::count(sib.begin(), sib.end(), v) == 1);
      }
      // walking up reaches the root in exactly depth steps
      VertexId cur = v;
      for (int k = 0; k < t.depth[v]; ++k) cur = t.parent[cur];
      CHECK(cur == t.root);
    }
    CHECK(roots == 1);
  }
}

TEST_CASE("subtree_vertices") {
  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  CHECK(subtree_vertices(chain, 1) == std::vector<VertexId>{1, 2});
  CHECK(subtree_vertices(chain, 0) == std::vector<VertexId>{0, 1, 2});

  const RootedTree star = build_tree(std::vector<VertexId>{N, 0, 0, 0});
  CHECK(subtree_vertices(star, 2) == std::vector<VertexId>{2});
  CHECK_THROWS_AS(subtree_vertices(star, 9), InvalidVertex);
}

TEST_CASE("path_to_root") {
  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  CHECK(path_to_root(chain, 2) == std::vector<VertexId>{0, 1, 2});
  CHECK(path_to_root(chain, 0) == std::vector<VertexId>{0});

  const RootedTree binary = build_tree(std::vector<VertexId>{N, 0, 0});
  CHECK(path_to_root(binary, 2) == std::vector<VertexId>{0, 2});
  CHECK_THROWS_AS(path_to_root(binary, -1), InvalidVertex);
}

TEST_CASE("level_sets partition the vertex set by depth") {
  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  const auto levels = level_sets(chain);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0] == std::vector<VertexId>{0});
  CHECK(levels[2] == std::vector<VertexId>{2});

  const RootedTree star = build_tree(std::vector<VertexId>{N, 0, 0, 0});
  const auto star_levels = level_sets(star);
  REQUIRE(star_levels.size() == 2);
  CHECK(star_levels[1] == std::vector<VertexId>{1, 2, 3});

  const RootedTree t = gen_random_tree(50, 11, TreeModel::UniformAttachment);
  std::size_t total = 0;
  for (const auto& level : level_sets(t)) {
    total += level.size();
    for (VertexId v : level) CHECK(t.depth[v] == t.depth[level.front()]);
  }
  CHECK(total == 50);
}

TEST_CASE("subtree_norms examples") {
  const RootedTree binary = build_tree(std::vector<VertexId>{N, 0, 0});
  const std::vector<double> ones(3, 1.0);
  const auto sn = subtree_norms(binary, ones, 2.0);
  CHECK(sn[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(sn[1] == doctest::Approx(1.0).epsilon(1e-14));

  const RootedTree single = build_tree(std::vector<VertexId>{N});
  CHECK(subtree_norms(single, std::vector<double>{5.0}, 3.5)[0] ==
        doctest::Approx(5.0).epsilon(1e-14));

  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  const auto cn = subtree_norms(chain, std::vector<double>{1.0, 2.0, 3.0}, 2.0);
  CHECK(cn[0] == doctest::Approx(3.7416573867739413).epsilon(1e-14));
  CHECK(cn[1] == doctest::Approx(3.6055512754639891).epsilon(1e-14));
  CHECK(cn[2] == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(subtree_norms(chain, ones, 1.0), InvalidExponent);
  CHECK_THROWS_AS(subtree_norms(chain, std::vector<double>{1.0}, 2.0), DimensionMismatch);
}

TEST_CASE("path_norms examples") {
  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0, 1});
  const std::vector<double> ones(3, 1.0);
  const auto pn = path_norms(chain, ones, 2.0);
  CHECK(pn[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pn[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pn[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  const RootedTree star = build_tree(std::vector<VertexId>{N, 0, 0});
  const auto sn = path_norms(star, ones, 2.0);
  CHECK(sn[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sn[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sn[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("aggregate norms agree with naive recomputation on random trees") {
  for (int n : {1, 2, 13, 50}) {
    for (std::uint64_t seed : {5u, 6u}) {
      const RootedTree t = gen_random_tree(n, seed, TreeModel::UniformAttachment);
      const auto x = gen_weights(t, seed + 100, WeightLaw::iid_loguniform(1e-3, 1e3));
      for (double r : {1.5, 2.0, 4.0}) {
        const auto fast_sub = subtree_norms(t, x, r);
        const auto slow_sub = naive_subtree_norms(t, x, r);
        const auto fast_path = path_norms(t, x, r);
        const auto slow_path = naive_path_norms(t, x, r);
        for (VertexId v = 0; v < t.n; ++v) {
          CHECK(rel_err(fast_sub[v], slow_sub[v]) <= 1e-12);
          CHECK(rel_err(fast_path[v], slow_path[v]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("recursive norm identities") {
  const RootedTree t = gen_random_tree(40, 9, TreeModel::BoundedBranching, 3);
  const auto x = gen_weights(t, 10, WeightLaw::iid_loguniform(0.1, 10.0));
  const double r = 2.5;
  const auto sub = subtree_norms(t, x, r);
  const auto path = path_norms(t, x, r);
  for (VertexId v = 0; v < t.n; ++v) {
    double expect = std::pow(x[v], r);
    for (VertexId c : t.children[v]) expect += std::pow(sub[c], r);
    CHECK(rel_err(std::pow(sub[v], r), expect) <= 1e-12);

    const double par = t.parent[v] == kNoParent ? 0.0 : std::pow(path[t.parent[v]], r);
    CHECK(rel_err(std::pow(path[v], r), par + std::pow(x[v], r)) <= 1e-12);
  }
}

TEST_CASE("subtree and root path intersect exactly in the vertex") {
  const RootedTree t = gen_random_tree(30, 21, TreeModel::UniformAttachment);
  for (VertexId v = 0; v < t.n; ++v) {
    const auto sub = subtree_vertices(t, v);
    const auto path = path_to_root(t, v);
    std::vector<VertexId> common;
    std::set<VertexId> path_set(path.begin(), path.end());
    for (VertexId s : sub)
      if (path_set.count(s)) common.push_back(s);
    CHECK(common == std::vector<VertexId>{v});
  }
}

TEST_CASE("weight and exponent validation") {
  const RootedTree chain = build_tree(std::vector<VertexId>{N, 0});
  CHECK_THROWS_AS(make_weights(chain, {1.0}, {1.0, 1.0}), DimensionMismatch);
  CHECK_THROWS_AS(make_weights(chain, {1.0, -1.0}, {1.0, 1.0}), InvalidLaw);

  CHECK_THROWS_AS(Exponents(1.0, 2.0), InvalidExponent);
  CHECK_THROWS_AS(Exponents(2.0, 1.0), InvalidExponent);
  const Exponents e(1.25, 4.0);
  CHECK(1.0 / e.p + 1.0 / e.p_prime == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(1.0 / e.q + 1.0 / e.q_prime == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.regime() == ExponentRegime::p_less_q);
  CHECK(Exponents(2, 2).regime() == ExponentRegime::p_equal_q);
  CHECK_THROWS_AS(Exponents::strict(2.0, 2.0), InvalidExponent);
  CHECK_THROWS_AS(Exponents::non_strict(3.0, 2.0), InvalidExponent);
  CHECK(Exponents::non_strict(2.0, 2.0).p == 2.0);
}
