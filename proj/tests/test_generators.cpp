#include <doctest.h>

#include <cmath>

#include "hardy/generators.hpp"
#include "test_util.hpp"

using namespace hardy;
using namespace testutil;

TEST_CASE("gen_chain") {
  CHECK(gen_chain(1).n == 1);
  const RootedTree c = gen_chain(3);
  CHECK(c.depth == std::vector<int>{0, 1, 2});
  CHECK(c.parent == std::vector<VertexId>{kNoParent, 0, 1});
  CHECK_THROWS_AS(gen_chain(0), InvalidSize);
}

TEST_CASE("make_profile") {
  const LevelProfile prof = make_profile({2, 3});
  CHECK(prof.S == std::vector<double>{1.0, 2.0, 6.0});
  CHECK(prof.R == 2.0);
  CHECK(prof.R0 == 3.0);
  CHECK(prof.Cstar == 1.0);
  CHECK_THROWS_AS(make_profile({1}), InvalidProfile);
  CHECK_THROWS_AS(make_profile({}), InvalidProfile);

  // growth ratios S(j+1)/S(j) stay inside [R, R0]
  const LevelProfile big = make_profile({2, 4, 3, 2, 4});
  for (std::size_t j = 0; j + 1 < big.S.size(); ++j) {
    const double g = big.S[j + 1] / big.S[j];
    CHECK(g >= big.R);
    CHECK(g <= big.R0);
  }
  CHECK(big.S[0] == 1.0);
}

TEST_CASE("gen_regular_tree shapes") {
  const RootedTree b22 = gen_regular_tree(make_profile({2, 2}));
  CHECK(b22.n == 7);
  const auto levels = level_sets(b22);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].size() == 1);
  CHECK(levels[1].size() == 2);
  CHECK(levels[2].size() == 4);

  const RootedTree star = gen_regular_tree(make_profile({3}));
  CHECK(star.n == 4);
  CHECK(star.children[0].size() == 3);

  const RootedTree b23 = gen_regular_tree(make_profile({2, 3}));
  CHECK(b23.n == 9);
  CHECK(level_sets(b23)[2].size() == 6);

  CHECK_THROWS_AS(gen_regular_tree(make_profile({2, 2, 2}), 6), SizeCapExceeded);
}

TEST_CASE("gen_regular_tree satisfies the exact level-count condition") {
  // card V_{j'-j}(xi) = S(j')/S(j) for every vertex and every deeper level
  for (const auto& branching : {std::vector<int>{2, 2, 2, 2, 2, 2, 2, 2, 2},
                                std::vector<int>{3, 2, 4, 2, 3},
                                std::vector<int>{5, 2, 2, 5}}) {
    const LevelProfile prof = make_profile(branching);
    const RootedTree t = gen_regular_tree(prof);
    CHECK(t.n <= 1100);
    for (VertexId xi = 0; xi < t.n; ++xi) {
      const int j = t.depth[xi];
      std::vector<int> counts(t.max_depth - j + 1, 0);
      for (VertexId v : subtree_vertices(t, xi)) ++counts[t.depth[v] - j];
      for (int d = 0; d <= t.max_depth - j; ++d)
        CHECK(static_cast<double>(counts[d]) == prof.S[j + d] / prof.S[j]);
    }
  }
}

TEST_CASE("gen_random_tree determinism and models") {
  CHECK(gen_random_tree(1, 99, TreeModel::UniformAttachment).n == 1);

  const RootedTree a = gen_random_tree(5, 7, TreeModel::UniformAttachment);
  const RootedTree b = gen_random_tree(5, 7, TreeModel::UniformAttachment);
  CHECK(a.parent == b.parent);

  const RootedTree c = gen_random_tree(100, 3, TreeModel::BoundedBranching, 3);
  for (VertexId v = 0; v < c.n; ++v) CHECK(c.children[v].size() <= 3);

  CHECK_THROWS_AS(gen_random_tree(0, 1, TreeModel::UniformAttachment), InvalidSize);
  CHECK_THROWS_AS(gen_random_tree(5, 1, TreeModel::BoundedBranching, 0), InfeasibleModel);
  CHECK(gen_random_tree(1, 1, TreeModel::BoundedBranching, 0).n == 1);
}

TEST_CASE("gen_weights laws") {
  const RootedTree chain = gen_chain(3);
  CHECK(gen_weights(chain, 0, WeightLaw::constant(1.0)) == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(gen_weights(chain, 0, WeightLaw::geometric_by_depth(0.5)) ==
        std::vector<double>{1.0, 0.5, 0.25});

  const RootedTree star = build_tree(std::vector<VertexId>{kNoParent, 0, 0});
  const auto u = gen_weights(star, 0, WeightLaw::from_levels({1.0, 2.0}));
  const auto w = gen_weights(star, 0, WeightLaw::from_levels({3.0, 4.0}));
  CHECK(u == std::vector<double>{1.0, 2.0, 2.0});
  CHECK(w == std::vector<double>{3.0, 4.0, 4.0});

  const auto r1 = gen_weights(chain, 42, WeightLaw::iid_loguniform(0.1, 10.0));
  const auto r2 = gen_weights(chain, 42, WeightLaw::iid_loguniform(0.1, 10.0));
  CHECK(r1 == r2);
  for (double x : r1) {
    CHECK(x >= 0.1);
    CHECK(x <= 10.0);
  }

  CHECK_THROWS_AS(WeightLaw::geometric_by_depth(0.0), InvalidLaw);
  CHECK_THROWS_AS(WeightLaw::iid_loguniform(0.0, 1.0), InvalidLaw);
  CHECK_THROWS_AS(WeightLaw::iid_loguniform(2.0, 1.0), InvalidLaw);
  CHECK_THROWS_AS(WeightLaw::constant(-1.0), InvalidLaw);
  CHECK_THROWS_AS(gen_weights(chain, 0, WeightLaw::from_levels({1.0})), DepthMismatch);
}

TEST_CASE("generators are pure functions of their arguments") {
  std::vector<VertexId> first_parents;
  std::vector<double> first_w;
  for (int rep = 0; rep < 2; ++rep) {
    const RootedTree t = gen_random_tree(64, 1234, TreeModel::BoundedBranching, 4);
    const auto w = gen_weights(t, 77, WeightLaw::iid_loguniform(0.5, 2.0));
    if (rep == 0) {
      first_parents = t.parent;
      first_w = w;
    } else {
      CHECK(t.parent == first_parents);
      CHECK(w == first_w);
    }
  }
}
