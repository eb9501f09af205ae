#pragma once

#include <cstdint>
#include <vector>

#include "hardy/tree.hpp"

namespace hardy {

inline constexpr std::int64_t kDefaultVertexCap = 100000;

// Level population profile of an exactly regular tree: every vertex at
// depth j has branching[j] children, so level j holds S(j) vertices with
// S(0) = 1 and S(j+1) = S(j) * branching[j]. Growth ratios are bracketed
// by R = min branching and R0 = max branching; Cstar = 1 because the
// branching is exact.
struct LevelProfile {
  std::vector<int> branching;  // b_0..b_{D-1}, each >= 2
  std::vector<double> S;       // S(0)..S(D)
  double R = 0.0;
  double R0 = 0.0;
  double Cstar = 1.0;

  int depth() const { return static_cast<int>(branching.size()); }
};

LevelProfile make_profile(const std::vector<int>& branching);

// Per-level weight values; length must equal tree depth + 1.
struct LevelWeights {
  std::vector<double> u_levels;
  std::vector<double> w_levels;
};

// Path graph on n vertices rooted at one end; vertex k sits at depth k.
RootedTree gen_chain(int n);

// Exactly regular tree for `profile`; throws SizeCapExceeded when the
// total vertex count would exceed `vertex_cap`.
RootedTree gen_regular_tree(const LevelProfile& profile, std::int64_t vertex_cap = kDefaultVertexCap);

enum class TreeModel { UniformAttachment, BoundedBranching };

// Seeded random tree; vertex k attaches to a uniformly chosen earlier
// vertex (BoundedBranching redraws while the pick is at capacity).
RootedTree gen_random_tree(int n, std::uint64_t seed, TreeModel model, int max_children = 0);

struct WeightLaw {
  enum class Kind { Constant, GeometricByDepth, IidLogUniform, FromLevels };
  Kind kind = Kind::Constant;
  double c = 1.0;
  double rho = 1.0;
  double lo = 1.0;
  double hi = 1.0;
  std::vector<double> levels;

  static WeightLaw constant(double c);
  static WeightLaw geometric_by_depth(double rho);
  static WeightLaw iid_loguniform(double lo, double hi);
  static WeightLaw from_levels(std::vector<double> levels);
};

// One weight component per vertex; deterministic in (t, seed, law).
std::vector<double> gen_weights(const RootedTree& t, std::uint64_t seed, const WeightLaw& law);

}  // namespace hardy
