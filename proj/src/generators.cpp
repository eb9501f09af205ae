#include "hardy/generators.hpp"

#include <cmath>
#include <string>

#include "hardy/rng.hpp"

namespace hardy {

LevelProfile make_profile(const std::vector<int>& branching) {
  if (branching.empty()) throw InvalidProfile("branching sequence must be nonempty");
  LevelProfile prof;
  prof.branching = branching;
  prof.S.assign(branching.size() + 1, 1.0);
  int bmin = branching.front(), bmax = branching.front();
  for (std::size_t j = 0; j < branching.size(); ++j) {
    const int b = branching[j];
    if (b < 2) throw InvalidProfile("branching factors must be >= 2, got " + std::to_string(b));
    prof.S[j + 1] = prof.S[j] * b;
    bmin = std::min(bmin, b);
    bmax = std::max(bmax, b);
  }
  prof.R = bmin;
  prof.R0 = bmax;
  prof.Cstar = 1.0;
  return prof;
}

RootedTree gen_chain(int n) {
  if (n < 1) throw InvalidSize("chain length must be >= 1, got " + std::to_string(n));
  std::vector<VertexId> parents(n);
  parents[0] = kNoParent;
  for (int k = 1; k < n; ++k) parents[k] = k - 1;
  return build_tree(parents);
}

RootedTree gen_regular_tree(const LevelProfile& profile, std::int64_t vertex_cap) {
  std::int64_t total = 1;
  for (int b : profile.branching) {
    total *= b;
    if (total > vertex_cap)
      throw SizeCapExceeded("regular tree would exceed the vertex cap of " +
                            std::to_string(vertex_cap));
  }
  total = 0;
  std::int64_t level = 1;
  for (std::size_t j = 0; j <= profile.branching.size(); ++j) {
    total += level;
    if (j < profile.branching.size()) level *= profile.branching[j];
    if (total > vertex_cap)
      throw SizeCapExceeded("regular tree would exceed the vertex cap of " +
                            std::to_string(vertex_cap));
  }

  std::vector<VertexId> parents;
  parents.reserve(total);
  parents.push_back(kNoParent);
  VertexId level_begin = 0;
  std::int64_t level_count = 1;
  for (int b : profile.branching) {
    const VertexId next_begin = static_cast<VertexId>(parents.size());
    for (std::int64_t i = 0; i < level_count; ++i)
      for (int k = 0; k < b; ++k) parents.push_back(level_begin + static_cast<VertexId>(i));
    level_begin = next_begin;
    level_count *= b;
  }
  return build_tree(parents);
}

RootedTree gen_random_tree(int n, std::uint64_t seed, TreeModel model, int max_children) {
  if (n < 1) throw InvalidSize("tree size must be >= 1, got " + std::to_string(n));
  if (model == TreeModel::BoundedBranching && max_children < 1 && n > 1)
    throw InfeasibleModel("bounded-branching needs max_children >= 1");

  Rng rng(seed);
  std::vector<VertexId> parents(n, kNoParent);
  std::vector<int> child_count(n, 0);
  for (int v = 1; v < n; ++v) {
    VertexId p;
    if (model == TreeModel::UniformAttachment) {
      p = static_cast<VertexId>(rng.next_below(v));
    } else {
      do {
        p = static_cast<VertexId>(rng.next_below(v));
      } while (child_count[p] >= max_children);
    }
    parents[v] = p;
    ++child_count[p];
  }
  return build_tree(parents);
}

WeightLaw WeightLaw::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidLaw("constant law needs c >= 0");
  WeightLaw law;
  law.kind = Kind::Constant;
  law.c = c;
  return law;
}

WeightLaw WeightLaw::geometric_by_depth(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidLaw("geometric law needs rho > 0");
  WeightLaw law;
  law.kind = Kind::GeometricByDepth;
  law.rho = rho;
  return law;
}

WeightLaw WeightLaw::iid_loguniform(double lo, double hi) {
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi))
    throw InvalidLaw("loguniform law needs 0 < lo <= hi");
  WeightLaw law;
  law.kind = Kind::IidLogUniform;
  law.lo = lo;
  law.hi = hi;
  return law;
}

WeightLaw WeightLaw::from_levels(std::vector<double> levels) {
  for (double v : levels)
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidLaw("level weights must be >= 0");
  WeightLaw law;
  law.kind = Kind::FromLevels;
  law.levels = std::move(levels);
  return law;
}

std::vector<double> gen_weights(const RootedTree& t, std::uint64_t seed, const WeightLaw& law) {
  std::vector<double> x(t.n, 0.0);
  switch (law.kind) {
    case WeightLaw::Kind::Constant:
      for (VertexId v = 0; v < t.n; ++v) x[v] = law.c;
      break;
    case WeightLaw::Kind::GeometricByDepth:
      for (VertexId v = 0; v < t.n; ++v) x[v] = std::pow(law.rho, t.depth[v]);
      break;
    case WeightLaw::Kind::IidLogUniform: {
      Rng rng(seed);
      for (VertexId v = 0; v < t.n; ++v) x[v] = rng.next_loguniform(law.lo, law.hi);
      break;
    }
    case WeightLaw::Kind::FromLevels:
      if (static_cast<int>(law.levels.size()) != t.max_depth + 1)
        throw DepthMismatch("need " + std::to_string(t.max_depth + 1) + " level values, got " +
                            std::to_string(law.levels.size()));
      for (VertexId v = 0; v < t.n; ++v) x[v] = law.levels[t.depth[v]];
      break;
  }
  return x;
}

}  // namespace hardy
