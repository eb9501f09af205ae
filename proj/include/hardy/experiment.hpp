#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardy/generators.hpp"
#include "hardy/operator.hpp"
#include "hardy/tree.hpp"

namespace hardy {

struct ExperimentConfig {
  enum class Ensemble { UniformAttachment, BoundedBranching, Chain, Regular };
  Ensemble ensemble = Ensemble::UniformAttachment;
  int max_children = 3;                  // BoundedBranching only
  std::vector<int> branching;            // Regular only
  std::vector<int> sizes = {10, 20, 40};
  int per_size = 5;
  WeightLaw u_law = WeightLaw::iid_loguniform(0.25, 4.0);
  WeightLaw w_law = WeightLaw::iid_loguniform(0.25, 4.0);
  std::vector<std::pair<double, double>> pairs = {{2.0, 3.0}};  // each p < q
  double sigma = 0.1;                    // partition stats in the records
  SolverOptions solver;
  bool mixed = false;                    // also estimate the mixed-norm value
  std::uint64_t seed = 1;
};

struct ExperimentInstance {
  int id = 0;
  RootedTree tree;
  WeightPair weights;
  std::optional<LevelProfile> profile;   // set for regular ensembles
  std::optional<LevelWeights> level_weights;
};

struct ExperimentRecord {
  int instance_id = 0;
  int n = 0;
  double p = 0.0, q = 0.0;
  double M = 0.0;
  double norm_lb = 0.0;
  double ratio = 0.0;
  int restarts = 0;
  int iters = 0;
  bool converged = false;
  int block_count = 0;
  int max_vmax_card = 0;
  double min_succ_ratio = 0.0;
  double max_succ_ratio = 0.0;
  double mixed_lb = 0.0;       // when config.mixed
  double t2_level = 0.0;       // when the instance carries a level profile
  double t2_vertex = 0.0;
  std::int64_t wall_ms = 0;
  std::string error;
};

// Instances are deterministic in (config, id): every random draw is seeded
// by derive_seed(config.seed, ...), so evaluation order never matters.
std::vector<ExperimentInstance> build_ensemble(const ExperimentConfig& cfg);

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg,
                                             const std::vector<ExperimentInstance>& instances);
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

// Pinned schema:
//   instance_id,n,p,q,M,norm_lb,ratio,restarts,iters,converged,
//   block_count,max_vmax_card,wall_ms,error
// followed by '#'-prefixed summary lines with min/median/max ratio per
// (p, q). Reruns with the same config are byte-identical except wall_ms.
void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_records_json(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace hardy
