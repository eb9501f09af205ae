#include "hardy/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

#include "hardy/bounds.hpp"
#include "hardy/partition.hpp"
#include "hardy/rng.hpp"

namespace hardy {

namespace {

// seed streams per instance: 0 tree, 1 u, 2 w
std::uint64_t instance_seed(std::uint64_t master, int instance, int stream) {
  return derive_seed(master, static_cast<std::uint64_t>(instance) * 4 + stream);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::vector<ExperimentInstance> build_ensemble(const ExperimentConfig& cfg) {
  std::vector<ExperimentInstance> out;
  int id = 0;
  for (int n : cfg.sizes) {
    for (int k = 0; k < cfg.per_size; ++k) {
      ExperimentInstance inst;
      inst.id = id;
      switch (cfg.ensemble) {
        case ExperimentConfig::Ensemble::UniformAttachment:
          inst.tree = gen_random_tree(n, instance_seed(cfg.seed, id, 0),
                                      TreeModel::UniformAttachment);
          break;
        case ExperimentConfig::Ensemble::BoundedBranching:
          inst.tree = gen_random_tree(n, instance_seed(cfg.seed, id, 0),
                                      TreeModel::BoundedBranching, cfg.max_children);
          break;
        case ExperimentConfig::Ensemble::Chain:
          inst.tree = gen_chain(n);
          break;
        case ExperimentConfig::Ensemble::Regular: {
          const LevelProfile prof = make_profile(cfg.branching);
          inst.tree = gen_regular_tree(prof);
          inst.profile = prof;
          break;
        }
      }
      std::vector<double> u = gen_weights(inst.tree, instance_seed(cfg.seed, id, 1), cfg.u_law);
      std::vector<double> w = gen_weights(inst.tree, instance_seed(cfg.seed, id, 2), cfg.w_law);
      if (cfg.ensemble == ExperimentConfig::Ensemble::Regular &&
          cfg.u_law.kind == WeightLaw::Kind::FromLevels &&
          cfg.w_law.kind == WeightLaw::Kind::FromLevels)
        inst.level_weights = LevelWeights{cfg.u_law.levels, cfg.w_law.levels};
      inst.weights = make_weights(inst.tree, std::move(u), std::move(w));
      out.push_back(std::move(inst));
      ++id;
      if (cfg.ensemble == ExperimentConfig::Ensemble::Chain ||
          cfg.ensemble == ExperimentConfig::Ensemble::Regular) {
        // deterministic shapes with deterministic level weights repeat; keep
        // one copy unless the weights are random
        if (cfg.u_law.kind != WeightLaw::Kind::IidLogUniform &&
            cfg.w_law.kind != WeightLaw::Kind::IidLogUniform)
          break;
      }
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg,
                                             const std::vector<ExperimentInstance>& instances) {
  for (auto [p, q] : cfg.pairs)
    if (!(p < q)) throw InvalidExponent("experiment pairs must satisfy p < q");

  std::vector<ExperimentRecord> records;
  for (const ExperimentInstance& inst : instances) {
    for (auto [p, q] : cfg.pairs) {
      ExperimentRecord rec;
      rec.instance_id = inst.id;
      rec.n = inst.tree.n;
      rec.p = p;
      rec.q = q;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Exponents e(p, q);
        const BoundReport bound = theorem1_bound(inst.tree, inst.weights, e);
        const NormEstimate est = operator_norm(inst.tree, inst.weights, e, cfg.solver);
        rec.M = bound.value;
        rec.norm_lb = est.value;
        rec.ratio = bound.value > 0.0 ? est.value / bound.value : 0.0;
        rec.restarts = est.restarts_used;
        rec.iters = est.iterations;
        rec.converged = est.converged;

        const SigmaPartition part = build_partition(inst.tree, inst.weights.w, q, cfg.sigma);
        rec.block_count = part.block_count();
        VerifyOptions vopts;
        vopts.domination_max_n = 0;  // structural stats only here
        vopts.solver = cfg.solver;
        const PartitionReport rep =
            verify_partition(inst.tree, inst.weights, e, part, cfg.sigma, vopts);
        rec.max_vmax_card = static_cast<int>(rep.checks[1].measured);
        double min_ratio = 1.0, max_ratio = 0.0;
        const std::vector<double> norms = subtree_norms(inst.tree, inst.weights.w, q);
        for (int k = 0; k < part.block_count(); ++k) {
          const VertexId r = part.block_root[k];
          if (r == inst.tree.root) continue;
          const VertexId pr = part.block_root[part.membership[inst.tree.parent[r]]];
          if (norms[pr] == 0.0) continue;
          const double s = norms[r] / norms[pr];
          min_ratio = std::min(min_ratio, s);
          max_ratio = std::max(max_ratio, s);
        }
        rec.min_succ_ratio = min_ratio;
        rec.max_succ_ratio = max_ratio;

        if (cfg.mixed) {
          SolverOptions mopts = cfg.solver;
          mopts.extra_starts.push_back(est.maximizer);
          rec.mixed_lb = mixed_operator_norm(inst.tree, inst.weights, e, mopts).value;
        }
        if (inst.profile && inst.level_weights) {
          rec.t2_level = theorem2_bound(*inst.profile, *inst.level_weights, e).value;
          rec.t2_vertex = theorem2_vertex_form(inst.tree, inst.weights, e).value;
        }
      } catch (const Error& ex) {
        rec.error = ex.what();
      }
      const auto t1 = std::chrono::steady_clock::now();
      rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
      records.push_back(std::move(rec));
    }
  }
  std::sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
  return records;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, build_ensemble(cfg));
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "instance_id,n,p,q,M,norm_lb,ratio,restarts,iters,converged,"
         "block_count,max_vmax_card,wall_ms,error\n";
  for (const ExperimentRecord& r : records) {
    out << r.instance_id << ',' << r.n << ',' << format_double(r.p) << ',' << format_double(r.q)
        << ',' << format_double(r.M) << ',' << format_double(r.norm_lb) << ','
        << format_double(r.ratio) << ',' << r.restarts << ',' << r.iters << ','
        << (r.converged ? 1 : 0) << ',' << r.block_count << ',' << r.max_vmax_card << ','
        << r.wall_ms << ',' << r.error << '\n';
  }
  // per-(p,q) ratio summary
  std::map<std::pair<double, double>, std::vector<double>> ratios;
  for (const ExperimentRecord& r : records)
    if (r.error.empty()) ratios[{r.p, r.q}].push_back(r.ratio);
  for (auto& [pq, v] : ratios) {
    std::sort(v.begin(), v.end());
    const double median =
        v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    out << "# summary p=" << format_double(pq.first) << " q=" << format_double(pq.second)
        << " records=" << v.size() << " min_ratio=" << format_double(v.front())
        << " median_ratio=" << format_double(median)
        << " max_ratio=" << format_double(v.back()) << '\n';
  }
}

void write_records_json(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ExperimentRecord& r : records) {
    nlohmann::ordered_json o;
    o["instance_id"] = r.instance_id;
    o["n"] = r.n;
    o["p"] = r.p;
    o["q"] = r.q;
    o["M"] = r.M;
    o["norm_lb"] = r.norm_lb;
    o["ratio"] = r.ratio;
    o["restarts"] = r.restarts;
    o["iters"] = r.iters;
    o["converged"] = r.converged;
    o["block_count"] = r.block_count;
    o["max_vmax_card"] = r.max_vmax_card;
    o["min_succ_ratio"] = r.min_succ_ratio;
    o["max_succ_ratio"] = r.max_succ_ratio;
    if (r.mixed_lb > 0.0) o["mixed_lb"] = r.mixed_lb;
    if (r.t2_level > 0.0) {
      o["t2_level"] = r.t2_level;
      o["t2_vertex"] = r.t2_vertex;
    }
    o["wall_ms"] = r.wall_ms;
    if (!r.error.empty()) o["error"] = r.error;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace hardy
