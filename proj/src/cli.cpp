#include "hardy/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/bounds.hpp"
#include "hardy/experiment.hpp"
#include "hardy/generators.hpp"
#include "hardy/io.hpp"
#include "hardy/operator.hpp"
#include "hardy/partition.hpp"
#include "hardy/rng.hpp"

namespace hardy::cli {

namespace {

constexpr int kExitBadFlags = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitNonFinite = 5;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw Error("bad number '" + s + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const std::string& part : split(s, ',')) out.push_back(static_cast<int>(parse_double(part)));
  return out;
}

// "constant:1" | "geometric:0.5" | "loguniform:0.25,4" | "levels:1,0.5,0.25"
WeightLaw parse_law(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "constant") return WeightLaw::constant(parse_double(rest));
  if (kind == "geometric") return WeightLaw::geometric_by_depth(parse_double(rest));
  if (kind == "loguniform") {
    const std::vector<double> v = parse_doubles(rest);
    if (v.size() != 2) throw Error("loguniform needs lo,hi");
    return WeightLaw::iid_loguniform(v[0], v[1]);
  }
  if (kind == "levels") return WeightLaw::from_levels(parse_doubles(rest));
  throw Error("unknown weight law '" + s + "'");
}

// "2:3,1.5:2.5" -> {(2,3), (1.5,2.5)}
std::vector<std::pair<double, double>> parse_pairs(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  for (const std::string& part : split(s, ',')) {
    const std::vector<std::string> pq = split(part, ':');
    if (pq.size() != 2) throw Error("exponent pair must look like p:q");
    out.emplace_back(parse_double(pq[0]), parse_double(pq[1]));
  }
  return out;
}

struct CommonSolverFlags {
  int restarts = 32;
  int max_iter = 10000;
  double tol = 1e-10;
  bool no_certificate_starts = false;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("--restarts", restarts, "random solver starts");
    cmd->add_option("--max-iter", max_iter, "iteration cap per start");
    cmd->add_option("--tol", tol, "ratio-gain stopping tolerance");
    cmd->add_flag("--no-certificate-starts", no_certificate_starts,
                  "disable the root-path witness starts");
    if (with_seed) cmd->add_option("--seed", seed, "seed for random starts");
  }

  SolverOptions options() const {
    SolverOptions o;
    o.restarts = restarts;
    o.max_iter = max_iter;
    o.tol = tol;
    o.include_certificate_starts = !no_certificate_starts;
    o.seed = seed;
    return o;
  }
};

std::ostream& open_output(std::ofstream& file, const std::string& path, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path);
  if (!file) throw InvalidFile("cannot open " + path + " for writing");
  return file;
}

void emit_estimate(std::ostream& os, const std::string& format, const NormEstimate& est) {
  if (format == "json") {
    nlohmann::ordered_json o;
    o["value"] = est.value;
    o["start"] = est.start_label;
    o["iterations"] = est.iterations;
    o["restarts"] = est.restarts_used;
    o["converged"] = est.converged;
    o["maximizer"] = est.maximizer;
    os << o.dump(2) << '\n';
  } else {
    os << "value " << fmt(est.value) << "\n"
       << "start " << est.start_label << "\n"
       << "iterations " << est.iterations << "\n"
       << "restarts " << est.restarts_used << "\n"
       << "converged " << (est.converged ? 1 : 0) << "\n";
  }
}

void emit_bound(std::ostream& os, const std::string& format, const char* argmax_name,
                const BoundReport& rep) {
  if (format == "json") {
    nlohmann::ordered_json o;
    o["value"] = rep.value;
    o[argmax_name] = rep.argmax;
    o["terms"] = rep.terms;
    os << o.dump(2) << '\n';
  } else {
    os << "value " << fmt(rep.value) << "\n" << argmax_name << " " << rep.argmax << "\n";
  }
}

void emit_partition(std::ostream& os, const std::string& format, const SigmaPartition& part,
                    const PartitionReport& rep) {
  if (format == "json") {
    nlohmann::ordered_json o;
    o["blocks"] = part.block_count();
    o["zero_norm_blocks"] = part.zero_norm_blocks;
    o["block_roots"] = part.block_root;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& c : rep.checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["measured"] = c.measured;
      e["bound"] = c.bound;
      if (!c.note.empty()) e["note"] = c.note;
      checks.push_back(std::move(e));
    }
    o["checks"] = std::move(checks);
    os << o.dump(2) << '\n';
  } else {
    os << "blocks " << part.block_count() << "\n"
       << "zero_norm_blocks " << part.zero_norm_blocks << "\n";
    for (const CheckResult& c : rep.checks) {
      os << "check " << c.name << ' ' << (c.pass ? "pass" : "FAIL") << " measured="
         << fmt(c.measured) << " bound=" << fmt(c.bound);
      if (!c.note.empty()) os << " (" << c.note << ")";
      os << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"weighted summation operators on rooted trees"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a tree+weights file");
  int chain_n = 0, random_n = 0;
  std::string regular_spec, model_spec = "uniform-attachment";
  std::string u_spec = "constant:1", w_spec = "constant:1";
  std::uint64_t gen_seed = 1;
  std::int64_t cap = kDefaultVertexCap;
  std::string gen_out, gen_dot;
  gen->add_option("--chain", chain_n, "chain with N vertices");
  gen->add_option("--regular", regular_spec, "regular tree, branching list b0,b1,...");
  gen->add_option("--random", random_n, "random tree with N vertices");
  gen->add_option("--model", model_spec,
                  "random model: uniform-attachment | bounded-branching:K");
  gen->add_option("--u", u_spec, "u law (constant:c | geometric:r | loguniform:lo,hi | levels:...)");
  gen->add_option("--w", w_spec, "w law");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--cap", cap, "vertex-count cap");
  gen->add_option("-o,--output", gen_out, "output file")->required();
  gen->add_option("--dot", gen_dot, "also write a Graphviz rendering");

  // ---- norm ----
  auto* norm = app.add_subcommand("norm", "estimate an operator norm");
  std::string norm_in, norm_format = "human";
  double norm_p = 0, norm_q = 0;
  bool norm_mixed = false;
  CommonSolverFlags norm_solver;
  norm->add_option("-i,--input", norm_in, "instance file")->required();
  norm->add_option("--p", norm_p, "source exponent")->required();
  norm->add_option("--q", norm_q, "target exponent")->required();
  norm->add_flag("--mixed", norm_mixed, "estimate the mixed-norm value instead");
  norm->add_option("--format", norm_format)->check(CLI::IsMember({"human", "json"}));
  norm_solver.attach(norm);

  // ---- bound ----
  auto* bound = app.add_subcommand("bound", "closed-form bound quantities");
  std::string bound_in, bound_kind = "theorem1", bound_format = "human";
  double bound_p = 0, bound_q = 0;
  bound->add_option("-i,--input", bound_in, "instance file")->required();
  bound->add_option("--p", bound_p, "source exponent")->required();
  bound->add_option("--q", bound_q, "target exponent")->required();
  bound->add_option("--kind", bound_kind)
      ->check(CLI::IsMember({"theorem1", "theorem2-vertex", "bennett"}));
  bound->add_option("--format", bound_format)->check(CLI::IsMember({"human", "json"}));

  // ---- partition ----
  auto* partition = app.add_subcommand("partition", "sigma-partition and reduced tree");
  std::string part_in, part_out, part_dot, part_format = "human";
  double part_p = 2.0, part_q = 0, part_sigma = 0.1;
  CommonSolverFlags part_solver;
  part_solver.restarts = 8;
  int domination_max_n = 40;
  partition->add_option("-i,--input", part_in, "instance file")->required();
  partition->add_option("--q", part_q, "target exponent")->required();
  partition->add_option("--sigma", part_sigma, "carving threshold in (0,1)");
  partition->add_option("--p", part_p, "source exponent (for the reduced u weights)");
  partition->add_option("-o,--output", part_out, "write the reduced tree D here");
  partition->add_option("--dot", part_dot, "Graphviz rendering of D");
  partition->add_option("--format", part_format)->check(CLI::IsMember({"human", "json"}));
  partition->add_option("--domination-max-n", domination_max_n,
                        "largest n for the two-solver domination check");
  part_solver.attach(partition);

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "ratio studies over an ensemble");
  std::string ens_spec = "uniform-attachment", exp_branching, exp_sizes = "10,20,40";
  std::string exp_u = "loguniform:0.25,4", exp_w = "loguniform:0.25,4";
  std::string exp_pairs = "2:3", exp_out, exp_format = "csv";
  int per_size = 5, exp_max_children = 3;
  double exp_sigma = 0.1;
  bool exp_mixed = false;
  std::uint64_t exp_seed = 1;
  CommonSolverFlags exp_solver;
  exp_solver.restarts = 8;
  experiment->add_option("--ensemble", ens_spec)
      ->check(CLI::IsMember({"uniform-attachment", "bounded-branching", "chain", "regular"}));
  experiment->add_option("--max-children", exp_max_children);
  experiment->add_option("--branching", exp_branching, "regular ensemble branching list");
  experiment->add_option("--sizes", exp_sizes, "comma-separated vertex counts");
  experiment->add_option("--per-size", per_size, "instances per size");
  experiment->add_option("--u", exp_u, "u law");
  experiment->add_option("--w", exp_w, "w law");
  experiment->add_option("--pairs", exp_pairs, "exponent grid, p:q comma-separated");
  experiment->add_option("--sigma", exp_sigma, "partition threshold for the stats columns");
  experiment->add_option("--seed", exp_seed, "master seed");
  experiment->add_flag("--mixed", exp_mixed, "also estimate mixed-norm values");
  experiment->add_option("-o,--output", exp_out, "output file (default stdout)");
  experiment->add_option("--format", exp_format)->check(CLI::IsMember({"csv", "json"}));
  exp_solver.attach(experiment, /*with_seed=*/false);

  try {
    std::vector<const char*> argv;
    argv.push_back("hardy");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  }

  try {
    if (gen->parsed()) {
      const int modes = (chain_n > 0) + (!regular_spec.empty()) + (random_n > 0);
      if (modes != 1) throw Error("choose exactly one of --chain, --regular, --random");
      RootedTree t;
      if (chain_n > 0) {
        if (chain_n > cap) throw SizeCapExceeded("chain exceeds the vertex cap");
        t = gen_chain(chain_n);
      } else if (!regular_spec.empty()) {
        t = gen_regular_tree(make_profile(parse_ints(regular_spec)), cap);
      } else {
        if (random_n > cap) throw SizeCapExceeded("random tree exceeds the vertex cap");
        if (model_spec == "uniform-attachment") {
          t = gen_random_tree(random_n, derive_seed(gen_seed, 0), TreeModel::UniformAttachment);
        } else if (model_spec.rfind("bounded-branching:", 0) == 0) {
          const int k = static_cast<int>(parse_double(model_spec.substr(18)));
          t = gen_random_tree(random_n, derive_seed(gen_seed, 0), TreeModel::BoundedBranching, k);
        } else {
          throw Error("unknown model '" + model_spec + "'");
        }
      }
      const WeightPair wt =
          make_weights(t, gen_weights(t, derive_seed(gen_seed, 1), parse_law(u_spec)),
                       gen_weights(t, derive_seed(gen_seed, 2), parse_law(w_spec)));
      save_instance_file(gen_out, t, wt);
      if (!gen_dot.empty()) {
        std::ofstream dot(gen_dot);
        if (!dot) throw InvalidFile("cannot open " + gen_dot + " for writing");
        dot << to_dot(t, wt);
      }
      return 0;
    }

    if (norm->parsed()) {
      const Instance inst = load_instance_file(norm_in);
      const Exponents e(norm_p, norm_q);
      const SolverOptions opts = norm_solver.options();
      const NormEstimate est = norm_mixed ? mixed_operator_norm(inst.tree, inst.weights, e, opts)
                                          : operator_norm(inst.tree, inst.weights, e, opts);
      emit_estimate(out, norm_format, est);
      return 0;
    }

    if (bound->parsed()) {
      const Instance inst = load_instance_file(bound_in);
      const Exponents e(bound_p, bound_q);
      if (bound_kind == "theorem1") {
        emit_bound(out, bound_format, "argmax_vertex", theorem1_bound(inst.tree, inst.weights, e));
      } else if (bound_kind == "theorem2-vertex") {
        emit_bound(out, bound_format, "argmax_vertex",
                   theorem2_vertex_form(inst.tree, inst.weights, e));
      } else {
        // chain criterion: the instance must be a chain, sequences in depth order
        for (const auto& level : level_sets(inst.tree))
          if (level.size() != 1) throw Error("--kind bennett needs a chain instance");
        std::vector<double> useq(inst.tree.n), wseq(inst.tree.n);
        for (VertexId v = 0; v < inst.tree.n; ++v) {
          useq[inst.tree.depth[v]] = inst.weights.u[v];
          wseq[inst.tree.depth[v]] = inst.weights.w[v];
        }
        emit_bound(out, bound_format, "argmax_position", bennett_bound(useq, wseq, e));
      }
      return 0;
    }

    if (partition->parsed()) {
      const Instance inst = load_instance_file(part_in);
      const Exponents e(part_p, part_q);
      SigmaPartition part = build_partition(inst.tree, inst.weights.w, part_q, part_sigma);
      part = reduce(inst.tree, inst.weights, e, part);
      VerifyOptions vopts;
      vopts.domination_max_n = domination_max_n;
      vopts.solver = part_solver.options();
      const PartitionReport rep =
          verify_partition(inst.tree, inst.weights, e, part, part_sigma, vopts);
      emit_partition(out, part_format, part, rep);
      if (!part_out.empty())
        save_instance_file(part_out, part.reduced, WeightPair{part.u_hat, part.w_hat});
      if (!part_dot.empty()) {
        std::ofstream dot(part_dot);
        if (!dot) throw InvalidFile("cannot open " + part_dot + " for writing");
        dot << to_dot(part.reduced, WeightPair{part.u_hat, part.w_hat});
      }
      return 0;
    }

    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (ens_spec == "uniform-attachment")
        cfg.ensemble = ExperimentConfig::Ensemble::UniformAttachment;
      else if (ens_spec == "bounded-branching")
        cfg.ensemble = ExperimentConfig::Ensemble::BoundedBranching;
      else if (ens_spec == "chain")
        cfg.ensemble = ExperimentConfig::Ensemble::Chain;
      else
        cfg.ensemble = ExperimentConfig::Ensemble::Regular;
      cfg.max_children = exp_max_children;
      if (!exp_branching.empty()) cfg.branching = parse_ints(exp_branching);
      cfg.sizes = parse_ints(exp_sizes);
      cfg.per_size = per_size;
      cfg.u_law = parse_law(exp_u);
      cfg.w_law = parse_law(exp_w);
      cfg.pairs = parse_pairs(exp_pairs);
      cfg.sigma = exp_sigma;
      cfg.seed = exp_seed;
      cfg.mixed = exp_mixed;
      exp_solver.seed = derive_seed(exp_seed, 3);
      cfg.solver = exp_solver.options();
      const std::vector<ExperimentRecord> records = run_experiment(cfg);
      std::ofstream file;
      std::ostream& os = open_output(file, exp_out, out);
      if (exp_format == "csv")
        write_records_csv(os, records);
      else
        write_records_json(os, records);
      return 0;
    }
  } catch (const SizeCapExceeded& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitCapExceeded;
  } catch (const InvalidFile& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitBadInput;
  } catch (const NonFiniteIterate& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitNonFinite;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitBadFlags;
  }
  return kExitBadFlags;
}

}  // namespace hardy::cli
