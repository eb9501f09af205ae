#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hardy/tree.hpp"

namespace hardy {

// g(xi) = w(xi) * sum_{xi' <= xi} u(xi') f(xi'); one top-down pass.
std::vector<double> apply_summation(const RootedTree& t, const WeightPair& wt,
                                    std::span<const double> f);

// h(eta) = u(eta) * sum_{xi >= eta} w(xi) y(xi); one bottom-up pass.
// Satisfies <Sf, y> = <f, adjoint_apply(y)>.
std::vector<double> adjoint_apply(const RootedTree& t, const WeightPair& wt,
                                  std::span<const double> y);

// (sum |f_i|^r)^(1/r) with the maximum factored out.
double lp_norm(std::span<const double> f, double r);

// (sum_j (sum_{xi at depth j} |f(xi)|^p)^(q/p))^(1/q).
double mixed_norm(const RootedTree& t, std::span<const double> f, double p, double q);

struct SolverOptions {
  int restarts = 32;            // random starts
  int max_iter = 10000;         // per start
  double tol = 1e-10;           // stop when the ratio gain falls below tol
  bool include_certificate_starts = true;
  std::uint64_t seed = 1;
  std::vector<std::vector<double>> extra_starts;  // caller-supplied warm starts
};

// Certified lower bound on an operator norm: `value` is the Rayleigh ratio
// of `maximizer`, recomputed from it after the search.
struct NormEstimate {
  double value = 0.0;
  std::vector<double> maximizer;  // entrywise >= 0, unit source norm
  int iterations = 0;             // iterations spent by the winning start
  int restarts_used = 0;
  bool converged = false;
  std::string start_label;        // "certificate:<xi>" | "constant" | "random:<k>" | "extra:<k>"
  double max_ratio_drop = 0.0;    // worst per-iteration ratio decrease seen (fp noise tracker)
};

// Lower-bound estimate of the l_p -> l_q norm of the summation operator by
// alternating dual-map ascent over nonnegative f, multi-start. Certificate
// starts (one root-path witness per vertex) make the result >= the
// closed-form bound quantity M whenever they are enabled.
NormEstimate operator_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                           const SolverOptions& opts = {});

// Lower-bound estimate of the l_q(l_p) -> l_q norm by projected gradient
// ascent on the mixed-norm unit sphere with backtracking line search.
NormEstimate mixed_operator_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                                 const SolverOptions& opts = {});

// Reference value for tiny instances (n <= 8): best Rayleigh ratio over
// seeded random nonnegative directions, each candidate polished by cyclic
// coordinate-wise golden-section ascent. Independent of the iterative
// solvers above.
double brute_force_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                        int samples = 100000, std::uint64_t seed = 1);

}  // namespace hardy
