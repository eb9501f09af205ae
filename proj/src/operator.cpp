#include "hardy/operator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>

#include "hardy/bounds.hpp"
#include "hardy/rng.hpp"

namespace hardy {

namespace {

void check_size(const RootedTree& t, std::size_t m) {
  if (m != static_cast<std::size_t>(t.n))
    throw DimensionMismatch("expected " + std::to_string(t.n) + " values, got " + std::to_string(m));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

namespace {

// scratch-buffer versions used by the solver loops
void apply_into(const RootedTree& t, const WeightPair& wt, std::span<const double> f,
                std::vector<double>& running, std::vector<double>& g) {
  running.resize(t.n);
  g.resize(t.n);
  for (VertexId v : t.order) {
    const VertexId p = t.parent[v];
    running[v] = (p == kNoParent ? 0.0 : running[p]) + wt.u[v] * f[v];
    g[v] = wt.w[v] * running[v];
  }
}

void adjoint_into(const RootedTree& t, const WeightPair& wt, std::span<const double> y,
                  std::vector<double>& acc, std::vector<double>& h) {
  acc.resize(t.n);
  h.resize(t.n);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    const VertexId v = *it;
    double s = wt.w[v] * y[v];
    for (VertexId c : t.children[v]) s += acc[c];
    acc[v] = s;
    h[v] = wt.u[v] * s;
  }
}

}  // namespace

std::vector<double> apply_summation(const RootedTree& t, const WeightPair& wt,
                                    std::span<const double> f) {
  check_size(t, f.size());
  check_size(t, wt.u.size());
  std::vector<double> running, g;
  apply_into(t, wt, f, running, g);
  return g;
}

std::vector<double> adjoint_apply(const RootedTree& t, const WeightPair& wt,
                                  std::span<const double> y) {
  check_size(t, y.size());
  check_size(t, wt.u.size());
  std::vector<double> acc, h;
  adjoint_into(t, wt, y, acc, h);
  return h;
}

double lp_norm(std::span<const double> f, double r) {
  if (!(r > 1.0) || !std::isfinite(r))
    throw InvalidExponent("norm exponent must satisfy 1 < r < inf");
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : f) s += std::pow(std::abs(x) / m, r);
  return m * std::pow(s, 1.0 / r);
}

double mixed_norm(const RootedTree& t, std::span<const double> f, double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q))
    throw InvalidExponent("mixed norm exponents must satisfy 1 < p, q < inf");
  check_size(t, f.size());
  // per-level l_p norms, max-factored within each level and across levels
  std::vector<double> level_norm(t.max_depth + 1, 0.0);
  std::vector<double> level_max(t.max_depth + 1, 0.0);
  for (VertexId v = 0; v < t.n; ++v)
    level_max[t.depth[v]] = std::max(level_max[t.depth[v]], std::abs(f[v]));
  std::vector<double> level_sum(t.max_depth + 1, 0.0);
  for (VertexId v = 0; v < t.n; ++v) {
    const int j = t.depth[v];
    if (level_max[j] > 0.0) level_sum[j] += std::pow(std::abs(f[v]) / level_max[j], p);
  }
  for (int j = 0; j <= t.max_depth; ++j)
    level_norm[j] = level_max[j] == 0.0 ? 0.0 : level_max[j] * std::pow(level_sum[j], 1.0 / p);
  return lp_norm(level_norm, q);
}

namespace {

struct Start {
  std::string label;
  std::vector<double> f;
};

struct AscentOutcome {
  double ratio = 0.0;
  std::vector<double> f;
  int iterations = 0;
  bool converged = false;
  double max_drop = 0.0;
};

void ensure_finite(double x) {
  if (!std::isfinite(x))
    throw NonFiniteIterate("iterate overflowed; rescale the weights and retry");
}

// Alternating dual-map ascent for the plain l_p -> l_q ratio. Each sweep
// applies the operator, takes the q-dual of the image, pulls it back with
// the adjoint and takes the p-dual, then renormalizes. Iterates are scaled
// by their maximum before powers are taken; the scale cancels in the
// normalization.
AscentOutcome power_ascent(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                           std::vector<double> f, int max_iter, double tol) {
  AscentOutcome out;
  const double fn = lp_norm(f, e.p);
  if (fn == 0.0) return out;
  for (double& x : f) x /= fn;

  std::vector<double> g, y(t.n), h, scratch;
  apply_into(t, wt, f, scratch, g);
  double ratio = lp_norm(g, e.q);
  ensure_finite(ratio);
  out.ratio = ratio;
  out.f = f;

  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const double gmax = max_abs(g);
    if (gmax == 0.0) {
      out.converged = true;
      break;
    }
    for (VertexId v = 0; v < t.n; ++v) y[v] = std::pow(g[v] / gmax, e.q - 1.0);
    adjoint_into(t, wt, y, scratch, h);
    const double hmax = max_abs(h);
    if (hmax == 0.0) {
      out.converged = true;
      break;
    }
    for (VertexId v = 0; v < t.n; ++v) f[v] = std::pow(h[v] / hmax, 1.0 / (e.p - 1.0));
    const double nrm = lp_norm(f, e.p);
    ensure_finite(nrm);
    for (double& x : f) x /= nrm;

    apply_into(t, wt, f, scratch, g);
    const double next = lp_norm(g, e.q);
    ensure_finite(next);
    if (next > out.ratio) {
      out.ratio = next;
      out.f = f;
    }
    out.max_drop = std::max(out.max_drop, ratio - next);
    assert(!(e.p <= e.q) || next >= ratio - 1e-12 * std::max(1.0, ratio));
    if (next - ratio < tol * std::max(1.0, ratio)) {
      ratio = next;
      out.converged = true;
      break;
    }
    ratio = next;
  }
  return out;
}

// Projected ascent for the mixed-norm ratio on the unit sphere. The ascent
// direction at f points to the dual-map target F(f): the exact maximizer of
// <grad ||Sf||_q, .> over the mixed-norm unit ball (per level j,
// F propto a_j^(q'-p') z^(p'-1) with z the pulled-back image power and
// a_j the level p'-norm of z). The full step theta = 1 is the fixed-point
// sweep and is tried first; failing that, theta backtracks along the
// segment and only improvements are accepted.
AscentOutcome mixed_ascent(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                           std::vector<double> f, int max_iter, double tol) {
  AscentOutcome out;
  const double fn = mixed_norm(t, f, e.p, e.q);
  if (fn == 0.0) return out;
  for (double& x : f) x /= fn;

  std::vector<double> g, y(t.n), z, gt, scratch;
  apply_into(t, wt, f, scratch, g);
  double ratio = lp_norm(g, e.q);
  ensure_finite(ratio);
  out.ratio = ratio;
  out.f = f;

  std::vector<double> target(t.n), trial(t.n);
  std::vector<double> level_norm(t.max_depth + 1), level_max(t.max_depth + 1),
      level_sum(t.max_depth + 1);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const double gmax = max_abs(g);
    if (gmax == 0.0) {
      out.converged = true;
      break;
    }
    for (VertexId v = 0; v < t.n; ++v) y[v] = std::pow(g[v] / gmax, e.q - 1.0);
    adjoint_into(t, wt, y, scratch, z);
    if (max_abs(z) == 0.0) {
      out.converged = true;
      break;
    }

    // dual-map target on the mixed-norm sphere: per level,
    // target propto a_j^(q'-1) * (z/a_j)^(p'-1) with a_j = ||z_j||_{p'}
    std::fill(level_max.begin(), level_max.end(), 0.0);
    std::fill(level_sum.begin(), level_sum.end(), 0.0);
    for (VertexId v = 0; v < t.n; ++v)
      level_max[t.depth[v]] = std::max(level_max[t.depth[v]], std::abs(z[v]));
    for (VertexId v = 0; v < t.n; ++v) {
      const int j = t.depth[v];
      if (level_max[j] > 0.0) level_sum[j] += std::pow(std::abs(z[v]) / level_max[j], e.p_prime);
    }
    double amax = 0.0;
    for (int j = 0; j <= t.max_depth; ++j) {
      level_norm[j] =
          level_max[j] == 0.0 ? 0.0 : level_max[j] * std::pow(level_sum[j], 1.0 / e.p_prime);
      amax = std::max(amax, level_norm[j]);
    }
    for (VertexId v = 0; v < t.n; ++v) {
      const double a = level_norm[t.depth[v]];
      target[v] = a == 0.0 ? 0.0
                           : std::pow(a / amax, e.q_prime - 1.0) * std::pow(z[v] / a, e.p_prime - 1.0);
    }
    const double tn = mixed_norm(t, target, e.p, e.q);
    if (tn == 0.0) {
      out.converged = true;
      break;
    }
    for (double& x : target) x /= tn;

    bool accepted = false;
    double next = ratio;
    double theta = 1.0;
    for (int bt = 0; bt < 50 && !accepted; ++bt) {
      for (VertexId v = 0; v < t.n; ++v) trial[v] = (1.0 - theta) * f[v] + theta * target[v];
      const double mn = mixed_norm(t, trial, e.p, e.q);
      if (mn > 0.0 && std::isfinite(mn)) {
        for (double& x : trial) x /= mn;
        apply_into(t, wt, trial, scratch, gt);
        const double rt = lp_norm(gt, e.q);
        ensure_finite(rt);
        if (rt > ratio) {
          f.swap(trial);
          g.swap(gt);
          next = rt;
          accepted = true;
          break;
        }
      }
      theta *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    if (next > out.ratio) {
      out.ratio = next;
      out.f = f;
    }
    if (next - ratio < tol * std::max(1.0, ratio)) {
      ratio = next;
      out.converged = true;
      break;
    }
    ratio = next;
  }
  return out;
}

bool weights_degenerate(const WeightPair& wt) {
  return max_abs(wt.u) == 0.0 || max_abs(wt.w) == 0.0;
}

NormEstimate degenerate_estimate(const RootedTree& t, double source_unit_scale) {
  NormEstimate est;
  est.value = 0.0;
  est.maximizer.assign(t.n, source_unit_scale);
  est.converged = true;
  est.start_label = "constant";
  return est;
}

std::vector<Start> collect_starts(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                                  const SolverOptions& opts) {
  std::vector<Start> starts;
  if (opts.include_certificate_starts) {
    for (VertexId xi = 0; xi < t.n; ++xi)
      starts.push_back({"certificate:" + std::to_string(xi), lower_certificate(t, wt, e, xi)});
  }
  starts.push_back({"constant", std::vector<double>(t.n, 1.0)});
  for (int k = 0; k < opts.restarts; ++k) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(k)));
    std::vector<double> f(t.n);
    for (double& x : f) x = rng.next_u01();
    starts.push_back({"random:" + std::to_string(k), std::move(f)});
  }
  for (std::size_t k = 0; k < opts.extra_starts.size(); ++k) {
    if (opts.extra_starts[k].size() != static_cast<std::size_t>(t.n))
      throw DimensionMismatch("extra start " + std::to_string(k) + " has wrong length");
    starts.push_back({"extra:" + std::to_string(k), opts.extra_starts[k]});
  }
  return starts;
}

template <typename Ascent, typename SourceNorm>
NormEstimate run_multistart(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                            const SolverOptions& opts, Ascent ascent, SourceNorm source_norm) {
  if (weights_degenerate(wt)) {
    std::vector<double> ones(t.n, 1.0);
    return degenerate_estimate(t, 1.0 / source_norm(ones));
  }

  NormEstimate est;
  est.restarts_used = opts.restarts;
  est.value = -1.0;
  for (Start& s : collect_starts(t, wt, e, opts)) {
    if (max_abs(s.f) == 0.0) continue;
    AscentOutcome o = ascent(std::move(s.f), opts.max_iter, opts.tol);
    est.max_ratio_drop = std::max(est.max_ratio_drop, o.max_drop);
    if (o.ratio > est.value) {
      est.value = o.ratio;
      est.maximizer = std::move(o.f);
      est.iterations = o.iterations;
      est.converged = o.converged;
      est.start_label = s.label;
    }
  }
  if (est.value < 0.0) {
    // every start was identically zero
    std::vector<double> ones(t.n, 1.0);
    return degenerate_estimate(t, 1.0 / source_norm(ones));
  }

  // self-certification: renormalize the maximizer and recompute its ratio
  const double nrm = source_norm(est.maximizer);
  for (double& x : est.maximizer) x = std::max(x, 0.0) / nrm;
  est.value = lp_norm(apply_summation(t, wt, est.maximizer), e.q) / source_norm(est.maximizer);
  return est;
}

}  // namespace

NormEstimate operator_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                           const SolverOptions& opts) {
  check_size(t, wt.u.size());
  check_size(t, wt.w.size());
  return run_multistart(
      t, wt, e, opts,
      [&](std::vector<double> f, int mi, double tol) { return power_ascent(t, wt, e, std::move(f), mi, tol); },
      [&](const std::vector<double>& f) { return lp_norm(f, e.p); });
}

NormEstimate mixed_operator_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                                 const SolverOptions& opts) {
  check_size(t, wt.u.size());
  check_size(t, wt.w.size());
  return run_multistart(
      t, wt, e, opts,
      [&](std::vector<double> f, int mi, double tol) { return mixed_ascent(t, wt, e, std::move(f), mi, tol); },
      [&](const std::vector<double>& f) { return mixed_norm(t, f, e.p, e.q); });
}

namespace {

double golden_max(const std::function<double(double)>& phi, double lo, double hi, int iters) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = phi(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = phi(x1);
    }
  }
  return f1 < f2 ? x2 : x1;
}

}  // namespace

double brute_force_norm(const RootedTree& t, const WeightPair& wt, const Exponents& e,
                        int samples, std::uint64_t seed) {
  if (t.n > 8) throw TooLarge("brute force is limited to n <= 8, got n = " + std::to_string(t.n));
  check_size(t, wt.u.size());
  check_size(t, wt.w.size());
  if (weights_degenerate(wt)) return 0.0;

  const auto ratio = [&](const std::vector<double>& f) {
    const double den = lp_norm(f, e.p);
    if (den == 0.0) return 0.0;
    return lp_norm(apply_summation(t, wt, f), e.q) / den;
  };

  // keep the best few sampled directions as refinement seeds
  constexpr int kSeeds = 5;
  std::vector<std::pair<double, std::vector<double>>> top;
  const auto offer = [&](const std::vector<double>& f) {
    const double r = ratio(f);
    if (top.size() < kSeeds) {
      top.emplace_back(r, f);
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
    } else if (r > top.back().first) {
      top.back() = {r, f};
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
    }
  };

  std::vector<double> f(t.n, 1.0);
  offer(f);
  for (VertexId v = 0; v < t.n; ++v) {
    std::fill(f.begin(), f.end(), 0.0);
    f[v] = 1.0;
    offer(f);
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    for (double& x : f)
      x = (s % 2 == 0) ? rng.next_u01() : -std::log1p(-rng.next_u01());
    offer(f);
  }

  double best = 0.0;
  for (auto& [r0, seed_f] : top) {
    std::vector<double> g = seed_f;
    double cur = r0;
    Rng dir_rng(derive_seed(seed, 99));
    for (int pass = 0; pass < 400; ++pass) {
      const double before = cur;
      const double scale = std::max(max_abs(g), 1e-12);
      for (double& x : g) x /= scale;

      // axis-aligned sweeps
      for (VertexId v = 0; v < t.n; ++v) {
        double hi = std::max({4.0 * g[v], 2.0, 4.0 * max_abs(g)});
        const std::function<double(double)> phi = [&](double x) {
          const double keep = g[v];
          g[v] = x;
          const double r = ratio(g);
          g[v] = keep;
          return r;
        };
        for (int grow = 0; grow < 40; ++grow) {
          const double x = golden_max(phi, 0.0, hi, 90);
          if (x < 0.97 * hi || hi > 1e9) {
            if (phi(x) > cur) {
              g[v] = x;
              cur = phi(x);
            }
            break;
          }
          hi *= 4.0;
        }
      }

      // random-direction line searches escape ridges the axis sweeps crawl
      // along
      std::vector<double> d(t.n), probe(t.n);
      for (int round = 0; round < 2 * t.n; ++round) {
        for (double& x : d) x = 2.0 * dir_rng.next_u01() - 1.0;
        const double span = 2.0 * std::max(max_abs(g), 1.0);
        const std::function<double(double)> phi = [&](double s) {
          for (VertexId v = 0; v < t.n; ++v) probe[v] = std::max(0.0, g[v] + s * d[v]);
          return ratio(probe);
        };
        const double s = golden_max(phi, -span, span, 90);
        const double val = phi(s);
        if (val > cur) {
          for (VertexId v = 0; v < t.n; ++v) g[v] = std::max(0.0, g[v] + s * d[v]);
          cur = val;
        }
      }

      if (cur - before < 1e-11 * std::max(1.0, cur)) break;
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace hardy
