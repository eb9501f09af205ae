#include "hardy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

namespace {

BoundReport max_of_terms(std::vector<double> terms) {
  BoundReport rep;
  rep.terms = std::move(terms);
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    if (rep.argmax < 0 || rep.terms[i] > rep.value) {
      rep.value = rep.terms[i];
      rep.argmax = static_cast<int>(i);
    }
  }
  return rep;
}

}  // namespace

BoundReport theorem1_bound(const RootedTree& t, const WeightPair& wt, const Exponents& e) {
  const std::vector<double> up = path_norms(t, wt.u, e.p_prime);
  const std::vector<double> wq = subtree_norms(t, wt.w, e.q);
  std::vector<double> terms(t.n);
  for (VertexId v = 0; v < t.n; ++v) terms[v] = up[v] * wq[v];
  return max_of_terms(std::move(terms));
}

std::vector<double> lower_certificate(const RootedTree& t, const WeightPair& wt,
                                      const Exponents& e, VertexId xi) {
  if (!t.valid_vertex(xi)) throw InvalidVertex("vertex " + std::to_string(xi));
  std::vector<double> f(t.n, 0.0);
  const double a = e.p_prime / e.p;  // = 1/(p-1)
  for (VertexId eta : path_to_root(t, xi)) f[eta] = std::pow(wt.u[eta], a);
  return f;
}

BoundReport bennett_bound(std::span<const double> u_seq, std::span<const double> w_seq,
                          const Exponents& e) {
  if (u_seq.size() != w_seq.size())
    throw LengthMismatch("u has " + std::to_string(u_seq.size()) + " entries, w has " +
                         std::to_string(w_seq.size()));
  if (!(e.p <= e.q)) throw InvalidExponent("the chain criterion requires p <= q");
  const std::size_t n = u_seq.size();
  if (n == 0) throw InvalidSize("sequences must be nonempty");

  // suffix q-norms of w, max-factored
  std::vector<double> suffix(n, 0.0);
  {
    double m = 0.0, s = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      const double x = std::abs(w_seq[i]);
      if (x > m) {
        if (m > 0.0) s *= std::pow(m / x, e.q);
        m = x;
      }
      if (m > 0.0) s += std::pow(x / m, e.q);
      suffix[i] = m == 0.0 ? 0.0 : m * std::pow(s, 1.0 / e.q);
    }
  }
  // prefix p'-norms of u
  std::vector<double> prefix(n, 0.0);
  {
    double m = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::abs(u_seq[i]);
      if (x > m) {
        if (m > 0.0) s *= std::pow(m / x, e.p_prime);
        m = x;
      }
      if (m > 0.0) s += std::pow(x / m, e.p_prime);
      prefix[i] = m == 0.0 ? 0.0 : m * std::pow(s, 1.0 / e.p_prime);
    }
  }
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = suffix[i] * prefix[i];
  return max_of_terms(std::move(terms));
}

BoundReport theorem2_bound(const LevelProfile& profile, const LevelWeights& lw,
                           const Exponents& e) {
  const std::size_t depth = profile.S.size();
  if (lw.u_levels.size() != depth || lw.w_levels.size() != depth)
    throw DepthMismatch("level weights must have " + std::to_string(depth) + " entries");

  std::vector<double> terms(depth, 0.0);
  for (std::size_t j = 0; j < depth; ++j) {
    // c_i = w_i * (S(i)/S(j))^(1/q) for i >= j, summed in max-factored form
    double m = 0.0;
    for (std::size_t i = j; i < depth; ++i)
      m = std::max(m, lw.w_levels[i] * std::pow(profile.S[i] / profile.S[j], 1.0 / e.q));
    if (m == 0.0) continue;
    double s = 0.0;
    for (std::size_t i = j; i < depth; ++i) {
      const double c = lw.w_levels[i] * std::pow(profile.S[i] / profile.S[j], 1.0 / e.q);
      s += std::pow(c / m, e.q);
    }
    terms[j] = lw.u_levels[j] * m * std::pow(s, 1.0 / e.q);
  }
  return max_of_terms(std::move(terms));
}

BoundReport theorem2_vertex_form(const RootedTree& t, const WeightPair& wt, const Exponents& e) {
  const std::vector<double> wq = subtree_norms(t, wt.w, e.q);
  std::vector<double> terms(t.n);
  for (VertexId v = 0; v < t.n; ++v) terms[v] = wt.u[v] * wq[v];
  return max_of_terms(std::move(terms));
}

}  // namespace hardy
