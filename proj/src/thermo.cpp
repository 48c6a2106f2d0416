#include "ergo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ergo/error.hpp"

namespace ergo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum(const std::vector<double>& v) {
  const double hi = *std::max_element(v.begin(), v.end());
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

std::vector<double> exp_all(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::exp(x); });
  return out;
}

using LogOperator = std::function<std::vector<double>(const std::vector<double>&)>;

std::vector<double> apply_right(const RuelleMatrix& m, const std::vector<double>& lv) {
  std::vector<double> out(m.nodes, kNegInf);
  for (std::size_t e = 0; e < m.log_edge.size(); ++e) {
    auto& o = out[m.target(e)];
    o = log_add(o, m.log_edge[e] + lv[m.source(e)]);
  }
  return out;
}

std::vector<double> apply_left(const RuelleMatrix& m, const std::vector<double>& lv) {
  std::vector<double> out(m.nodes, kNegInf);
  for (std::size_t e = 0; e < m.log_edge.size(); ++e) {
    auto& o = out[m.source(e)];
    o = log_add(o, m.log_edge[e] + lv[m.target(e)]);
  }
  return out;
}

struct PowerResult {
  double log_lambda;
  std::vector<double> lv;
  double gap;
  std::size_t iterations;
};

// Collatz-Wielandt bounds lo <= log lambda <= hi close in on the Perron root.
PowerResult log_power_iteration(std::size_t n, const LogOperator& apply) {
  std::vector<double> lv(n, 0.0);
  double prev = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= kMaxPowerIterations; ++it) {
    const auto ly = apply(lv);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, ly[i] - lv[i]);
      hi = std::max(hi, ly[i] - lv[i]);
    }
    const double est = 0.5 * (lo + hi);
    gap = hi - lo;
    if (gap < 1e-13 || (gap < 1e-12 && std::abs(est - prev) < 1e-14)) {
      return {est, lv, gap, it};
    }
    prev = est;
    double top = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
      lv[i] = log_add(ly[i], est + lv[i]);
      top = std::max(top, lv[i]);
    }
    for (auto& x : lv) x -= top;
  }
  std::ostringstream msg;
  msg << "power iteration did not converge in " << kMaxPowerIterations
      << " steps; Collatz-Wielandt gap " << gap;
  throw Error(ErrorKind::kNumeric, msg.str());
}

}  // namespace

RuelleMatrix ruelle_matrix(const Potential& A, double beta) {
  if (!(beta > 0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::kInvalidInput, "beta must be finite and positive");
  }
  RuelleMatrix m;
  m.beta = beta;
  m.alphabet_size = A.alphabet_size();
  m.node_depth = A.depth() - 1;
  m.nodes = ipow(A.alphabet_size(), m.node_depth);
  m.log_edge.resize(A.size());
  for (std::size_t e = 0; e < A.size(); ++e) m.log_edge[e] = beta * to_double(A[e]);
  return m;
}

std::vector<double> EigenTriple::phi() const { return exp_all(log_phi); }
std::vector<double> EigenTriple::nu() const { return exp_all(log_nu); }
std::vector<double> EigenTriple::mu() const { return exp_all(log_mu); }

EigenTriple leading_eigs(const RuelleMatrix& m) {
  const auto right = log_power_iteration(
      m.nodes, [&](const std::vector<double>& v) { return apply_right(m, v); });
  const auto left = log_power_iteration(
      m.nodes, [&](const std::vector<double>& v) { return apply_left(m, v); });
  EigenTriple t;
  t.log_lambda = right.log_lambda;
  t.iterations = right.iterations + left.iterations;
  t.log_phi = right.lv;
  const double top = *std::max_element(t.log_phi.begin(), t.log_phi.end());
  for (auto& x : t.log_phi) x -= top;
  t.log_nu = left.lv;
  const double mass = log_sum(t.log_nu);
  for (auto& x : t.log_nu) x -= mass;
  t.log_mu.resize(m.nodes);
  for (std::size_t i = 0; i < m.nodes; ++i) t.log_mu[i] = t.log_phi[i] + t.log_nu[i];
  const double z = log_sum(t.log_mu);
  for (auto& x : t.log_mu) x -= z;
  const auto img = apply_right(m, t.log_phi);
  for (std::size_t i = 0; i < m.nodes; ++i) {
    t.residual = std::max(t.residual, std::abs(std::exp(img[i] - t.log_lambda) -
                                               std::exp(t.log_phi[i])));
  }
  return t;
}

double log_cylinder_mass(const RuelleMatrix& m, const EigenTriple& eig, const Word& u) {
  const std::size_t len = u.size();
  const std::size_t depth = static_cast<std::size_t>(m.node_depth);
  const int d = m.alphabet_size;
  if (len < depth) {
    std::vector<double> parts;
    const std::size_t tail = ipow(d, static_cast<int>(depth - len));
    const std::size_t first = u.index() * tail;
    for (std::size_t v = first; v < first + tail; ++v) parts.push_back(eig.log_mu[v]);
    return log_sum(parts);
  }
  const auto s = u.symbols();
  double out = eig.log_mu[word_index(s.first(depth), d)] - eig.log_nu[word_index(s.first(depth), d)];
  for (std::size_t j = 0; j + depth < len; ++j) {
    out += m.log_edge[word_index(s.subspan(j, depth + 1), d)] - eig.log_lambda;
  }
  out += eig.log_nu[word_index(s.subspan(len - depth, depth), d)];
  return out;
}

Rational deviation_infimum(const MaxPlusAnalysis& an, const Word& u) {
  const auto& g = an.graph;
  const std::size_t depth = static_cast<std::size_t>(g.node_depth());
  const int d = g.alphabet_size();
  if (u.size() < depth) {
    const std::size_t tail = ipow(d, static_cast<int>(depth - u.size()));
    const std::size_t first = u.index() * tail;
    Rational best = an.J[first];
    for (std::size_t v = first + 1; v < first + tail; ++v) best = std::min(best, an.J[v]);
    return best;
  }
  const auto s = u.symbols();
  Rational sum = 0;
  for (std::size_t j = 0; j + depth < u.size(); ++j) {
    sum += an.R.values[word_index(s.subspan(j, depth + 1), d)];
  }
  return sum + an.J[word_index(s.subspan(u.size() - depth, depth), d)];
}

ConvergenceReport beta_scan(const Potential& A, const std::vector<double>& betas) {
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) {
      throw Error(ErrorKind::kInvalidInput, "beta values must be increasing");
    }
  }
  const auto an = analyze_maxplus(A);
  ConvergenceReport rep;
  rep.m = an.cs.m;
  rep.unique_maximizer = an.cs.unique_maximizer;
  const double m = to_double(an.cs.m);
  const auto& g = an.graph;
  const std::size_t anchor = an.V.anchor;
  std::vector<double> orbit_mass;
  if (rep.unique_maximizer) {
    orbit_mass.assign(g.node_count(), 0.0);
    const auto& cyc = an.cs.maximizing_orbits.front();
    for (auto v : cyc.nodes(g)) orbit_mass[v] += 1.0 / static_cast<double>(cyc.edges.size());
  }
  for (double beta : betas) {
    const auto mat = ruelle_matrix(A, beta);
    const auto eig = leading_eigs(mat);
    ScanRow row;
    row.beta = beta;
    row.pressure_over_beta = eig.log_lambda / beta;
    row.pressure_gap = row.pressure_over_beta - m;
    const double V0 = to_double(an.V.values[anchor]);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      const double est = (eig.log_phi[v] - eig.log_phi[anchor]) / beta;
      const double exact = to_double(an.V.values[v]) - V0;
      row.subaction_gap = std::max(row.subaction_gap, std::abs(est - exact));
    }
    row.masses = eig.mu();
    if (rep.unique_maximizer) {
      double tv = 0.0;
      for (std::size_t v = 0; v < g.node_count(); ++v) tv += std::abs(row.masses[v] - orbit_mass[v]);
      row.tv_distance = 0.5 * tv;
      double worst = 0.0;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Word u = g.edge_word(e);
        const double rate = -log_cylinder_mass(mat, eig, u) / beta;
        worst = std::max(worst, std::abs(rate - to_double(deviation_infimum(an, u))));
      }
      row.ldp_gap = worst;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string ConvergenceReport::csv() const {
  std::ostringstream out;
  out << std::setprecision(15);
  out << "beta,pressure_over_beta,pressure_gap,subaction_gap,tv_distance";
  if (unique_maximizer) out << ",ldp_gap";
  out << "\n";
  for (const auto& r : rows) {
    out << r.beta << ',' << r.pressure_over_beta << ',' << r.pressure_gap << ','
        << r.subaction_gap << ',';
    if (r.tv_distance) out << *r.tv_distance;
    if (unique_maximizer) out << ',' << r.ldp_gap.value_or(0.0);
    out << "\n";
  }
  return out.str();
}

double kernel_normalization(const EigenTriple& eig_A, const EigenTriple& eig_Astar,
                            const KernelTable& W, double beta) {
  const std::size_t n = W.node_count();
  std::vector<double> terms;
  terms.reserve(n * n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < n; ++x) {
      terms.push_back(eig_Astar.log_nu[w] + eig_A.log_nu[x] + beta * to_double(W(w, x)));
    }
  }
  return log_sum(terms);
}

KernelIdentityReport verify_kernel_identity(const Potential& A, const Potential& Astar,
                                            const KernelTable& W, double beta) {
  const auto eA = leading_eigs(ruelle_matrix(A, beta));
  const auto eS = leading_eigs(ruelle_matrix(Astar, beta));
  const std::size_t n = W.node_count();
  KernelIdentityReport rep;
  rep.c = kernel_normalization(eA, eS, W, beta);
  std::vector<double> all;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < n; ++x) {
      all.push_back(eS.log_nu[w] + eA.log_nu[x] + beta * to_double(W(w, x)) - rep.c);
    }
  }
  rep.mass = std::exp(log_sum(all));
  // Eigenfunctions scaled so that their integral against the eigenmeasure is 1,
  // which is the normalization both integrals inherit from c.
  auto scaled = [](const EigenTriple& e) {
    std::vector<double> s(e.log_phi.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = e.log_phi[i] + e.log_nu[i];
    const double z = log_sum(s);
    auto out = e.log_phi;
    for (auto& x : out) x -= z;
    return out;
  };
  const auto phi_s = scaled(eS);
  const auto phi_a = scaled(eA);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> t(n);
    for (std::size_t x = 0; x < n; ++x) t[x] = beta * to_double(W(w, x)) - rep.c + eA.log_nu[x];
    rep.residual_dual = std::max(rep.residual_dual, std::abs(std::expm1(log_sum(t) - phi_s[w])));
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> t(n);
    for (std::size_t w = 0; w < n; ++w) t[w] = beta * to_double(W(w, x)) - rep.c + eS.log_nu[w];
    rep.residual_primal = std::max(rep.residual_primal, std::abs(std::expm1(log_sum(t) - phi_a[x])));
  }
  rep.residual = std::max(rep.residual_dual, rep.residual_primal);
  rep.violated = rep.residual > kKernelIdentityTolerance;
  return rep;
}

LdpReport ldp_rate_check(const Potential& A, const Word& cylinder,
                         const std::vector<double>& betas) {
  const auto an = analyze_maxplus(A);
  if (!an.cs.unique_maximizer) {
    throw Error(ErrorKind::kNotUnique, "large deviation check needs a unique maximizing orbit");
  }
  if (cylinder.alphabet_size() != A.alphabet_size()) {
    throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
  }
  LdpReport rep{cylinder, deviation_infimum(an, cylinder), {}};
  const double inf_rate = to_double(rep.inf_rate);
  for (double beta : betas) {
    const auto mat = ruelle_matrix(A, beta);
    const auto eig = leading_eigs(mat);
    const double rate = -log_cylinder_mass(mat, eig, cylinder) / beta;
    rep.rows.push_back({beta, rate, std::abs(rate - inf_rate)});
  }
  return rep;
}

}  // namespace ergo
