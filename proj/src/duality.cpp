#include "ergo/duality.hpp"

#include <algorithm>

#include "ergo/error.hpp"

namespace ergo {

KernelTable::KernelTable(int alphabet_size, int prefix_length, Point base_point,
                         std::vector<Rational> table)
    : d_(alphabet_size),
      len_(prefix_length),
      n_(ipow(alphabet_size, prefix_length)),
      base_(std::move(base_point)),
      table_(std::move(table)) {
  if (table_.size() != n_ * n_) {
    throw Error(ErrorKind::kInvalidInput, "kernel table has wrong size");
  }
}

namespace {

// Node of w_0 x_0 .. x_{L-2}: prepend a symbol and drop the last one.
std::size_t tau_node(std::size_t x_node, Symbol a, std::size_t n, int d) {
  if (n == 1) return 0;
  return a * (n / d) + x_node / d;
}

}  // namespace

KernelTable involution_kernel(const Potential& A, const Point& base_point) {
  const int d = A.alphabet_size();
  const int L = A.depth() - 1;
  if (base_point.alphabet_size() != d) throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
  const std::size_t n = ipow(d, L);
  const auto base = base_point.prefix(L);
  std::vector<Rational> table(n * n);
  std::vector<Symbol> arg(A.depth()), ref(A.depth());
  for (std::size_t wi = 0; wi < n; ++wi) {
    const Word w = Word::from_index(wi, L, d);
    for (std::size_t xi = 0; xi < n; ++xi) {
      const Word x = Word::from_index(xi, L, d);
      Rational sum = 0;
      for (int t = 0; t < L; ++t) {
        // w_t .. w_0 followed by the first L - t symbols of x (resp. xbar).
        for (int i = 0; i <= t; ++i) arg[i] = ref[i] = w[t - i];
        for (int i = 0; i < L - t; ++i) {
          arg[t + 1 + i] = x[i];
          ref[t + 1 + i] = base[i];
        }
        sum += A[word_index(arg, d)] - A[word_index(ref, d)];
      }
      table[wi * n + xi] = std::move(sum);
    }
  }
  return KernelTable(d, L, base_point, std::move(table));
}

Rational kernel_series(const Potential& A, const Point& w, const Point& x, const Point& base,
                       std::size_t terms) {
  const int d = A.alphabet_size();
  const std::size_t k = A.depth();
  std::vector<Symbol> arg(k), ref(k);
  Rational sum = 0;
  for (std::size_t t = 0; t < terms; ++t) {
    for (std::size_t i = 0; i < k; ++i) {
      if (i <= t) {
        arg[i] = ref[i] = w.at(t - i);
      } else {
        arg[i] = x.at(i - t - 1);
        ref[i] = base.at(i - t - 1);
      }
    }
    sum += A[word_index(arg, d)] - A[word_index(ref, d)];
  }
  return sum;
}

Rational kernel_identity_defect(const Potential& A, const Potential& Astar,
                                const KernelTable& W) {
  const int d = A.alphabet_size();
  const std::size_t n = W.node_count();
  Rational worst = 0;
  for (std::size_t e = 0; e < n * d; ++e) {
    const auto w0 = static_cast<Symbol>(e / n);
    for (std::size_t x = 0; x < n; ++x) {
      const Rational rhs = A[w0 * n + x] + W(e % n, tau_node(x, w0, n, d)) - W(e / d, x);
      worst = std::max<Rational>(worst, abs(Astar[e] - rhs));
    }
  }
  return worst;
}

Potential dual_potential(const Potential& A, const KernelTable& W) {
  const int d = A.alphabet_size();
  if (W.alphabet_size() != d || W.prefix_length() != A.depth() - 1) {
    throw Error(ErrorKind::kInvalidInput, "kernel does not match the potential");
  }
  const std::size_t n = W.node_count();
  const std::size_t base = word_index(W.base_point().prefix(W.prefix_length()), d);
  std::vector<Rational> v(n * d);
  for (std::size_t e = 0; e < v.size(); ++e) {
    const auto w0 = static_cast<Symbol>(e / n);
    v[e] = A[w0 * n + base] + W(e % n, tau_node(base, w0, n, d)) - W(e / d, base);
  }
  Potential Astar(d, A.depth(), std::move(v));
  if (auto defect = kernel_identity_defect(A, Astar, W); defect != 0) {
    throw Error(ErrorKind::kInvariant,
                "kernel identity fails away from the base point, defect " + to_string(defect));
  }
  return Astar;
}

std::vector<std::size_t> DualSystem::optimal_w(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < n; ++w) {
    if (b_at(x, w) == 0) out.push_back(w);
  }
  return out;
}

DualSystem build_duality_report(const Potential& A, const Point& base_point) {
  auto primal = analyze_maxplus(A);
  if (!primal.cs.unique_maximizer) {
    throw Error(ErrorKind::kNotUnique, "maximizing measure not unique");
  }
  auto W = involution_kernel(A, base_point);
  auto Astar = dual_potential(A, W);
  auto dual = analyze_maxplus(Astar);
  if (dual.cs.m != primal.cs.m) {
    throw Error(ErrorKind::kInvariant, "m(A) = " + to_string(primal.cs.m) +
                                           " differs from m(A*) = " + to_string(dual.cs.m));
  }
  if (!dual.cs.unique_maximizer) {
    throw Error(ErrorKind::kNotUnique, "maximizing measure of the dual not unique");
  }
  const std::size_t n = W.node_count();
  const auto& V = primal.V.values;
  const auto& Vs = dual.V.values;
  const auto& Js = dual.J;
  std::vector<Rational> D(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t p = 0; p < n; ++p) {
      Rational cand = W(p, x) - Vs[p] - Js[p];
      if (p == 0 || cand > D[x]) D[x] = std::move(cand);
    }
  }
  const Rational gamma = D[0] - V[0];
  for (std::size_t x = 1; x < n; ++x) {
    if (D[x] - V[x] != gamma) {
      throw Error(ErrorKind::kInvariant,
                  "duality defect not constant: " + to_string(D[x] - V[x]) + " at x-node " +
                      std::to_string(x) + " vs " + to_string(gamma));
    }
  }
  std::vector<Rational> b(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t p = 0; p < n; ++p) b[x * n + p] = V[x] + Vs[p] + Js[p] - W(p, x) + gamma;
  }
  return DualSystem{A,     std::move(Astar), std::move(W), std::move(primal), std::move(dual),
                    gamma, std::move(b),     n};
}

std::optional<RelationViolation> fundamental_relation_check(const DualSystem& sys) {
  return fundamental_relation_check(sys, sys.W);
}

std::optional<RelationViolation> fundamental_relation_check(const DualSystem& sys,
                                                            const KernelTable& W) {
  const int d = sys.A.alphabet_size();
  const std::size_t n = sys.n;
  const auto& V = sys.primal.V.values;
  const auto& Vs = sys.dual.V.values;
  const auto& R = sys.primal.R.values;
  const auto& Rs = sys.dual.R.values;
  const auto& Js = sys.dual.J;
  auto b = [&](std::size_t x, std::size_t p) -> Rational {
    return V[x] + Vs[p] + Js[p] - W(p, x) + sys.gamma;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t e = 0; e < n * d; ++e) {
      const auto w0 = static_cast<Symbol>(e / n);
      const std::size_t p = e / d, q = e % n;
      const std::size_t tx = tau_node(x, w0, n, d);
      const Rational& lhs = R[w0 * n + x];
      const Rational fr = (Vs[p] + V[x] - W(p, x)) - (Vs[q] + V[tx] - W(q, tx)) + Rs[e];
      if (lhs != fr) return RelationViolation{"FR", x, e, lhs, fr};
      const Rational b_point = V[x] + Vs[p] + Rs[e] + Js[q] - W(p, x) + sys.gamma;
      const Rational fr1 = b_point - b(tx, q);
      if (fr1 != lhs) return RelationViolation{"FR1", x, e, fr1, lhs};
    }
  }
  return std::nullopt;
}

std::optional<BackwardViolation> backward_invariance_check(const DualSystem& sys) {
  const auto& g = sys.dual.graph;
  const int d = g.alphabet_size();
  const std::size_t n = sys.n;
  const auto& Rs = sys.dual.R.values;
  const auto& Js = sys.dual.J;
  for (std::size_t x = 0; x < n; ++x) {
    for (auto p : sys.optimal_w(x)) {
      for (int a = 0; a < d; ++a) {
        const auto e = g.edge(p, static_cast<Symbol>(a));
        const auto q = g.target(e);
        if (Rs[e] + Js[q] != Js[p]) continue;
        const auto tx = tau_node(x, g.first_symbol(e), n, d);
        if (sys.b_at(tx, q) != 0) return BackwardViolation{x, p, q};
      }
    }
  }
  return std::nullopt;
}

GoodnessReport goodness_against_cycle(const DeBruijnGraph& g, const ErrorFunction& R,
                                      const CycleOrbit& cycle) {
  std::vector<bool> on_cycle(g.node_count(), false), cycle_edge(g.edge_count(), false);
  for (auto e : cycle.edges) {
    on_cycle[g.source(e)] = true;
    cycle_edge[e] = true;
  }
  GoodnessReport rep;
  rep.good = true;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!on_cycle[g.target(e)] || cycle_edge[e]) continue;
    rep.p_edges.push_back(e);
    if (!rep.margin || R.values[e] < *rep.margin) rep.margin = R.values[e];
    if (R.values[e] == 0 && !rep.witness) {
      rep.good = false;
      rep.witness = e;
    }
  }
  return rep;
}

GoodnessReport goodness_check(const DualSystem& sys) {
  return goodness_against_cycle(sys.dual.graph, sys.dual.R,
                                sys.dual.cs.maximizing_orbits.front());
}

GoodnessReport goodness_check(const Potential& A) {
  return goodness_check(build_duality_report(A));
}

RoundtripReport dual_roundtrip_check(const Potential& A, const Point& x_base,
                                     const Point& w_base) {
  const auto Astar = dual_potential(A, involution_kernel(A, x_base));
  const auto back = dual_potential(Astar, involution_kernel(Astar, w_base));
  auto diff = back - A;
  auto cob = is_coboundary(diff);
  const bool holds = cob.holds;
  return RoundtripReport{holds, std::move(diff), std::move(cob)};
}

}  // namespace ergo
