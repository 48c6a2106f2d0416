#include "ergo/maxplus.hpp"

#include <algorithm>
#include <functional>

#include "ergo/error.hpp"

namespace ergo {

std::vector<std::size_t> CycleOrbit::nodes(const DeBruijnGraph& g) const {
  std::vector<std::size_t> out;
  out.reserve(edges.size());
  for (auto e : edges) out.push_back(g.source(e));
  return out;
}

std::vector<Point> CycleOrbit::atoms() const {
  std::vector<Point> out;
  Point p = Point::periodic(period);
  for (std::size_t i = 0; i < period.size(); ++i) {
    out.push_back(p);
    p = apply_shift(p);
  }
  return out;
}

std::vector<std::size_t> CriticalStructure::critical_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < critical_node.size(); ++i) {
    if (critical_node[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> CriticalStructure::critical_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < critical_edge.size(); ++i) {
    if (critical_edge[i]) out.push_back(i);
  }
  return out;
}

Rational max_cycle_mean(const DeBruijnGraph& g) {
  const std::size_t n = g.node_count();
  // D_j(v): heaviest walk of exactly j edges ending at v, any start.
  auto step = [&](const std::vector<Rational>& prev) {
    std::vector<Rational> next(n);
    std::vector<bool> set(n, false);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto t = g.target(e);
      Rational cand = prev[g.source(e)] + g.weight(e);
      if (!set[t] || cand > next[t]) {
        next[t] = std::move(cand);
        set[t] = true;
      }
    }
    return next;
  };
  std::vector<Rational> d(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) d = step(d);
  const std::vector<Rational> dn = std::move(d);
  // Second pass recomputes D_j to keep memory linear.
  std::vector<std::optional<Rational>> inner(n);
  std::vector<Rational> dj(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < n; ++v) {
      Rational q = (dn[v] - dj[v]) / static_cast<long>(n - j);
      if (!inner[v] || q < *inner[v]) inner[v] = std::move(q);
    }
    dj = step(dj);
  }
  Rational best = *inner[0];
  for (std::size_t v = 1; v < n; ++v) best = std::max(best, *inner[v]);
  return best;
}

namespace {

// Tarjan's strongly connected components over the edges kept by `keep`.
std::vector<int> components(const DeBruijnGraph& g, const std::vector<bool>& keep,
                            int& count) {
  const std::size_t n = g.node_count();
  const int d = g.alphabet_size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  count = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int a = 0; a < d; ++a) {
      const auto e = g.edge(v, static_cast<Symbol>(a));
      if (!keep[e]) continue;
      const auto w = g.target(e);
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return comp;
}

// Edges of `keep` lying on a cycle of `keep` edges.
std::vector<bool> cyclic_edges(const DeBruijnGraph& g, const std::vector<bool>& keep) {
  int count = 0;
  const auto comp = components(g, keep, count);
  std::vector<std::size_t> size(count, 0);
  for (auto c : comp) ++size[c];
  std::vector<bool> out(g.edge_count(), false);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!keep[e]) continue;
    const auto s = g.source(e), t = g.target(e);
    if (comp[s] == comp[t] && (size[comp[s]] > 1 || s == t)) out[e] = true;
  }
  return out;
}

CycleOrbit make_orbit(const DeBruijnGraph& g, std::vector<std::size_t> edges) {
  const std::size_t p = edges.size();
  std::vector<Symbol> word(p);
  for (std::size_t i = 0; i < p; ++i) word[i] = g.first_symbol(edges[i]);
  std::size_t best = 0;
  for (std::size_t r = 1; r < p; ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      const auto a = word[(r + i) % p], b = word[(best + i) % p];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::rotate(edges.begin(), edges.begin() + best, edges.end());
  std::rotate(word.begin(), word.begin() + best, word.end());
  return CycleOrbit{std::move(edges), Word(g.alphabet_size(), std::move(word))};
}

// Simple cycles through edges marked in `keep`, each reported once from its
// smallest node.
std::vector<CycleOrbit> simple_cycles(const DeBruijnGraph& g, const std::vector<bool>& keep,
                                      std::size_t cap, bool& truncated) {
  const std::size_t n = g.node_count();
  const int d = g.alphabet_size();
  std::vector<CycleOrbit> out;
  truncated = false;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> path;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (int a = 0; a < d && !truncated; ++a) {
      const auto e = g.edge(v, static_cast<Symbol>(a));
      if (!keep[e]) continue;
      const auto w = g.target(e);
      if (w == start) {
        path.push_back(e);
        if (out.size() >= cap) {
          truncated = true;
        } else {
          out.push_back(make_orbit(g, path));
        }
        path.pop_back();
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        path.push_back(e);
        dfs(start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n && !truncated; ++s) {
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  std::sort(out.begin(), out.end(),
            [](const CycleOrbit& a, const CycleOrbit& b) { return a.period < b.period; });
  return out;
}

// Longest paths from `seeds` (value 0) under weights w - m; nullopt is -inf.
std::vector<std::optional<Rational>> longest_from(const DeBruijnGraph& g, const Rational& m,
                                                  const std::vector<bool>& seeds) {
  const std::size_t n = g.node_count();
  std::vector<std::optional<Rational>> dist(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (seeds[v]) dist[v] = Rational(0);
  }
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ds = dist[g.source(e)];
      if (!ds) continue;
      Rational cand = *ds + g.weight(e) - m;
      auto& dt = dist[g.target(e)];
      if (!dt || cand > *dt) {
        dt = std::move(cand);
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  throw Error(ErrorKind::kInvariant, "positive normalized cycle: cycle mean is not maximal");
}

}  // namespace

CriticalStructure max_mean_cycle(const DeBruijnGraph& g, std::size_t orbit_cap) {
  CriticalStructure cs;
  cs.m = max_cycle_mean(g);
  const std::size_t n = g.node_count();
  // Potential p(v) = heaviest normalized path ending at v; every edge then has
  // reduced weight <= 0 and zero-mean cycles consist of tight edges.
  const auto p = longest_from(g, cs.m, std::vector<bool>(n, true));
  std::vector<bool> tight(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    tight[e] = *p[g.source(e)] + g.weight(e) - cs.m == *p[g.target(e)];
  }
  cs.critical_edge = cyclic_edges(g, tight);
  cs.critical_node.assign(n, false);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (cs.critical_edge[e]) cs.critical_node[g.source(e)] = true;
  }
  int count = 0;
  const auto comp = components(g, cs.critical_edge, count);
  std::vector<std::vector<std::size_t>> by_comp(count);
  for (std::size_t v = 0; v < n; ++v) {
    if (cs.critical_node[v]) by_comp[comp[v]].push_back(v);
  }
  for (auto& c : by_comp) {
    if (!c.empty()) cs.classes.push_back(std::move(c));
  }
  std::sort(cs.classes.begin(), cs.classes.end());
  bool single_cycle = cs.classes.size() == 1;
  if (single_cycle) {
    for (auto v : cs.classes.front()) {
      int out_deg = 0;
      for (int a = 0; a < g.alphabet_size(); ++a) {
        out_deg += cs.critical_edge[g.edge(v, static_cast<Symbol>(a))] ? 1 : 0;
      }
      if (out_deg != 1) single_cycle = false;
    }
  }
  cs.unique_maximizer = single_cycle;
  cs.maximizing_orbits = simple_cycles(g, cs.critical_edge, orbit_cap, cs.orbits_truncated);
  return cs;
}

Subaction calibrated_subaction(const DeBruijnGraph& g, const CriticalStructure& cs) {
  const auto dist = longest_from(g, cs.m, cs.critical_node);
  Subaction V;
  V.anchor = 0;
  V.values.resize(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!dist[v]) throw Error(ErrorKind::kInvariant, "node unreachable from critical set");
    V.values[v] = *dist[v];
  }
  const Rational shift = V.values[V.anchor];
  for (auto& x : V.values) x -= shift;
  return V;
}

Rational calibration_residual(const DeBruijnGraph& g, const Rational& m,
                              const std::vector<Rational>& V) {
  std::vector<std::optional<Rational>> best(g.node_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Rational cand = V[g.source(e)] + g.weight(e) - m;
    auto& b = best[g.target(e)];
    if (!b || cand > *b) b = std::move(cand);
  }
  Rational worst = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    worst = std::max<Rational>(worst, abs(V[v] - *best[v]));
  }
  return worst;
}

ErrorFunction error_function(const DeBruijnGraph& g, const CriticalStructure& cs,
                             const Subaction& V) {
  ErrorFunction R;
  R.values.resize(g.edge_count());
  std::vector<bool> has_zero(g.node_count(), false);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto s = g.source(e), t = g.target(e);
    R.values[e] = V.values[t] - V.values[s] - g.weight(e) + cs.m;
    if (R.values[e] < 0) {
      throw Error(ErrorKind::kInvariant,
                  "negative error function on edge " + g.edge_word(e).str());
    }
    if (R.values[e] == 0) has_zero[t] = true;
  }
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!has_zero[v]) {
      throw Error(ErrorKind::kInvariant,
                  "subaction not calibrated at node " + g.node_word(v).str());
    }
  }
  return R;
}

ActionTable mane_potential(const DeBruijnGraph& g, const CriticalStructure& cs) {
  const std::size_t n = g.node_count();
  ActionTable S{n, std::vector<std::optional<Rational>>(n * n)};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Rational w = g.weight(e) - cs.m;
    auto& cell = S.values[g.source(e) * n + g.target(e)];
    if (!cell || w > *cell) cell = std::move(w);
  }
  // Floyd-Warshall in (max, +); all cycles are nonpositive after normalization.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ik = S.values[i * n + k];
      if (!ik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& kj = S.values[k * n + j];
        if (!kj) continue;
        Rational cand = *ik + *kj;
        auto& ij = S.values[i * n + j];
        if (!ij || cand > *ij) ij = std::move(cand);
      }
    }
  }
  return S;
}

std::vector<std::size_t> aubry_set(const DeBruijnGraph& g, const CriticalStructure& cs) {
  const auto S = mane_potential(g, cs);
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    if (S(u, u) && *S(u, u) == 0) out.push_back(u);
  }
  return out;
}

ActionTable peierls_barrier(const DeBruijnGraph& g, const CriticalStructure& cs) {
  const std::size_t n = g.node_count();
  const auto S = mane_potential(g, cs);
  // Legs may have zero length when they start and end at the same node.
  auto leg = [&](std::size_t a, std::size_t b) -> std::optional<Rational> {
    if (a == b) return Rational(0);
    return S(a, b);
  };
  ActionTable h{n, std::vector<std::optional<Rational>>(n * n)};
  const auto crit = cs.critical_nodes();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      auto& cell = h.values[u * n + v];
      for (auto c : crit) {
        const auto a = leg(u, c), b = leg(c, v);
        if (!a || !b) continue;
        Rational cand = *a + *b;
        if (!cell || cand > *cell) cell = std::move(cand);
      }
    }
  }
  return h;
}

std::vector<bool> zero_cost_cycle_nodes(const DeBruijnGraph& g, const ErrorFunction& R) {
  std::vector<bool> zero(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) zero[e] = R.values[e] == 0;
  const auto cyc = cyclic_edges(g, zero);
  std::vector<bool> nodes(g.node_count(), false);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (cyc[e]) nodes[g.source(e)] = true;
  }
  return nodes;
}

std::vector<Rational> min_cost_to_critical(const DeBruijnGraph& g, const ErrorFunction& R) {
  const std::size_t n = g.node_count();
  const auto crit = zero_cost_cycle_nodes(g, R);
  std::vector<std::optional<Rational>> J(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (crit[v]) J[v] = Rational(0);
  }
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& jt = J[g.target(e)];
      if (!jt) continue;
      Rational cand = R.values[e] + *jt;
      auto& js = J[g.source(e)];
      if (!js || cand < *js) {
        js = std::move(cand);
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<Rational> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!J[v]) throw Error(ErrorKind::kInvariant, "node cannot reach a zero-cost cycle");
    out[v] = *J[v];
  }
  return out;
}

Point deviation_witness(const DeBruijnGraph& g, const ErrorFunction& R,
                        const std::vector<Rational>& J, std::size_t node) {
  const auto crit = zero_cost_cycle_nodes(g, R);
  std::vector<bool> zero(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) zero[e] = R.values[e] == 0;
  const auto cyc = cyclic_edges(g, zero);
  std::vector<std::size_t> walk;
  std::vector<long> first_visit(g.node_count(), -1);
  std::size_t v = node;
  while (first_visit[v] < 0) {
    first_visit[v] = static_cast<long>(walk.size());
    std::optional<std::size_t> chosen;
    for (int a = 0; a < g.alphabet_size() && !chosen; ++a) {
      const auto e = g.edge(v, static_cast<Symbol>(a));
      if (crit[v] ? bool(cyc[e]) : R.values[e] + J[g.target(e)] == J[v]) chosen = e;
    }
    if (!chosen) throw Error(ErrorKind::kInvariant, "no optimal continuation");
    walk.push_back(*chosen);
    v = g.target(*chosen);
  }
  const auto split = static_cast<std::size_t>(first_visit[v]);
  return point_from_walk(g, std::span(walk).first(split), std::span(walk).subspan(split));
}

Deviation deviation_at_point(const DeBruijnGraph& g, const ErrorFunction& R, const Point& p) {
  if (p.alphabet_size() != g.alphabet_size()) {
    throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
  }
  const std::size_t pre = p.preperiod().size(), per = p.period().size();
  for (std::size_t i = pre; i < pre + per; ++i) {
    if (R.values[edge_at(g, p, i)] != 0) return {false, Rational(0)};
  }
  Deviation out{true, Rational(0)};
  for (std::size_t i = 0; i < pre; ++i) out.value += R.values[edge_at(g, p, i)];
  return out;
}

CoboundaryCheck is_coboundary(const Potential& z) {
  const auto g = build_de_bruijn(z);
  std::vector<Rational> neg(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) neg[e] = -g.weight(e);
  const DeBruijnGraph gneg(g.alphabet_size(), g.node_depth(), std::move(neg));
  const Rational hi = max_cycle_mean(g);
  const Rational lo = -max_cycle_mean(gneg);
  CoboundaryCheck out;
  out.holds = hi == 0 && lo == 0;
  if (out.holds) return out;
  const auto& witness_graph = lo != 0 ? gneg : g;
  auto cs = max_mean_cycle(witness_graph, 1);
  out.witness = cs.maximizing_orbits.front();
  for (auto e : out.witness->edges) out.witness_sum += g.weight(e);
  return out;
}

MaxPlusAnalysis analyze_maxplus(const Potential& A) {
  auto g = build_de_bruijn(A);
  auto cs = max_mean_cycle(g);
  auto V = calibrated_subaction(g, cs);
  auto R = error_function(g, cs, V);
  auto J = min_cost_to_critical(g, R);
  return MaxPlusAnalysis{std::move(g), std::move(cs), std::move(V), std::move(R), std::move(J)};
}

}  // namespace ergo
