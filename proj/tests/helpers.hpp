#pragma once

// Shared fixtures and brute-force oracles. The oracles work from the word
// encoding directly and share no code with the library algorithms they check.

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "ergo/genericity.hpp"
#include "ergo/potential.hpp"
#include "ergo/rational.hpp"
#include "ergo/symbolic.hpp"

namespace testing {

using ergo::Point;
using ergo::Potential;
using ergo::Rational;
using ergo::Word;

inline Potential table(int d, int k, std::initializer_list<const char*> values) {
  std::vector<Rational> v;
  for (const char* s : values) v.push_back(ergo::parse_rational(s));
  return Potential(d, k, std::move(v));
}

inline Potential a2() { return table(2, 2, {"-1", "0", "0", "-1"}); }

inline Point pt(const char* s, int d = 2) { return Point::parse(s, d); }
inline Word wd(const char* s, int d = 2) { return Word::parse(s, d); }

inline Rational q(long p, long r = 1) {
  Rational v(p, r);
  v.canonicalize();
  return v;
}

inline Point random_point(std::mt19937_64& rng, int d, int max_pre = 3, int max_period = 4) {
  std::uniform_int_distribution<int> sym(0, d - 1), pre(0, max_pre), per(1, max_period);
  std::vector<ergo::Symbol> a(pre(rng)), b(per(rng));
  for (auto& s : a) s = static_cast<ergo::Symbol>(sym(rng));
  for (auto& s : b) s = static_cast<ergo::Symbol>(sym(rng));
  return Point(d, a, b);
}

// Random potential perturbed so its maximizing cycle is unique.
inline Potential random_unique(std::mt19937_64& rng, int d, int k, int max_denominator = 97) {
  return ergo::perturb_to_unique(
      ergo::random_potential(d, k, rng, Rational(-1), Rational(1), max_denominator),
      Rational(1, 10));
}

// ---- oracles on the node graph: node s, symbol a -> edge s*d + a, target (s*d + a) % n

struct Graph {
  int d;
  std::size_t n;
  std::vector<Rational> w;  // edge weights
};

inline Graph graph_of(const Potential& A) {
  const std::size_t n = A.size() / A.alphabet_size();
  return Graph{A.alphabet_size(), n, A.values()};
}

// Max-plus matrix; nullopt is -inf.
using MaxPlusMatrix = std::vector<std::vector<std::optional<Rational>>>;

inline MaxPlusMatrix edge_matrix(const Graph& g, const Rational& shift) {
  MaxPlusMatrix m(g.n, std::vector<std::optional<Rational>>(g.n));
  for (std::size_t e = 0; e < g.w.size(); ++e) {
    const std::size_t s = e / g.d, t = e % g.n;
    Rational v = g.w[e] - shift;
    if (!m[s][t] || v > *m[s][t]) m[s][t] = v;
  }
  return m;
}

inline MaxPlusMatrix mp_mul(const MaxPlusMatrix& a, const MaxPlusMatrix& b) {
  const std::size_t n = a.size();
  MaxPlusMatrix c(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j]) continue;
        Rational v = *a[i][k] + *b[k][j];
        if (!c[i][j] || v > *c[i][j]) c[i][j] = v;
      }
    }
  return c;
}

// max over closed walks of length <= n of their mean.
inline Rational oracle_cycle_mean(const Potential& A) {
  const auto g = graph_of(A);
  const auto m1 = edge_matrix(g, 0);
  auto p = m1;
  std::optional<Rational> best;
  for (std::size_t len = 1; len <= g.n; ++len) {
    for (std::size_t u = 0; u < g.n; ++u) {
      if (!p[u][u]) continue;
      Rational mean = *p[u][u] / Rational(static_cast<long>(len));
      if (!best || mean > *best) best = mean;
    }
    p = mp_mul(p, m1);
  }
  return *best;
}

struct SimpleCycle {
  std::vector<std::size_t> edges;
  Rational mean;
};

// Every simple cycle, each listed once from its smallest node.
inline std::vector<SimpleCycle> oracle_simple_cycles(const Potential& A) {
  const auto g = graph_of(A);
  std::vector<SimpleCycle> out;
  std::vector<bool> used(g.n, false);
  std::vector<std::size_t> path;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (int a = 0; a < g.d; ++a) {
      const std::size_t e = v * g.d + a, t = e % g.n;
      if (t == start) {
        path.push_back(e);
        Rational sum = 0;
        for (auto x : path) sum += g.w[x];
        out.push_back({path, sum / Rational(static_cast<long>(path.size()))});
        path.pop_back();
      } else if (t > start && !used[t]) {
        used[t] = true;
        path.push_back(e);
        dfs(start, t);
        path.pop_back();
        used[t] = false;
      }
    }
  };
  for (std::size_t s = 0; s < g.n; ++s) {
    used[s] = true;
    dfs(s, s);
    used[s] = false;
  }
  return out;
}

inline Rational oracle_simple_cycle_max(const Potential& A) {
  const auto cycles = oracle_simple_cycles(A);
  Rational best = cycles.front().mean;
  for (const auto& c : cycles) best = std::max(best, c.mean);
  return best;
}

// max normalized weight over walks u -> v with length in [lo, hi].
inline std::optional<Rational> oracle_walks(const Potential& A, const Rational& m, std::size_t u,
                                            std::size_t v, std::size_t lo, std::size_t hi) {
  const auto g = graph_of(A);
  const auto m1 = edge_matrix(g, m);
  auto p = m1;
  std::optional<Rational> best;
  for (std::size_t len = 1; len <= hi; ++len) {
    if (len >= lo && p[u][v] && (!best || *p[u][v] > *best)) best = p[u][v];
    p = mp_mul(p, m1);
  }
  return best;
}

}  // namespace testing
