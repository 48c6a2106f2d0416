#include <doctest.h>

#include <random>

#include "ergo/error.hpp"
#include "ergo/maxplus.hpp"
#include "helpers.hpp"

using namespace ergo;
using testing::pt;
using testing::q;
using testing::table;

namespace {

// V(t) = max over incoming edges of V(s) + A(e) - m, evaluated directly.
bool calibrated(const Potential& A, const Rational& m, const std::vector<Rational>& V) {
  const auto g = testing::graph_of(A);
  for (std::size_t t = 0; t < g.n; ++t) {
    std::optional<Rational> best;
    for (std::size_t e = 0; e < g.w.size(); ++e) {
      if (e % g.n != t) continue;
      Rational v = V[e / g.d] + g.w[e] - m;
      if (!best || v > *best) best = v;
    }
    if (*best != V[t]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("A2 critical structure") {
  const auto an = analyze_maxplus(testing::a2());
  CHECK(an.cs.m == 0);
  CHECK(an.cs.unique_maximizer);
  REQUIRE(an.cs.maximizing_orbits.size() == 1);
  CHECK(an.cs.maximizing_orbits[0].period.str() == "01");
  CHECK(an.cs.critical_nodes() == std::vector<std::size_t>{0, 1});
  CHECK(an.V.values == std::vector<Rational>{0, 0});
  CHECK(an.R.values == std::vector<Rational>{1, 0, 0, 1});
  CHECK(an.J == std::vector<Rational>{0, 0});
  const auto atoms = an.cs.maximizing_orbits[0].atoms();
  CHECK(atoms == std::vector<Point>{pt("(01)"), pt("(10)")});
}

TEST_CASE("degenerate and depth-1 potentials") {
  const auto flat = analyze_maxplus(table(2, 1, {"0", "0"}));
  CHECK(flat.cs.m == 0);
  CHECK_FALSE(flat.cs.unique_maximizer);
  CHECK(flat.cs.critical_edges().size() == 2);
  CHECK(flat.R.values == std::vector<Rational>{0, 0});

  const auto one = analyze_maxplus(table(2, 1, {"0", "-1"}));
  CHECK(one.cs.m == 0);
  CHECK(one.cs.unique_maximizer);
  CHECK(one.cs.maximizing_orbits[0].period.str() == "0");
  CHECK(one.V.values == std::vector<Rational>{0});

  // depth-1 table as a two-node graph: loops 0, -1 and a 2-cycle of mean -1/2
  const auto lifted = analyze_maxplus(table(2, 1, {"0", "-1"}).lifted(1));
  CHECK(lifted.cs.m == 0);
  CHECK(lifted.cs.maximizing_orbits[0].period.str() == "0");
}

TEST_CASE("constant shifts move only m") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto A = testing::random_unique(rng, 2, 3);
    const auto a = analyze_maxplus(A);
    const auto b = analyze_maxplus(A.plus_constant(5));
    CHECK(b.cs.m == a.cs.m + 5);
    CHECK(a.V.values == b.V.values);
    CHECK(a.R.values == b.R.values);
    CHECK(a.J == b.J);
    CHECK(aubry_set(a.graph, a.cs) == aubry_set(b.graph, b.cs));
    const auto sa = mane_potential(a.graph, a.cs), sb = mane_potential(b.graph, b.cs);
    CHECK(sa.values == sb.values);
  }
}

TEST_CASE("cycle mean against brute force") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const int d = 2 + i % 2;
    const int k = d == 2 ? 1 + i % 5 : 1 + i % 3;
    const auto A = random_potential(d, k, rng, q(-1), q(1), 13);
    CAPTURE(save_potential(A));
    const auto g = build_de_bruijn(A);
    const auto m = max_cycle_mean(g);
    CHECK(m == testing::oracle_cycle_mean(A));
    if (g.node_count() <= 16) CHECK(m == testing::oracle_simple_cycle_max(A));
    const auto cs = max_mean_cycle(g);
    CHECK(cs.m == m);
    // every maximizing orbit has mean m and uses critical edges only
    for (const auto& c : cs.maximizing_orbits) {
      Rational sum = 0;
      for (auto e : c.edges) {
        sum += g.weight(e);
        CHECK(cs.critical_edge[e]);
      }
      CHECK(sum == m * Rational(static_cast<long>(c.edges.size())));
    }
    // every critical edge lies on some maximizing simple cycle
    if (g.node_count() <= 16 && !cs.orbits_truncated) {
      const auto all = testing::oracle_simple_cycles(A);
      std::vector<bool> on_max(g.edge_count(), false);
      std::size_t max_count = 0;
      for (const auto& c : all) {
        if (c.mean != m) continue;
        ++max_count;
        for (auto e : c.edges) on_max[e] = true;
      }
      CHECK(on_max == cs.critical_edge);
      CHECK(max_count == cs.maximizing_orbits.size());
    }
  }
}

TEST_CASE("subaction, error function and deviation costs on random samples") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 4;
    const auto A = i % 3 == 0 ? random_potential(2, k, rng, q(-1), q(1), 7)
                              : testing::random_unique(rng, 2, k);
    CAPTURE(save_potential(A));
    const auto an = analyze_maxplus(A);
    const auto& g = an.graph;
    CHECK(calibrated(A, an.cs.m, an.V.values));
    CHECK(calibration_residual(g, an.cs.m, an.V.values) == 0);
    CHECK(an.V.values[an.V.anchor] == 0);
    for (std::size_t t = 0; t < g.node_count(); ++t) {
      bool zero_in = false;
      for (Symbol a = 0; a < 2; ++a) zero_in = zero_in || an.R.values[g.in_edge(t, a)] == 0;
      CHECK(zero_in);
    }
    for (const auto& r : an.R.values) CHECK(r >= 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (an.cs.critical_edge[e]) CHECK(an.R.values[e] == 0);
    }
    // J is the fixed point of the min-plus Bellman equation, zero on critical nodes
    const auto crit = zero_cost_cycle_nodes(g, an.R);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      Rational best = an.R.values[g.edge(u, 0)] + an.J[g.target(g.edge(u, 0))];
      for (Symbol a = 1; a < 2; ++a) {
        best = std::min<Rational>(best, an.R.values[g.edge(u, a)] + an.J[g.target(g.edge(u, a))]);
      }
      if (crit[u]) {
        CHECK(an.J[u] == 0);
      } else {
        CHECK(an.J[u] == best);
      }
      // the witness realizes J, and random points of the cylinder never beat it
      const auto w = deviation_witness(g, an.R, an.J, u);
      CHECK(node_of(g, w) == u);
      const auto dev = deviation_at_point(g, an.R, w);
      CHECK(dev.finite);
      CHECK(dev.value == an.J[u]);
      for (int s = 0; s < 5; ++s) {
        auto p = testing::random_point(rng, 2);
        p = Point(2, [&] {
          const Word node = g.node_word(u);
          std::vector<Symbol> v(node.symbols().begin(), node.symbols().end());
          v.insert(v.end(), p.preperiod().begin(), p.preperiod().end());
          return v;
        }(), p.period());
        const auto dp = deviation_at_point(g, an.R, p);
        if (dp.finite) CHECK(dp.value >= an.J[u]);
      }
    }
  }
}

TEST_CASE("min cost to critical by hand") {
  // node 0 carries a zero loop; from node 1: R(10) = 2, R(11) = 1
  const DeBruijnGraph g(2, 1, std::vector<Rational>(4, Rational(0)));
  ErrorFunction R{{q(0), q(5), q(2), q(1)}};
  CHECK(min_cost_to_critical(g, R) == std::vector<Rational>{0, 2});
  R.values[2] = 0;
  CHECK(min_cost_to_critical(g, R) == std::vector<Rational>{0, 0});
}

TEST_CASE("deviation at points of A2") {
  const auto an = analyze_maxplus(testing::a2());
  CHECK(deviation_at_point(an.graph, an.R, pt("(01)")).value == 0);
  CHECK(deviation_at_point(an.graph, an.R, pt("(01)")).finite);
  CHECK_FALSE(deviation_at_point(an.graph, an.R, pt("(0)")).finite);
  const auto d = deviation_at_point(an.graph, an.R, pt("0(01)"));
  CHECK(d.finite);
  CHECK(d.value == 1);
}

TEST_CASE("Mañé potential, Aubry set and Peierls barrier") {
  const auto an = analyze_maxplus(testing::a2());
  const auto S = mane_potential(an.graph, an.cs);
  CHECK(*S(0, 0) == 0);
  CHECK(*S(0, 1) == 0);
  CHECK(*S(1, 1) == 0);
  CHECK(aubry_set(an.graph, an.cs) == std::vector<std::size_t>{0, 1});
  const auto h = peierls_barrier(an.graph, an.cs);
  CHECK(*h(0, 1) == 0);
  CHECK(*h(0, 0) == 0);

  const auto flat = analyze_maxplus(table(2, 2, {"0", "0", "0", "0"}));
  CHECK(aubry_set(flat.graph, flat.cs).size() == 2);

  // non-critical node 0 with a heavy loop: h(0,0) < S(0,0)
  const auto B = table(2, 2, {"-1/2", "-5", "-5", "0"});
  const auto b = analyze_maxplus(B);
  const auto Sb = mane_potential(b.graph, b.cs);
  const auto hb = peierls_barrier(b.graph, b.cs);
  CHECK(*Sb(0, 0) == q(-1, 2));
  CHECK(*hb(0, 0) == -10);
  CHECK(*hb(0, 0) < *Sb(0, 0));
  CHECK(*testing::oracle_walks(B, b.cs.m, 0, 0, 40, 44) == -10);
  CHECK(aubry_set(b.graph, b.cs) == std::vector<std::size_t>{1});
}

TEST_CASE("Mañé and Peierls tables against walk enumeration") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const int k = 2 + i % 2;
    const auto A = i % 2 ? testing::random_unique(rng, 2, k)
                         : random_potential(2, k, rng, q(-1), q(1), 5);
    const auto an = analyze_maxplus(A);
    const auto& g = an.graph;
    const std::size_t n = g.node_count();
    const auto S = mane_potential(g, an.cs);
    const auto h = peierls_barrier(g, an.cs);
    for (std::size_t u = 0; u < n; ++u) {
      CHECK(*S(u, u) <= 0);
      CHECK((*S(u, u) == 0) == static_cast<bool>(an.cs.critical_node[u]));
      for (std::size_t v = 0; v < n; ++v) {
        // longer walks only add nonpositive cycles
        CHECK(*S(u, v) == *testing::oracle_walks(A, an.cs.m, u, v, 1, 2 * n));
        // long walks must pass a critical node to avoid a strictly negative drift
        std::optional<Rational> via;
        for (std::size_t w = 0; w < n; ++w) {
          if (!an.cs.critical_node[w]) continue;
          Rational s = *testing::oracle_walks(A, an.cs.m, u, w, 1, 2 * n) +
                       *testing::oracle_walks(A, an.cs.m, w, v, 1, 2 * n);
          if (!via || s > *via) via = s;
        }
        CHECK(*h(u, v) == *via);
        CHECK(*h(u, v) <= *S(u, v));
        if (an.cs.critical_node[u]) CHECK(*h(u, v) == *S(u, v));
        for (std::size_t w = 0; w < n; ++w) CHECK(*S(u, v) >= *S(u, w) + *S(w, v));
      }
    }
    CHECK(aubry_set(g, an.cs) == an.cs.critical_nodes());
  }
}

TEST_CASE("coboundaries") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    const int k = 1 + i % 4;
    const auto u = random_potential(2, k, rng);
    // z = u o T - u as a depth-(k+1) table
    std::vector<Rational> z(ipow(2, k + 1));
    for (std::size_t e = 0; e < z.size(); ++e) z[e] = u[e % ipow(2, k)] - u[e / 2];
    CHECK(is_coboundary(Potential(2, k + 1, z)).holds);
  }
  const auto c = is_coboundary(testing::a2());
  CHECK_FALSE(c.holds);
  REQUIRE(c.witness);
  CHECK(c.witness->period.str() == "0");
  CHECK(c.witness_sum == -1);
  CHECK(is_coboundary(table(2, 2, {"0", "0", "0", "0"})).holds);
}

TEST_CASE("error function refuses an uncalibrated subaction") {
  const auto an = analyze_maxplus(testing::a2());
  Subaction bad{{q(0), q(3)}, 0};
  CHECK_THROWS_AS(error_function(an.graph, an.cs, bad), Error);
}
