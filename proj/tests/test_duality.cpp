#include <doctest.h>

#include <random>

#include "ergo/duality.hpp"
#include "ergo/error.hpp"
#include "helpers.hpp"

using namespace ergo;
using testing::pt;
using testing::q;
using testing::table;

TEST_CASE("A2 kernel, dual potential and b table") {
  const auto sys = build_duality_report(testing::a2());
  CHECK(sys.W.table() == std::vector<Rational>{0, 1, 0, -1});
  CHECK(sys.Astar.values() == std::vector<Rational>{-1, -1, 1, -1});
  CHECK(sys.dual.cs.m == 0);
  CHECK(sys.dual.V.values == std::vector<Rational>{0, -1});
  CHECK(sys.dual.R.values == std::vector<Rational>{1, 0, 0, 1});
  CHECK(sys.gamma == 1);
  CHECK(sys.b == std::vector<Rational>{1, 0, 0, 1});
  CHECK(sys.optimal_w(0) == std::vector<std::size_t>{1});
  CHECK(sys.optimal_w(1) == std::vector<std::size_t>{0});
  CHECK(kernel_identity_defect(sys.A, sys.Astar, sys.W) == 0);
  CHECK_FALSE(fundamental_relation_check(sys));
  CHECK_FALSE(backward_invariance_check(sys));

  auto bad = sys.W;
  bad.at(0, 0) += 1;
  const auto v = fundamental_relation_check(sys, bad);
  REQUIRE(v);
  CHECK(v->lhs != v->rhs);
}

TEST_CASE("depth one has a vanishing kernel") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto A = testing::random_unique(rng, 2 + i % 3, 1);
    const auto W = involution_kernel(A, default_base_point(A.alphabet_size()));
    for (const auto& w : W.table()) CHECK(w == 0);
    CHECK(dual_potential(A, W) == A);
  }
}

TEST_CASE("kernel series and table agree") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    const int d = 2 + i % 2, k = 1 + i % 4;
    const auto A = random_potential(d, k, rng);
    const auto base = testing::random_point(rng, d);
    const auto W = involution_kernel(A, base);
    for (int s = 0; s < 10; ++s) {
      const auto w = testing::random_point(rng, d), x = testing::random_point(rng, d);
      const std::size_t wn = k > 1 ? w.prefix_word(k - 1).index() : 0;
      const std::size_t xn = k > 1 ? x.prefix_word(k - 1).index() : 0;
      const Rational full = kernel_series(A, w, x, base, 2 * k + 3);
      CHECK(full == W(wn, xn));
      // terms beyond k-1 contribute nothing
      CHECK(kernel_series(A, w, x, base, k) == full);
    }
  }
}

TEST_CASE("changing the base point adds a function of w only") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const int k = 2 + i % 3;
    const auto A = random_potential(2, k, rng);
    const auto W1 = involution_kernel(A, pt("(0)"));
    const auto W2 = involution_kernel(A, testing::random_point(rng, 2));
    for (std::size_t w = 0; w < W1.node_count(); ++w) {
      const Rational c = W1(w, 0) - W2(w, 0);
      for (std::size_t x = 1; x < W1.node_count(); ++x) CHECK(W1(w, x) - W2(w, x) == c);
    }
  }
}

TEST_CASE("duality identities on random potentials") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 120; ++i) {
    const int d = i % 4 == 3 ? 3 : 2;
    const int k = 1 + i % 4;
    const auto A = testing::random_unique(rng, d, k);
    CAPTURE(save_potential(A));
    const auto base = i % 2 ? testing::random_point(rng, d) : default_base_point(d);
    const auto sys = build_duality_report(A, base);
    CHECK(kernel_identity_defect(sys.A, sys.Astar, sys.W) == 0);
    CHECK(sys.dual.cs.m == sys.primal.cs.m);
    CHECK_FALSE(fundamental_relation_check(sys));
    CHECK_FALSE(backward_invariance_check(sys));
    // b >= 0 and every row attains 0
    for (std::size_t x = 0; x < sys.n; ++x) {
      bool zero = false;
      for (std::size_t w = 0; w < sys.n; ++w) {
        CHECK(sys.b_at(x, w) >= 0);
        zero = zero || sys.b_at(x, w) == 0;
      }
      CHECK(zero);
      CHECK_FALSE(sys.optimal_w(x).empty());
    }
    // direct recomputation of the kernel identity at points
    for (int s = 0; s < 5; ++s) {
      const auto w = testing::random_point(rng, d), x = testing::random_point(rng, d);
      const Symbol w0 = w.at(0);
      const Rational lhs = sys.Astar.at(w) + kernel_series(A, w, x, base, 2 * k);
      const Rational rhs = A.at(prepend(w0, x)) +
                           kernel_series(A, apply_shift(w), prepend(w0, x), base, 2 * k);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("dual of the dual is cohomologous to A") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto A = random_potential(2, 3, rng);
    const auto r = dual_roundtrip_check(A, testing::random_point(rng, 2),
                                        testing::random_point(rng, 2));
    CHECK(r.holds);
    CHECK(r.coboundary.holds);
  }
  const auto one = dual_roundtrip_check(table(2, 1, {"1/3", "-2"}));
  CHECK(one.holds);
  for (const auto& v : one.difference.values()) CHECK(v == 0);
  CHECK(dual_roundtrip_check(testing::a2()).holds);
}

TEST_CASE("goodness") {
  const auto g = goodness_check(testing::a2());
  CHECK(g.good);
  REQUIRE(g.margin);
  CHECK(*g.margin == 1);
  CHECK_FALSE(g.witness);

  // a zero-cost edge into the cycle from outside breaks goodness
  const auto an = analyze_maxplus(testing::a2());
  ErrorFunction flat{std::vector<Rational>(4, Rational(0))};
  const auto bad = goodness_against_cycle(an.graph, flat, an.cs.maximizing_orbits[0]);
  CHECK_FALSE(bad.good);
  REQUIRE(bad.witness);
  CHECK(flat.values[*bad.witness] == 0);
}

TEST_CASE("non-unique maximizer is refused") {
  try {
    build_duality_report(table(2, 2, {"0", "0", "0", "0"}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotUnique);
  }
}
