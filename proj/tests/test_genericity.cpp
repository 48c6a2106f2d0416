#include <doctest.h>

#include <algorithm>
#include <random>

#include "ergo/error.hpp"
#include "ergo/genericity.hpp"
#include "ergo/maxplus.hpp"
#include "helpers.hpp"

using namespace ergo;
using testing::q;
using testing::table;

TEST_CASE("perturbation isolates the least maximizing cycle") {
  const auto flat = perturb_to_unique(table(2, 2, {"0", "0", "0", "0"}), q(1, 10));
  CHECK(flat.values() == std::vector<Rational>{0, q(-1, 10), q(-1, 10), q(-1, 10)});
  const auto an = analyze_maxplus(flat);
  CHECK(an.cs.unique_maximizer);
  CHECK(an.cs.maximizing_orbits[0].period.str() == "0");

  const auto a2 = perturb_to_unique(testing::a2(), q(1, 10));
  CHECK(a2.values() == std::vector<Rational>{q(-11, 10), 0, 0, q(-11, 10)});
  CHECK(perturb_to_unique(testing::a2(), 0) == testing::a2());
  CHECK_THROWS_AS(perturb_to_unique(testing::a2(), -1), Error);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto A = random_potential(2, 1 + i % 4, rng, q(-1), q(1), 3);
    const auto before = analyze_maxplus(A);
    const auto after = analyze_maxplus(perturb_to_unique(A, q(1, 100)));
    CHECK(after.cs.unique_maximizer);
    CHECK(after.cs.m == before.cs.m);
    CHECK(after.cs.maximizing_orbits[0].period == before.cs.maximizing_orbits[0].period);
  }
}

TEST_CASE("generic suite") {
  const auto rep = sample_generic_suite(7, 200, 3);
  REQUIRE(rep.samples.size() == 200);
  CHECK(rep.count(&GenericSample::unique) == 200);
  CHECK(rep.count(&GenericSample::unique_dual) == 200);
  CHECK(rep.count(&GenericSample::aubry_is_mather) == 200);
  CHECK(rep.count(&GenericSample::aubry_is_mather_dual) == 200);
  CHECK(rep.count(&GenericSample::good) == 200);
  CHECK(rep.count(&GenericSample::good_dual) == 200);
  for (const auto& s : rep.samples) CHECK_FALSE(s.error);
  CHECK(rep.count(&GenericSample::unique_before) <= 200);

  const auto again = sample_generic_suite(7, 200, 3);
  CHECK(again.csv() == rep.csv());
  const std::string csv = rep.csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
  CHECK_FALSE(rep.summary().empty());
  CHECK(sample_generic_suite(7, 0, 3).count(&GenericSample::unique) == 0);

  // with coarse values ties are common before the perturbation
  const auto coarse = sample_generic_suite(1, 50, 2, 0);
  CHECK(coarse.count(&GenericSample::unique_before) == coarse.count(&GenericSample::unique));
}

TEST_CASE("maximizing value is 1-Lipschitz") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 4;
    const auto A = random_potential(2, k, rng), B = random_potential(2, k, rng);
    CHECK(lipschitz_check(A, B));
    const Rational gap = max_cycle_mean(build_de_bruijn(A)) - max_cycle_mean(build_de_bruijn(B));
    CHECK(abs(gap) <= sup_distance(A, B));
  }
}

TEST_CASE("subaction regularity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const auto A = random_potential(2, 2 + i % 4, rng);
    const auto an = analyze_maxplus(A);
    const auto osc = subaction_oscillation_check(A, an.V.values);
    CHECK(osc.holds);
    CHECK(osc.worst_slack >= 0);
    CHECK(subaction_holder_check(A, an.V.values, 0.5, 1.0));
  }
  const auto A = testing::a2().lifted(1);
  auto V = analyze_maxplus(A).V.values;
  V[1] += 5;
  CHECK_FALSE(subaction_oscillation_check(A, V).holds);

  const auto member = leplaideur_member(1, q(1, 2), 7);
  CHECK(subaction_holder_check(member, analyze_maxplus(member).V.values, 0.5, 1.0));
}
