#include <doctest.h>

#include <random>

#include "ergo/error.hpp"
#include "helpers.hpp"

using namespace ergo;
using testing::pt;
using testing::q;
using testing::wd;

namespace {

ErrorKind load_error(const std::string& text, std::optional<int> depth = std::nullopt) {
  try {
    load_potential(text, depth);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("document accepted: " << text);
  return ErrorKind::kInvariant;
}

}  // namespace

TEST_CASE("loading tables") {
  const auto A = load_potential(
      R"J({"alphabet_size": 2, "depth": 2, "values": {"00": "-1", "01": 0, "10": "0", "11": -1}})J");
  CHECK(A == testing::a2());
  const auto B = load_potential(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": "0", "1": "-1"}})J");
  CHECK(B.depth() == 1);
  CHECK(B.at(wd("1")) == -1);
  const auto C = load_potential(
      R"J({"alphabet_size": 2, "depth": 1, "values": {"0": "0.25", "1": "-3/6"}})J");
  CHECK(C[0] == q(1, 4));
  CHECK(C[1] == q(-1, 2));
  const auto lifted = load_potential(
      R"J({"alphabet_size": 2, "depth": 1, "values": {"0": "1", "1": "2"}})J", 3);
  CHECK(lifted.depth() == 3);
  CHECK(lifted.at(wd("011")) == 1);
}

TEST_CASE("malformed documents") {
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 2, "values": {"00": 1, "01": 0, "10": 0}})J") ==
        ErrorKind::kIncompleteTable);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": 1, "0": 2, "1": 0}})J") ==
        ErrorKind::kDuplicate);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": "pi", "1": 0}})J") ==
        ErrorKind::kParse);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": 0.5, "1": 0}})J") ==
        ErrorKind::kParse);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": 1, "1": 0)J") ==
        ErrorKind::kParse);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 2, "values": {"0": 1, "1": 0}})J") ==
        ErrorKind::kParse);
  CHECK(load_error(R"J({"alphabet_size": 2, "depth": 1, "values": {"0": 1, "2": 0}})J") ==
        ErrorKind::kInvalidInput);
  CHECK(load_error(R"J({"alphabet_size": 2, "family": {"kind": "distance", "targets": ["(0)"]}})J") ==
        ErrorKind::kPrecondition);
  CHECK(load_error(R"J({"alphabet_size": 2, "family": {"kind": "distance", "targets": ["(0)"],
                       "lambda": "3/2"}})J",
                   2) == ErrorKind::kParse);
  CHECK_THROWS_AS(Potential(2, 2, {q(1), q(2), q(3)}), Error);
}

TEST_CASE("save and load round trip bit-exactly") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 3, k = 1 + i % 3;
    const auto A = random_potential(d, k, rng, q(-7, 3), q(5, 2), 1000);
    CHECK(load_potential(save_potential(A)) == A);
    CHECK(save_potential(load_potential(save_potential(A))) == save_potential(A));
  }
}

TEST_CASE("random tables stay in range with bounded denominators") {
  std::mt19937_64 rng(9);
  const auto A = random_potential(2, 4, rng, q(-1), q(1), 97);
  for (const auto& v : A.values()) {
    CHECK(v >= -1);
    CHECK(v <= 1);
    CHECK(v.get_den() <= 97);
  }
  const auto spec = R"J({"alphabet_size": 2, "family": {"kind": "random", "seed": 3, "depth": 3}})J";
  CHECK(load_potential(spec) == load_potential(spec));
  CHECK(load_potential(spec).depth() == 3);
  CHECK(load_potential(spec, 4).depth() == 4);
}

TEST_CASE("lookup depends only on the depth-k cylinder") {
  std::mt19937_64 rng(2);
  const auto A = random_potential(3, 3, rng);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_point(rng, 3);
    const auto u = p.prefix_word(3);
    CHECK(A.at(p) == A.at(u));
    // any other point of the same cylinder
    const auto other = Point(3, p.prefix(3), testing::random_point(rng, 3, 0).period());
    CHECK(A.at(other) == A.at(p));
    CHECK(A.lifted(2).at(p) == A.at(p));
  }
}

TEST_CASE("table arithmetic") {
  const auto A = testing::a2();
  const auto B = testing::table(2, 1, {"1", "2"});
  const auto S = A + B;
  CHECK(S.depth() == 2);
  CHECK(S.at(wd("10")) == 2);
  CHECK((S - B) == A);
  CHECK(A.plus_constant(5).at(wd("01")) == 5);
  CHECK(sup_distance(A, A.plus_constant(q(-3, 2))) == q(3, 2));
}

TEST_CASE("distance-to-set projections") {
  HolderFamilySpec spec;
  spec.kind = FamilyKind::kDistanceToSet;
  spec.targets = {pt("(01)"), pt("(10)")};
  const auto A = project_distance_family(spec, 2);
  CHECK(A.at(wd("00")) == q(-1, 4));
  CHECK(A.at(wd("01")) == 0);
  CHECK(A.at(wd("10")) == 0);
  CHECK(A.at(wd("11")) == q(-1, 4));
  spec.targets = {pt("(0)")};
  const auto B = project_distance_family(spec, 1);
  CHECK(B.at(wd("0")) == 0);
  CHECK(B.at(wd("1")) == q(-1, 2));
  spec.targets = {pt("1(0)")};
  CHECK(project_distance_family(spec, 3).at(wd("100")) == 0);
  spec.lambda = q(3, 2);
  CHECK_THROWS_AS(project_distance_family(spec, 2), Error);
}

TEST_CASE("projection equals the distance from the cylinder to the target set") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    HolderFamilySpec spec;
    spec.kind = FamilyKind::kDistanceToSet;
    spec.lambda = q(1, 2 + trial % 3);
    for (int i = 0; i < 1 + trial % 3; ++i) spec.targets.push_back(testing::random_point(rng, 2));
    const int k = 1 + trial % 4;
    const auto A = project_distance_family(spec, k);
    for (std::size_t u = 0; u < A.size(); ++u) {
      const auto word = Word::from_index(u, k, 2);
      // the closest point of [u] to t follows t after the prefix
      std::optional<Rational> best;
      for (const auto& t : spec.targets) {
        std::vector<Symbol> pre(word.symbols().begin(), word.symbols().end());
        const auto tail = apply_shift(t, k);
        auto per = tail.period();
        auto tp = tail.preperiod();
        pre.insert(pre.end(), tp.begin(), tp.end());
        const Rational v = -symbolic_distance(Point(2, pre, per), t, spec.lambda);
        if (!best || v > *best) best = v;
      }
      CAPTURE(word.str());
      CHECK(A[u] == *best);
    }
  }
}

TEST_CASE("Leplaideur family") {
  CHECK(leplaideur_word(1).str() == "01101");
  CHECK(leplaideur_word(2).str() == "0101101");
  CHECK(leplaideur_word(3).size() == 9);
  const auto w0 = pt("11(01)");
  CHECK(apply_shift(w0) == pt("(10)"));
  CHECK_THROWS_AS(leplaideur_word(0), Error);
  for (int n = 1; n <= 3; ++n) {
    const auto spec = leplaideur_family(n, q(1, 2));
    CHECK(spec.targets.size() == static_cast<std::size_t>(2 * n + 3 + 2));
    // sigma^(2n-1) z_n = 11(01)^(n+1)1... agrees with w0 on 2n+4 symbols
    const auto z = Point::periodic(leplaideur_word(n));
    CHECK(symbolic_distance(apply_shift(z, 2 * n - 1), w0, q(1, 2)) ==
          ergo::pow(q(1, 2), 2 * n + 5));
    for (int k = 1; k <= 2 * n + 5; ++k) {
      const auto A = leplaideur_member(n, q(1, 2), k);
      std::vector<bool> meets(A.size(), false);
      for (const auto& t : spec.targets) meets[word_index(t.prefix(k), 2)] = true;
      for (std::size_t u = 0; u < A.size(); ++u) {
        CHECK((A[u] == 0) == meets[u]);
        CHECK(A[u] <= 0);
      }
    }
  }
}

TEST_CASE("projection error bounds") {
  HolderFamilySpec spec;
  spec.kind = FamilyKind::kDistanceToSet;
  spec.targets = {pt("(01)")};
  CHECK(*projection_error_bound(spec, 4).exact == q(1, 16));
  spec.alpha = q(1, 2);
  CHECK(*projection_error_bound(spec, 4).exact == q(1, 4));
  spec.alpha = 1;
  spec.lambda = q(1, 3);
  CHECK(projection_error_bound(spec, 3).value == doctest::Approx(1.0 / 27));
  HolderFamilySpec table_spec;
  CHECK(projection_error_bound(table_spec, 4).value == 0);

  // the bound shrinks with depth and dominates the distance to deeper projections
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    HolderFamilySpec s;
    s.kind = FamilyKind::kDistanceToSet;
    s.targets = {testing::random_point(rng, 2), testing::random_point(rng, 2)};
    for (int k = 1; k <= 5; ++k) {
      CHECK(*projection_error_bound(s, k + 1).exact <= *projection_error_bound(s, k).exact);
      const auto coarse = project_distance_family(s, k).lifted(4);
      const auto fine = project_distance_family(s, k + 4);
      CHECK(sup_distance(coarse, fine) <= *projection_error_bound(s, k).exact);
    }
  }
}

TEST_CASE("family documents") {
  const auto A = load_potential(
      R"J({"alphabet_size": 2, "family": {"kind": "distance", "targets": ["(01)"], "lambda": "1/2"}})J",
      2);
  CHECK(A.at(wd("00")) == q(-1, 4));
  const auto B = load_potential(R"J({"alphabet_size": 2, "family": {"kind": "leplaideur", "n": 1}})J", 7);
  CHECK(B == leplaideur_member(1, q(1, 2), 7));
}
