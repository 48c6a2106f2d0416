#pragma once

// Kantorovich problem between the maximizing orbit measures of A and A* with
// cost -W, solved exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergo/duality.hpp"

namespace ergo {

// Uniform measure on the shifts of one periodic word.
struct OrbitMeasure {
  std::vector<Point> atoms;

  Rational weight() const { return Rational(1, static_cast<long>(atoms.size())); }
};

struct OrbitMeasures {
  OrbitMeasure x_side;
  OrbitMeasure w_side;
};

// Needs unique maximizers on both sides, which a DualSystem guarantees.
OrbitMeasures maximizing_orbit_measures(const DualSystem& sys);

// Rows are x-atoms, columns w-atoms.
using Matrix = std::vector<std::vector<Rational>>;

Matrix transport_cost(const OrbitMeasure& mu, const OrbitMeasure& mu_star, const KernelTable& W);

inline constexpr std::size_t kMaxPermutationAtoms = 8;

struct TransportPlan {
  Matrix plan;
  Rational cost;
  // Optimal permutations (perm[i] = w-atom of x-atom i), all of them, in
  // lexicographic order. Empty when the permutation search did not run.
  std::vector<std::vector<std::size_t>> optimal_permutations;
  std::optional<Rational> lp_cost;
  bool lp_only = false;
};

// Permutation search over the Birkhoff vertices when both orbits have the
// same length p <= 8, cross-checked against the exact LP; LP only otherwise.
// Throws kInvariant if the two disagree.
TransportPlan solve_transport(const OrbitMeasure& mu, const OrbitMeasure& mu_star,
                              const KernelTable& W);
TransportPlan solve_transport(const Matrix& cost);

Rational plan_cost(const Matrix& plan, const Matrix& cost);

struct SlacknessViolation {
  std::size_t x_atom, w_atom;
  Rational b;
  bool feasibility;  // b < 0 rather than b > 0 on the support
};

struct SlacknessReport {
  bool holds = false;
  Matrix b;  // b on atom pairs
  std::vector<SlacknessViolation> violations;
};

// b >= 0 on all atom pairs and b = 0 on the support of the plan.
SlacknessReport slackness_check(const DualSystem& sys, const OrbitMeasures& mus,
                                const Matrix& plan);

// Support is a permutation matrix.
bool graph_property_check(const Matrix& plan);

// -sum V dmu - sum V* dmu* - gamma, the value of the dual pair.
Rational dual_value(const DualSystem& sys, const OrbitMeasures& mus);

std::string plan_csv(const Matrix& plan, const OrbitMeasures& mus);

}  // namespace ergo
