#pragma once

// Ergodic optimization on the de Bruijn graph of a locally constant
// potential: maximizing value, critical graph, calibrated subaction, error
// function, Mañé potential, Peierls barrier and deviation costs. Everything is
// exact rational arithmetic.

#include <cstddef>
#include <optional>
#include <vector>

#include "ergo/potential.hpp"
#include "ergo/rational.hpp"
#include "ergo/symbolic.hpp"

namespace ergo {

// A simple cycle of the graph, rotated so that its period word is the
// lexicographically least rotation.
struct CycleOrbit {
  std::vector<std::size_t> edges;
  Word period;

  std::vector<std::size_t> nodes(const DeBruijnGraph& g) const;
  // The distinct shifts of period^inf, in traversal order.
  std::vector<Point> atoms() const;
};

struct CriticalStructure {
  Rational m;  // maximum cycle mean
  std::vector<bool> critical_edge;
  std::vector<bool> critical_node;
  // Strongly connected components of the critical graph (sorted node lists).
  std::vector<std::vector<std::size_t>> classes;
  // Simple cycles of the critical graph, sorted by period word. Enumeration
  // stops at a cap; `orbits_truncated` records that.
  std::vector<CycleOrbit> maximizing_orbits;
  bool orbits_truncated = false;
  // One critical class which is a single simple cycle.
  bool unique_maximizer = false;

  std::vector<std::size_t> critical_nodes() const;
  std::vector<std::size_t> critical_edges() const;
};

// Karp's maximum cycle mean, exact.
Rational max_cycle_mean(const DeBruijnGraph& g);

CriticalStructure max_mean_cycle(const DeBruijnGraph& g, std::size_t orbit_cap = 4096);

struct Subaction {
  std::vector<Rational> values;  // node-indexed
  std::size_t anchor = 0;        // node pinned to 0
};

// V(x) = max over critical u of the longest normalized path weight u -> x,
// shifted so V(anchor) = 0.
Subaction calibrated_subaction(const DeBruijnGraph& g, const CriticalStructure& cs);

// max over nodes of |V(t) - max_{e -> t} (V(s) + A(e) - m)|; zero iff calibrated.
Rational calibration_residual(const DeBruijnGraph& g, const Rational& m,
                              const std::vector<Rational>& V);

struct ErrorFunction {
  std::vector<Rational> values;  // edge-indexed, >= 0
};

// R(e) = V(target) - V(source) - A(e) + m.
ErrorFunction error_function(const DeBruijnGraph& g, const CriticalStructure& cs,
                             const Subaction& V);

// Node-pair table over Q ∪ {-inf}; nullopt is -inf.
struct ActionTable {
  std::size_t n = 0;
  std::vector<std::optional<Rational>> values;

  const std::optional<Rational>& operator()(std::size_t u, std::size_t v) const {
    return values[u * n + v];
  }
};

// Longest normalized path weight with at least one edge.
ActionTable mane_potential(const DeBruijnGraph& g, const CriticalStructure& cs);
std::vector<std::size_t> aubry_set(const DeBruijnGraph& g, const CriticalStructure& cs);
// Longest normalized weight of arbitrarily long paths u -> v.
ActionTable peierls_barrier(const DeBruijnGraph& g, const CriticalStructure& cs);

// Nodes lying on cycles of zero-cost edges.
std::vector<bool> zero_cost_cycle_nodes(const DeBruijnGraph& g, const ErrorFunction& R);

// J(u): cheapest R-cost of a path from u into a zero-cost cycle; the infimum
// of the deviation sum over the cylinder [u].
std::vector<Rational> min_cost_to_critical(const DeBruijnGraph& g, const ErrorFunction& R);

// Eventually periodic point in [u] whose deviation sum equals J(u): follows
// the least cost-optimal edge until a zero-cost cycle is reached, then the
// least zero-cost cycle edge.
Point deviation_witness(const DeBruijnGraph& g, const ErrorFunction& R,
                        const std::vector<Rational>& J, std::size_t node);

struct Deviation {
  bool finite = false;
  Rational value;  // meaningful when finite
};

// Sum of R along the forward orbit of p.
Deviation deviation_at_point(const DeBruijnGraph& g, const ErrorFunction& R, const Point& p);

struct CoboundaryCheck {
  bool holds = false;
  std::optional<CycleOrbit> witness;  // a cycle with nonzero weight sum
  Rational witness_sum;
};

// z is u∘T - u iff every cycle of its graph sums to zero.
CoboundaryCheck is_coboundary(const Potential& z);

// Everything the other modules need about one potential.
struct MaxPlusAnalysis {
  DeBruijnGraph graph;
  CriticalStructure cs;
  Subaction V;
  ErrorFunction R;
  std::vector<Rational> J;
};

MaxPlusAnalysis analyze_maxplus(const Potential& A);

}  // namespace ergo
