#pragma once

// Twist certificates and the combinatorics of optimal pairs on {0,1}: the
// optimal-pair map, the turning cut, the B(w) intervals and the orbit of the
// cut.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergo/duality.hpp"
#include "ergo/symbolic.hpp"

namespace ergo {

struct TwistWitness {
  std::size_t a, a2;  // w-nodes, a < a2 (equal only in the one-node case)
  std::size_t b, b2;  // x-nodes, b < b2
  Rational lhs;       // W(a, b) + W(a2, b2)
  Rational rhs;       // W(a, b2) + W(a2, b)
};

// Holds when W(a,b) + W(a',b') < W(a,b') + W(a',b) for all distinct node
// pairs a < a', b < b'. Pairs inside one cylinder are out of reach of a
// locally constant kernel and are not part of the check.
struct TwistCertificate {
  bool holds = false;
  std::size_t checked_pairs = 0;
  std::optional<TwistWitness> witness;
};

// Binary alphabet only; throws kNotImplemented otherwise.
TwistCertificate certify_twist(const KernelTable& W);

struct OptimalW {
  std::size_t w_node;
  std::vector<std::size_t> connector;  // J*-optimal w-edges into the cycle
  Word cycle;                          // period word read from the entry node
  Point point;
};

struct OptimalPairEntry {
  std::size_t x_node;
  Rational value;             // max_w W(w, x) - V*(w) - J*(w)
  std::vector<OptimalW> ws;   // sorted by point
};

struct OptimalPairMap {
  int alphabet_size = 2;
  int node_depth = 0;
  std::vector<OptimalPairEntry> entries;  // one per x-node
  TwistCertificate twist;
  bool degenerate = false;      // every w optimal for every x
  bool countable = false;       // goodness holds
  bool connectors_truncated = false;

  // Distinct optimal points over all x-nodes, sorted.
  std::vector<Point> distinct_points() const;
};

inline constexpr std::size_t kConnectorCap = 256;

OptimalPairMap optimal_pair_map(const DualSystem& sys);

struct MonotonicityViolation {
  std::size_t q, q2;  // x-nodes q < q2 with max S(q2) > min S(q)
};

std::optional<MonotonicityViolation> monotonicity_check(const OptimalPairMap& map);

struct TurningCut {
  Cut cut;
  std::optional<std::size_t> last_one_node;    // last x-node with an optimal w = 1...
  std::optional<std::size_t> first_strict_node;  // first x-node with R(1x) > 0
};

// Needs d = 2 and a twist certificate. Throws kInvariant when the two routes
// disagree.
TurningCut turning_cut(const DualSystem& sys, const OptimalPairMap& map);

struct Interval {
  std::size_t first_node, last_node;
  Point left, right;        // inf of [first_node], sup of [last_node]
  std::vector<Point> ws;    // the common optimal set
};

struct IntervalDecomposition {
  std::vector<Interval> intervals;
  std::vector<Cut> boundaries;  // between consecutive intervals
  Cut turning_cut;
};

// Throws kInvariant if some B(w) is not order-convex.
IntervalDecomposition interval_decomposition(const OptimalPairMap& map, const Cut& c);

struct OrbitHit {
  Cut boundary;
  bool hit = false;
  std::size_t steps = 0;
  bool from_left = true;
};

struct ChangeCharacterization {
  bool holds = false;
  std::vector<OrbitHit> hits;
};

// Every boundary between consecutive intervals meets the forward orbit of one
// of the representatives of c.
ChangeCharacterization change_characterization_check(const IntervalDecomposition& dec,
                                                     const Cut& c);

struct FinitenessReport {
  std::size_t distinct_optimal = 0;
  std::size_t x_nodes = 0;
  bool degenerate = false;
  bool good = false;
  std::optional<Rational> goodness_margin;
  // At most one optimal w on each atom of the maximizing orbit of A.
  bool graph_on_atoms = false;
};

FinitenessReport finiteness_report(const DualSystem& sys, const OptimalPairMap& map);

std::string describe(const IntervalDecomposition& dec);

}  // namespace ergo
