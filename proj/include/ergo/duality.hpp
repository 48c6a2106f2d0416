#pragma once

// Involution kernel, dual potential and the duality report relating the
// calibrated subactions of A and A*.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergo/maxplus.hpp"
#include "ergo/potential.hpp"
#include "ergo/symbolic.hpp"

namespace ergo {

// W(w, x) on (w-prefix, x-prefix) pairs of length k-1, exact.
class KernelTable {
 public:
  KernelTable(int alphabet_size, int prefix_length, Point base_point,
              std::vector<Rational> table);

  int alphabet_size() const { return d_; }
  int prefix_length() const { return len_; }
  std::size_t node_count() const { return n_; }
  const Point& base_point() const { return base_; }

  const Rational& operator()(std::size_t w_node, std::size_t x_node) const {
    return table_[w_node * n_ + x_node];
  }
  Rational& at(std::size_t w_node, std::size_t x_node) { return table_[w_node * n_ + x_node]; }
  const std::vector<Rational>& table() const { return table_; }

 private:
  int d_;
  int len_;
  std::size_t n_;
  Point base_;
  std::vector<Rational> table_;
};

inline Point default_base_point(int alphabet_size) {
  return Point(alphabet_size, {}, {0});
}

// W(w, x) = sum_{n>=0} A(w_n..w_0 x) - A(w_n..w_0 xbar); terms with n >= k-1
// vanish identically.
KernelTable involution_kernel(const Potential& A, const Point& base_point);

// The same series evaluated on actual points and cut after `terms` terms.
Rational kernel_series(const Potential& A, const Point& w, const Point& x, const Point& base,
                       std::size_t terms);

// A*(w) = A(w_0 xbar) + W(sigma w, w_0 xbar) - W(w, xbar); the kernel identity
// is then checked for every (w, x) prefix pair.
Potential dual_potential(const Potential& A, const KernelTable& W);

// Largest |A*(w) - A(w_0 x) - W(sigma w, w_0 x) + W(w, x)| over all pairs.
Rational kernel_identity_defect(const Potential& A, const Potential& Astar, const KernelTable& W);

// A, its kernel and dual, the max-plus analyses of both sides, and the
// b-function slack of the duality relation.
struct DualSystem {
  Potential A;
  Potential Astar;
  KernelTable W;
  MaxPlusAnalysis primal;
  MaxPlusAnalysis dual;
  Rational gamma;
  // b(x, w) = V(x) + V*(w) + J*(w) - W(w, x) + gamma, indexed [x * n + w].
  std::vector<Rational> b;
  std::size_t n = 0;

  const Rational& b_at(std::size_t x, std::size_t w) const { return b[x * n + w]; }
  std::vector<std::size_t> optimal_w(std::size_t x) const;
};

using DualityReport = DualSystem;

// Requires a unique maximizing orbit for A. Raises kNotUnique otherwise and
// kInvariant when max_w [W - V* - J*] - V is not constant.
DualSystem build_duality_report(const Potential& A, const Point& base_point);
inline DualSystem build_duality_report(const Potential& A) {
  return build_duality_report(A, default_base_point(A.alphabet_size()));
}

struct RelationViolation {
  std::string relation;  // "FR" or "FR1"
  std::size_t x_node;
  std::size_t w_edge;    // w-prefix of length k
  Rational lhs;
  Rational rhs;
};

// Checks, for every x-node and every length-k w-prefix,
//   R(w_0 x) = (V* + V - W)(x, w) - (V* + V - W)(w_0 x, sigma w) + R*(w)
// and its b-form b(x, w) - b(w_0 x, sigma w) = R(w_0 x), where w continues
// along a J*-optimal path so that I*(w) = R*(w) + J*(sigma w).
std::optional<RelationViolation> fundamental_relation_check(const DualSystem& sys);
// Same check against an externally supplied kernel table (negative controls).
std::optional<RelationViolation> fundamental_relation_check(const DualSystem& sys,
                                                            const KernelTable& W);

struct BackwardViolation {
  std::size_t x_node;
  std::size_t w_node;
  std::size_t next_w_node;
};

// b(x, w) = 0 implies b(w_0 x, sigma w) = 0 along every J*-optimal step of w.
std::optional<BackwardViolation> backward_invariance_check(const DualSystem& sys);

struct GoodnessReport {
  bool good = false;
  std::vector<std::size_t> p_edges;  // non-critical edges entering the cycle
  std::optional<Rational> margin;    // min R* over p_edges
  std::optional<std::size_t> witness;  // a p-edge with R* = 0
};

// Goodness of R on `g` relative to one maximizing cycle.
GoodnessReport goodness_against_cycle(const DeBruijnGraph& g, const ErrorFunction& R,
                                      const CycleOrbit& cycle);
// A is good when R* > 0 on every edge entering the maximizing cycle of A*.
GoodnessReport goodness_check(const DualSystem& sys);
GoodnessReport goodness_check(const Potential& A);

struct RoundtripReport {
  bool holds = false;
  Potential difference;  // L*(L(A)) - A
  CoboundaryCheck coboundary;
};

// L(A) = A* with base xbar; L*(psi) is the same construction with the roles of
// the two one-sided factors exchanged, base wbar.
RoundtripReport dual_roundtrip_check(const Potential& A, const Point& x_base,
                                     const Point& w_base);
inline RoundtripReport dual_roundtrip_check(const Potential& A) {
  return dual_roundtrip_check(A, default_base_point(A.alphabet_size()),
                              default_base_point(A.alphabet_size()));
}

}  // namespace ergo
