#pragma once

// Sampling the generic properties: uniqueness, Aubry = Mather and goodness on
// random potentials after the perturbation that isolates one maximizing
// cycle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergo/potential.hpp"

namespace ergo {

// A - eps on every edge off the lexicographically least maximizing cycle.
Potential perturb_to_unique(const Potential& A, const Rational& eps);

struct GenericSample {
  std::size_t index = 0;
  bool unique_before = false;   // unperturbed potential
  bool unique = false;          // after perturbation, primal side
  bool unique_dual = false;
  bool aubry_is_mather = false;
  bool aubry_is_mather_dual = false;
  bool good = false;            // R* > 0 entering the cycle of A*
  bool good_dual = false;       // R > 0 entering the cycle of A
  std::optional<std::string> error;
};

struct GenericSuiteReport {
  std::uint64_t seed = 0;
  int depth = 0;
  std::vector<GenericSample> samples;

  std::size_t count(bool GenericSample::*flag) const;
  std::string csv() const;
  std::string summary() const;
};

inline const Rational kDefaultPerturbation{1, 10};

// Sample i is drawn from an mt19937_64 seeded with seed + i, binary alphabet.
GenericSuiteReport sample_generic_suite(std::uint64_t seed, std::size_t count, int depth,
                                        const Rational& eps = kDefaultPerturbation);

// |m(A) - m(B)| <= |A - B|_inf.
bool lipschitz_check(const Potential& A, const Potential& B);

struct OscillationReport {
  bool holds = false;
  Rational worst_slack;  // min over node pairs of bound - |V(u) - V(v)|
};

// Nodes u, v agreeing on their first j symbols satisfy
//   |V(u) - V(v)| <= sum_{l=j+1}^{k-1} osc_l(A),
// osc_l the largest change of A between edges agreeing on l symbols.
OscillationReport subaction_oscillation_check(const Potential& A,
                                              const std::vector<Rational>& V);

// The same bound in Hölder form, lambda^a / (1 - lambda^a) |A|_a d(u, v)^a
// with d(u, v) = lambda^N.
bool subaction_holder_check(const Potential& A, const std::vector<Rational>& V, double lambda,
                            double alpha);

}  // namespace ergo
