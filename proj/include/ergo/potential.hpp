#pragma once

// Locally constant potentials: a table of exact rationals over the d^k
// cylinders of depth k. Hölder potentials enter only through their depth-k
// projections.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/rational.hpp"
#include "ergo/symbolic.hpp"

namespace ergo {

class LocallyConstantPotential {
 public:
  LocallyConstantPotential(int alphabet_size, int depth, std::vector<Rational> values);

  int alphabet_size() const { return d_; }
  int depth() const { return k_; }
  std::size_t size() const { return values_.size(); }

  const Rational& operator[](std::size_t word_index) const { return values_[word_index]; }
  const Rational& at(const Word& w) const;
  // Value at an infinite point: only its first `depth` symbols matter.
  const Rational& at(const Point& p) const;
  const std::vector<Rational>& values() const { return values_; }

  // Same function viewed as a depth-(depth+extra) table.
  LocallyConstantPotential lifted(int extra) const;
  LocallyConstantPotential operator+(const LocallyConstantPotential& other) const;
  LocallyConstantPotential operator-(const LocallyConstantPotential& other) const;
  LocallyConstantPotential plus_constant(const Rational& c) const;

  friend bool operator==(const LocallyConstantPotential&,
                         const LocallyConstantPotential&) = default;

 private:
  int d_;
  int k_;
  std::vector<Rational> values_;
};

using Potential = LocallyConstantPotential;

Rational sup_distance(const Potential& a, const Potential& b);

// Nodes are the length-(k-1) words, edges the length-k words.
DeBruijnGraph build_de_bruijn(const Potential& weights);
DeBruijnGraph build_de_bruijn(int alphabet_size, int depth, const Potential& weights);

enum class FamilyKind { kExplicitTable, kDistanceToSet, kRandom };

struct HolderFamilySpec {
  FamilyKind kind = FamilyKind::kExplicitTable;
  int alphabet_size = 2;
  std::vector<Point> targets;        // distance-to-set
  Rational lambda{1, 2};             // metric d(x, y) = lambda^N
  Rational alpha{1};                 // Hölder exponent, metadata for bounds
  std::uint64_t seed = 0;            // random
  int depth = 1;                     // random
  Rational low{-1};                  // random value range
  Rational high{1};
  int max_denominator = 97;
};

// Values p/q with q uniform in [1, max_denominator] and p/q uniform-ish in [low, high].
Potential random_potential(int alphabet_size, int depth, std::mt19937_64& rng,
                           const Rational& low = Rational(-1),
                           const Rational& high = Rational(1),
                           int max_denominator = 97);

Potential materialize(const HolderFamilySpec& spec, int depth);

// d(x, y) = lambda^N, N the 1-based index of the first disagreement.
Rational symbolic_distance(const Point& a, const Point& b, const Rational& lambda);

// -dist([u], targets) on every depth-k cylinder [u], exact.
Potential project_distance_family(const HolderFamilySpec& spec, int depth);

// b_n = (01)^n 1 01, the period word of the (2n+3)-periodic point z_n.
Word leplaideur_word(int n);
// Targets: the orbit of z_n together with (01)^inf and (10)^inf.
HolderFamilySpec leplaideur_family(int n, const Rational& lambda);
Potential leplaideur_member(int n, const Rational& lambda, int depth);

struct ErrorBound {
  double value = 0.0;
  std::optional<Rational> exact;  // present when lambda^(depth*alpha) is rational
};

// Sup-distance bound between the family member and its depth-k projection.
ErrorBound projection_error_bound(const HolderFamilySpec& spec, int depth);

// Potential documents (JSON):
//   {"alphabet_size": 2, "depth": 2, "values": {"00": "-1", ...},
//    "family": {...}}   // family optional
struct PotentialDocument {
  std::optional<Potential> table;
  std::optional<HolderFamilySpec> family;
};

PotentialDocument parse_potential_document(std::string_view text);
Potential load_potential(std::string_view text, std::optional<int> depth = std::nullopt);
Potential load_potential_file(const std::string& path, std::optional<int> depth = std::nullopt);
std::string save_potential(const Potential& p);

}  // namespace ergo
