#pragma once

// Finite temperature side: Ruelle transfer matrices in the log domain, their
// Perron triples, Gibbs cylinder masses, and the zero temperature limits.
// Floating point lives only here.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergo/duality.hpp"
#include "ergo/maxplus.hpp"
#include "ergo/potential.hpp"

namespace ergo {

// (L phi)(x) = sum_{Tz = x} exp(beta A(z)) phi(z) on node-indexed vectors.
struct RuelleMatrix {
  double beta = 1.0;
  int alphabet_size = 2;
  int node_depth = 0;
  std::size_t nodes = 1;
  std::vector<double> log_edge;  // beta * A(e), edge-indexed

  std::size_t source(std::size_t e) const { return e / alphabet_size; }
  std::size_t target(std::size_t e) const { return e % nodes; }
};

RuelleMatrix ruelle_matrix(const Potential& A, double beta);

struct EigenTriple {
  double log_lambda = 0.0;
  std::vector<double> log_phi;  // right eigenvector, max entry 0
  std::vector<double> log_nu;   // left eigenvector, total mass 1
  std::vector<double> log_mu;   // Gibbs node masses, total mass 1
  double residual = 0.0;        // ||M phi - lambda phi||_inf / lambda, phi max 1
  std::size_t iterations = 0;

  std::vector<double> phi() const;
  std::vector<double> nu() const;
  std::vector<double> mu() const;
};

inline constexpr std::size_t kMaxPowerIterations = 1'000'000;

// Power iteration on M + rho I (rho the running eigenvalue estimate), which
// has the same Perron vector and no peripheral spectrum besides it.
EigenTriple leading_eigs(const RuelleMatrix& m);

// log mu_beta([u]) for any cylinder word u.
double log_cylinder_mass(const RuelleMatrix& m, const EigenTriple& eig, const Word& u);

struct ScanRow {
  double beta = 0.0;
  double pressure_over_beta = 0.0;
  double pressure_gap = 0.0;   // pressure/beta - m(A)
  double subaction_gap = 0.0;  // sup |(1/beta) log phi - V| after anchoring
  std::optional<double> tv_distance;  // vs. the maximizing orbit measure
  std::optional<double> ldp_gap;      // max over depth-k cylinders
  std::vector<double> masses;         // Gibbs node masses
};

struct ConvergenceReport {
  Rational m;
  bool unique_maximizer = false;
  std::vector<ScanRow> rows;

  std::string csv() const;
};

ConvergenceReport beta_scan(const Potential& A, const std::vector<double>& betas);

// c = log sum_{w, x} nu*(w) nu(x) exp(beta W(w, x)).
double kernel_normalization(const EigenTriple& eig_A, const EigenTriple& eig_Astar,
                            const KernelTable& W, double beta);

struct KernelIdentityReport {
  double c = 0.0;
  double mass = 0.0;              // sum nu* nu exp(beta W - c), should be 1
  double residual_dual = 0.0;     // phi_{A*}(w) vs integral over x
  double residual_primal = 0.0;   // phi_A(x) vs integral over w
  double residual = 0.0;
  bool violated = false;          // residual > kKernelIdentityTolerance
};

inline constexpr double kKernelIdentityTolerance = 1e-8;

KernelIdentityReport verify_kernel_identity(const Potential& A, const Potential& Astar,
                                            const KernelTable& W, double beta);

struct LdpRow {
  double beta = 0.0;
  double rate = 0.0;  // -(1/beta) log mu_beta(C)
  double gap = 0.0;   // |rate - inf_C I|
};

struct LdpReport {
  Word cylinder;
  Rational inf_rate;  // inf of the deviation function over C
  std::vector<LdpRow> rows;
};

// Exact infimum of the deviation function over [u].
Rational deviation_infimum(const MaxPlusAnalysis& an, const Word& u);

// Requires a unique maximizing orbit.
LdpReport ldp_rate_check(const Potential& A, const Word& cylinder,
                         const std::vector<double>& betas);

}  // namespace ergo
