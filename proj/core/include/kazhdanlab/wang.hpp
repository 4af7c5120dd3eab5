#pragma once

#include "kazhdanlab/burnside.hpp"
#include "kazhdanlab/kazhdan.hpp"

namespace kazhdanlab {

/// Ball exponent for goodness: 2 k(sigma) + 1 (the sharper radius the
/// recovery argument consumes) or 2 d^2 + 1 (the definition's radius).
enum class RadiusMode { by_k_sigma, by_d_squared };

/// epsilon_{phi,delta} = delta^2 epsilon0^2 / (24 d (d+1) M^2).
double epsilon_for(const PositiveDefiniteFunction& phi, double delta,
                   const KazhdanPair& pair, double M);

struct GoodnessReport {
  int radius = 0;
  double max_gap = 0.0;
  double epsilon = 0.0;
  bool good = false;  // max_gap < epsilon
};

/// Evaluates max_{s in ball} |phi_{pi,x}(s) - phi(s)| against epsilon.
/// k_sigma, when nonnegative, skips recomputing the Burnside index.
GoodnessReport is_good(const UnitaryRep& pi, const Vec& x,
                       const PositiveDefiniteFunction& phi, double epsilon,
                       RadiusMode mode = RadiusMode::by_k_sigma, int k_sigma = -1);

struct ZimmerReport {
  /// max over g in S and i, j of |<sigma(g)e_i,e_j> - <pi(g)eta_i,eta_j>|.
  double gap = 0.0;
  double bound = 0.0;  // epsilon * M^2
  bool hypothesis_ok = false;
  double hypothesis_gap = 0.0;  // over S^{2 k(sigma) + 1}
  double epsilon = 0.0;
  bool holds = false;  // gap <= bound + 1e-9
};

ZimmerReport zimmer_matrix_gap(const UnitaryRep& sigma, const UnitaryRep& pi,
                               const SynthesisSystem& synthesis, const Vec& x,
                               double epsilon);

struct DisplacementIdentity {
  double lhs = 0.0;  // ||xi - (conj(sigma) (x) pi)(g) xi||^2
  double rhs = 0.0;  // 2 sum_i | ||eta_i||^2 - 1 | + 2 sum_{ij} |gap_{ij}|
  double identity_rhs = 0.0;  // exact rearranged right-hand side
};

/// Evaluates both sides of the displacement inequality for
/// xi = sum_i e_i (x) eta_i (basis columns e_i orthonormal) and checks the
/// exact intermediate identity; throws if either fails at 1e-9.
DisplacementIdentity displacement_identity_check(const UnitaryRep& sigma,
                                                 const UnitaryRep& pi, const Mat& basis,
                                                 const std::vector<Vec>& eta, int g);

struct RecoveryResult {
  double delta = 0.0;
  double epsilon0 = 0.0;
  double epsilon_used = 0.0;
  RadiusMode radius_mode = RadiusMode::by_k_sigma;
  GoodnessReport goodness;
  SynthesisSystem synthesis;

  std::vector<Vec> eta;  // eta_i = pi(f_i) x
  double eta_norm2_min = 0.0;
  double eta_norm2_max = 0.0;

  Vec xi;  // sum_i e_i (x) eta_i in basis-order tensor coordinates
  double xi_norm2 = 0.0;
  double displacement_sq_max = 0.0;    // max over S of ||xi - rho(g) xi||^2
  double displacement_sq_bound = 0.0;  // delta^2 epsilon0^2 / 12
  double displacement_sq_bound_rel = 0.0;  // (delta^2 epsilon0^2 / 6d) ||xi||^2

  Vec xi_prime;  // invariant projection of xi
  double xi_dist2 = 0.0;        // ||xi - xi'||^2
  double xi_dist2_bound = 0.0;  // (delta^2 / 6d) ||xi||^2

  std::vector<Vec> zeta;  // xi' = sum_i e_i (x) zeta_i
  double intertwining_residual = 0.0;

  Vec x_dprime;  // zeta_1
  double x_dprime_dist = 0.0;  // ||x - x''|| <= delta/2
  Vec x_prime;                 // x'' normalized
  double distance = 0.0;       // ||x - x'|| <= delta

  int span_dim = 0;  // dim span pi(G) x'
  double char_distance_to_sigma = 0.0;
  std::optional<DecompositionCertificate> subrep;
};

/// The recovery algorithm of the quantitative Wang theorem, executed with
/// every intermediate proof bound asserted. Throws NotGood when the goodness
/// precondition fails. A precomputed SynthesisSystem for (phi.sigma, phi.v)
/// may be supplied to skip rebuilding it.
RecoveryResult recover(const UnitaryRep& pi, const Vec& x,
                       const PositiveDefiniteFunction& phi, double delta,
                       const KazhdanPair& pair, RadiusMode mode = RadiusMode::by_k_sigma,
                       const SynthesisSystem* synthesis = nullptr,
                       std::uint64_t seed = kDefaultSeed);

}  // namespace kazhdanlab
