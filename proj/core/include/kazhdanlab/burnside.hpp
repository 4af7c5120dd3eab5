#pragma once

#include "kazhdanlab/rep.hpp"

namespace kazhdanlab {

struct BurnsideCertificate {
  int k_sigma = 0;
  /// dim span sigma(S^k) for k = 0..k_sigma.
  std::vector<int> ranks;
  /// (2/log|S|) log d.
  double lower_bound = 0.0;
  /// d^2.
  int upper_bound = 0;
};

/// Smallest k > 0 with dim span sigma(S^k) = d^2, with the rank trace and the
/// a-priori bounds. Throws NotIrreducible when the rank plateaus below d^2;
/// the plateau rank equals dim sigma(CG).
BurnsideCertificate burnside_index(const UnitaryRep& sigma);

/// Minimum-l2-coefficient-norm f supported in S^k with sigma(f) v = w
/// (Moore-Penrose preimage of w under T_v: f -> sigma(f) v).
GroupRingElement synthesis_solve(const UnitaryRep& sigma, const Vec& v, const Vec& w, int k);

struct SynthesisSystem {
  Vec v;
  /// Columns e_1..e_d with e_1 = v: v completed by standard basis vectors via
  /// Gram-Schmidt, dependents dropped.
  Mat basis;
  /// sigma(f_i) v = e_i with support in S^{k_sigma}; f_1 = delta_e exactly.
  std::vector<GroupRingElement> f;
  /// max_i ||f_i||_1; this fixed-v constant is what downstream epsilons use.
  double M = 1.0;
  /// Diagnostic: max over sampled unit v' of the row-2-norm-sum upper bound
  /// on ||U_{v'}||_{2->1}; the input v is always included in the sample.
  double M_global_upper = 1.0;
  /// Certified companion lower bound from alternating phase/vector ascent.
  double M_global_lower = 1.0;
  BurnsideCertificate cert;
};

SynthesisSystem recovery_constant(const UnitaryRep& sigma, const Vec& v,
                                  std::uint64_t seed = kDefaultSeed,
                                  int global_samples = 1000, int ascent_steps = 50);

}  // namespace kazhdanlab
