#pragma once

#include "kazhdanlab/rep.hpp"

namespace kazhdanlab {

struct KazhdanPair {
  GroupPtr group;
  std::vector<int> gen_set;
  double epsilon0 = 0.0;
  /// Smallest eigenvalue of Delta_sigma = sum_{s in S} (I - sigma(s)) over
  /// the nontrivial irreps.
  double lambda_min = 0.0;
  int witness_irrep = -1;
  std::string witness_name;
  /// Whether epsilon0 had to be clamped below 2 (never for |S| >= 2).
  bool clamped = false;
};

/// epsilon0 = sqrt(2 lambda_min / |S|), a valid Kazhdan constant for (G, S).
KazhdanPair kazhdan_pair(const IrrepTable& irreps);
KazhdanPair kazhdan_pair(GroupPtr group, std::uint64_t seed = kDefaultSeed);

/// max_{s in S} ||pi(s) xi - xi||.
double displacement(const UnitaryRep& pi, const Vec& xi);

struct BhvReport {
  /// displacement < epsilon0 * delta * ||xi||; the proposition says nothing
  /// about vectors failing this, so they report not-applicable instead of a
  /// violation.
  bool applicable = false;
  double displacement = 0.0;
  double threshold = 0.0;  // epsilon0 * delta * ||xi||
  double lhs = 0.0;        // ||xi - P xi||
  double rhs = 0.0;        // delta * ||xi||
  bool holds = true;       // lhs <= rhs + 1e-9 whenever applicable
};

/// `projection` may pass a precomputed invariant_projection(pi).
BhvReport verify_bhv(const UnitaryRep& pi, const Vec& xi, double delta,
                     const KazhdanPair& pair, const Mat* projection = nullptr);

}  // namespace kazhdanlab
