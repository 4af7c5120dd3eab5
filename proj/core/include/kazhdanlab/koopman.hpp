#pragma once

#include "kazhdanlab/wang.hpp"

namespace kazhdanlab {

/// A measure-preserving action on a weighted finite point set, given by one
/// permutation per gen_set entry of the acting group.
struct PermutationAction {
  int points = 0;
  std::vector<double> weights;          // positive, one per point
  std::vector<std::vector<int>> perms;  // per generator: point -> image
};

/// The representation on the full weighted L^2 space. In the basis of
/// normalized indicators the matrices are honest permutation matrices.
UnitaryRep l2_rep_of_action(GroupPtr g, const PermutationAction& action);

/// The Koopman representation: restriction to the orthocomplement of the
/// constants, L^2_0. A one-point space yields a zero-dimensional rep.
UnitaryRep koopman_of_action(GroupPtr g, const PermutationAction& action);

struct KoopmanBlock {
  int n = 0;            // irrep index (1-based, as in the block weights)
  int p = 0;            // copy index (1-based)
  int block_order = 0;  // |K_n|
  double weight = 0.0;  // 2^{-n-p}
};

struct KoopmanSpace {
  std::vector<KoopmanBlock> blocks;
  PermutationAction action;  // of H on the disjoint union of the K_{n,p}
  double total_weight = 0.0;
};

/// For each n <= n_max realize K_n as the matrix-group closure of
/// sigma_n(H) and include blocks K_{n,p} for p <= p_max; returns the space
/// and the representation on its full L^2.
std::pair<KoopmanSpace, UnitaryRep> koopman_build(const IrrepTable& irreps, int n_max,
                                                  int p_max);

struct SubrepContainment {
  int mult_in_pullback = 0;  // multiplicity of sigma_n in lambda_n . sigma_n
  int image_order = 0;       // |K_n|
  bool holds = false;        // mult >= 1
};

/// sigma_n is a subrepresentation of the pulled-back regular representation
/// of its image group.
SubrepContainment verify_subrep_containment(const UnitaryRep& sigma_n);

struct GoodComponent {
  cd c;  // nonzero coefficient
  Vec x;  // unit vector in a single irreducible invariant subspace
  PositiveDefiniteFunction phi;
  double delta_i = 0.0;  // delta / (|c| m), clamped below 1 for epsilon_for
  GoodnessReport goodness;
  int component = 0;  // certificate component index
  int copy = 0;
};

struct GoodDecomposition {
  int m = 0;
  std::vector<GoodComponent> components;
  double residual = 0.0;  // ||x - sum c_i x_i||
};

/// Splits x along the irreducible blocks of pi, dropping components below
/// 1e-12, and verifies each piece is good for its phi_i at
/// epsilon_{phi_i, delta/(|c_i| m)}.
GoodDecomposition decompose_good_vector(const UnitaryRep& pi, const Vec& x, double delta,
                                        const KazhdanPair& pair,
                                        const DecompositionCertificate* cert = nullptr,
                                        std::uint64_t seed = kDefaultSeed);

}  // namespace kazhdanlab
