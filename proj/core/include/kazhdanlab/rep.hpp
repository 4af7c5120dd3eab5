#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kazhdanlab/group.hpp"
#include "kazhdanlab/numeric.hpp"

namespace kazhdanlab {

/// A unitary representation stored as one dense d x d complex matrix per
/// group element. Immutable and safe to share across threads.
class UnitaryRep {
 public:
  UnitaryRep() = default;

  /// Wrap explicit per-element matrices. Normalizes matrix(e) to the exact
  /// identity and, when validate is set, checks unitarity (1e-10) and the
  /// homomorphism property (1e-9, generator pairs exhaustively plus random
  /// pairs).
  static UnitaryRep from_matrices(GroupPtr group, std::vector<Mat> matrices,
                                  bool validate = true);

  /// Extend matrices given on gen_set() (in gen_set order) to the whole group
  /// along the BFS factorization.
  static UnitaryRep from_generator_matrices(GroupPtr group, const std::vector<Mat>& gen_mats,
                                            bool validate = true);

  const GroupPtr& group() const { return group_; }
  int dim() const { return dim_; }
  const Mat& matrix(int g) const { return mats_[g]; }

  Vec apply(int g, const Vec& x) const { return mats_[g] * x; }

  /// pi(f) = sum_g f(g) pi(g).
  Mat apply_ring(const GroupRingElement& f) const;

  std::vector<cd> character() const;

  void validate() const;

 private:
  GroupPtr group_;
  int dim_ = 0;
  std::vector<Mat> mats_;
};

UnitaryRep regular_rep(GroupPtr group);
UnitaryRep trivial_rep(GroupPtr group);

/// phi_{pi,xi}(g) = <pi(g) xi, xi> for a unit vector xi.
cd coefficient(const UnitaryRep& pi, const Vec& xi, int g);

/// g -> conj(sigma(g)) (x) pi(g) on C^{d_sigma * d_pi}.
UnitaryRep conjugate_tensor(const UnitaryRep& sigma, const UnitaryRep& pi);

/// Block-diagonal direct sum, block order following input order.
UnitaryRep direct_sum(const std::vector<std::pair<UnitaryRep, int>>& parts);

/// P = (1/|G|) sum_g pi(g); the orthogonal projection onto the fixed space.
Mat invariant_projection(const UnitaryRep& pi);

/// True iff the commutant equations {sigma(s) X = X sigma(s) : s in gen_set}
/// have a solution space of dimension exactly 1 (SVD nullspace).
bool is_irreducible(const UnitaryRep& sigma);

/// <chi_pi, chi_sigma> rounded to the nearest integer (sigma irreducible).
int multiplicity(const UnitaryRep& pi, const UnitaryRep& sigma);

/// max_g |chi_1(g) - chi_2(g)|.
double character_distance(const UnitaryRep& a, const UnitaryRep& b);

/// For irreducible inputs with equal characters, a unitary U with
/// U sigma2(g) U* = sigma1(g); nullopt when the characters differ.
std::optional<Mat> equivalent(const UnitaryRep& sigma1, const UnitaryRep& sigma2,
                              std::uint64_t seed = kDefaultSeed);

struct DecompositionComponent {
  UnitaryRep irrep;
  int multiplicity = 0;
  /// dim x (d_i * multiplicity): orthonormal columns, one d_i block per copy,
  /// each block W satisfying pi(g) W = W irrep(g).
  Mat isometry;
};

struct DecompositionCertificate {
  std::vector<DecompositionComponent> components;
  double residual = 0.0;
  std::uint64_t seed = kDefaultSeed;

  int total_dim() const;
  /// Isometry column block of one copy (component index, copy index).
  Mat copy_isometry(int component, int copy) const;
};

/// Randomized commutant splitting: average a random Hermitian matrix over the
/// group action, split along eigenvalue clusters, recurse. Components are
/// deduplicated by character equality and sorted canonically (dimension, then
/// character); deterministic for a fixed seed.
DecompositionCertificate decompose_irreps(const UnitaryRep& pi,
                                          std::uint64_t seed = kDefaultSeed);

/// The group's irreducible representations in canonical order, with ids
/// ("irr0", ...) and aliases ("trivial"; "chi<k>" for cyclic groups; "sign"
/// and "std" where unambiguous).
struct IrrepTable {
  GroupPtr group;
  std::vector<UnitaryRep> irreps;
  std::vector<std::string> names;                          // irr0, irr1, ...
  std::vector<std::vector<std::string>> aliases;           // per irrep
  std::uint64_t seed = kDefaultSeed;

  int index_of(const std::string& name_or_alias) const;    // -1 if unknown
  const UnitaryRep& at(const std::string& name_or_alias) const;
};

IrrepTable irrep_table(GroupPtr group, std::uint64_t seed = kDefaultSeed);

/// phi(g) = <sigma(g) v, v> for an irreducible sigma and a unit vector v.
class PositiveDefiniteFunction {
 public:
  /// Validates: v unit, sigma irreducible, phi(e) = 1, phi(g^-1) = conj(phi(g)),
  /// and positive semidefiniteness of the Gram matrix for |G| <= 200.
  PositiveDefiniteFunction(UnitaryRep sigma, Vec v, bool validate = true);

  const UnitaryRep& sigma() const { return sigma_; }
  const Vec& v() const { return v_; }
  int dim() const { return sigma_.dim(); }
  cd operator()(int g) const { return inner(sigma_.apply(g, v_), v_); }

 private:
  UnitaryRep sigma_;
  Vec v_;
};

}  // namespace kazhdanlab
