#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kazhdanlab/errors.hpp"
#include "kazhdanlab/numeric.hpp"

namespace kazhdanlab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A fully realized finite group with multiplication table, inverses and a
/// symmetric generating set containing the identity.
///
/// Elements are indexed 0..order-1 in breadth-first order from the identity
/// (index 0) over the generating set, ties broken by insertion order, so the
/// radius-k ball is always a prefix of the element list.
class FiniteGroup {
 public:
  int order() const { return order_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }

  /// The set S, identity first, element indices.
  const std::vector<int>& gen_set() const { return gen_set_; }

  /// BFS distance from the identity (length of a shortest generator word).
  int word_length(int g) const { return word_length_[g]; }

  /// First k with |ball(k)| == order.
  int diameter() const { return diameter_; }

  /// |S^k|; the ball is the element-index prefix [0, ball_size(k)).
  int ball_size(int k) const;

  /// BFS factorization: g == mul(bfs_parent(g), gen_set()[bfs_gen(g)]) for g != 0.
  int bfs_parent(int g) const { return bfs_parent_[g]; }
  int bfs_gen(int g) const { return bfs_gen_[g]; }

 private:
  friend class GroupBuilder;
  FiniteGroup() = default;

  std::string name_;
  int order_ = 0;
  std::vector<int> mult_;        // order x order, row-major
  std::vector<int> inverse_;
  std::vector<int> gen_set_;
  std::vector<int> word_length_;
  std::vector<int> bfs_parent_;
  std::vector<int> bfs_gen_;
  std::vector<int> ball_sizes_;  // |ball(k)| for k = 0..diameter
  int diameter_ = 0;
};

/// S^k as an ordered list of element indices (BFS order).
std::vector<int> ball(const FiniteGroup& g, int k);

/// Same underlying group: identical pointer, or identical tables.
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

struct GroupSpec {
  enum class Kind { permutation, cyclic, dihedral, builtin };

  std::string name;
  Kind kind = Kind::permutation;
  std::vector<std::vector<int>> generators;  // permutation kind: one image list each
  int n = 0;                                 // cyclic / dihedral parameter
  bool symmetrize = true;
  int closure_cap = 10000;
};

GroupPtr build_group(const GroupSpec& spec);

/// Built-ins with documented default generating sets: Z_n, D_n, S3, S4, A4, Q8.
/// Accepts e.g. "Z3", "Z_3", "D4", "S3", "A4", "Q8".
GroupPtr builtin_group(const std::string& name);
bool is_builtin_group_name(const std::string& name);

/// A finite subgroup of U(d) realized by explicit matrices, e.g. the closure
/// of the image of a representation. Element identity uses tolerance 1e-9.
struct MatrixGroup {
  GroupPtr group;
  std::vector<Mat> matrices;  // one unitary per element index

  /// Index of m among the element matrices (max-abs distance < 1e-9), or -1.
  int find(const Mat& m) const;
};

MatrixGroup build_matrix_group(std::string name, const std::vector<Mat>& generators,
                               bool symmetrize = true, int cap = 10000);

/// Sparse element of the complex group ring CG. Immutable after construction.
class GroupRingElement {
 public:
  GroupRingElement(GroupPtr g, std::map<int, cd> coefficients);

  static GroupRingElement zero(GroupPtr g);
  static GroupRingElement delta(GroupPtr g, int element);

  const GroupPtr& group() const { return group_; }
  const std::map<int, cd>& coefficients() const { return coeffs_; }
  double l1_norm() const { return l1_norm_; }
  cd at(int g) const;

  /// Max word length over the support (0 for the zero element).
  int support_radius() const;

 private:
  GroupPtr group_;
  std::map<int, cd> coeffs_;
  double l1_norm_ = 0.0;
};

/// (f * h)(g) = sum_{ab = g} f(a) h(b).
GroupRingElement convolve(const GroupRingElement& f, const GroupRingElement& h);

/// True iff support(f) is contained in ball(G, k).
bool ring_support_check(const GroupRingElement& f, int k);

}  // namespace kazhdanlab
