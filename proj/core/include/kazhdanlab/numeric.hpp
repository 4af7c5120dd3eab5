#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace kazhdanlab {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Default seed for every randomized routine; recorded in reports.
inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

/// Singular-value threshold policy used for every rank/nullspace decision:
/// tau = max(rows, cols) * sigma_max * 1e-10.
inline double rank_threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * sigma_max * 1e-10;
}

/// <x, y>: linear in x, conjugate-linear in y.
inline cd inner(const Vec& x, const Vec& y) { return y.dot(x); }

Mat kron(const Mat& a, const Mat& b);

int numeric_rank(const Mat& m);

/// Orthonormal basis of ker(m), as columns.
Mat nullspace_basis(const Mat& m);

/// Orthonormal basis of the column span of m, as columns.
Mat range_basis(const Mat& m);

/// Nearest unitary in Frobenius norm (polar factor).
Mat polar_unitary(const Mat& m);

/// Deterministic RNG. mt19937_64 is fully pinned by the standard; the
/// uniform/normal transforms are hand-rolled so streams do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  double normal();
  cd complex_normal() { return {normal(), normal()}; }

  Vec gaussian_vector(int d);
  Vec unit_vector(int d);
  Mat gaussian_matrix(int rows, int cols);
  Mat hermitian(int d);

  /// Independent stream for parallel work item `index` under a master seed.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kazhdanlab
