#include "kazhdanlab/numeric.hpp"

#include <cmath>
#include <numbers>

namespace kazhdanlab {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int numeric_rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double tau = rank_threshold(m.rows(), m.cols(), sv(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++r;
  return r;
}

Mat nullspace_basis(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double tau = rank_threshold(m.rows(), m.cols(), smax);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Mat range_basis(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double tau = rank_threshold(m.rows(), m.cols(), smax);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++r;
  return svd.matrixU().leftCols(r);
}

Mat polar_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on explicitly constructed uniforms, u1 in (0, 1].
  const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Vec Rng::gaussian_vector(int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_normal();
  return v;
}

Vec Rng::unit_vector(int d) {
  Vec v = gaussian_vector(d);
  double n = v.norm();
  while (n < 1e-12) {
    v = gaussian_vector(d);
    n = v.norm();
  }
  return v / n;
}

Mat Rng::gaussian_matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Mat Rng::hermitian(int d) {
  Mat a = gaussian_matrix(d, d);
  return 0.5 * (a + a.adjoint());
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of seed xor golden-ratio-scaled index.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z = z ^ (z >> 31);
  return Rng(z);
}

}  // namespace kazhdanlab
