#include "kazhdanlab/rep.hpp"

#include <cmath>

namespace kazhdanlab {

UnitaryRep UnitaryRep::from_matrices(GroupPtr group, std::vector<Mat> matrices,
                                     bool validate) {
  if (!group) throw ParameterOutOfRange("null group");
  if (static_cast<int>(matrices.size()) != group->order())
    throw ParameterOutOfRange("need one matrix per group element");
  UnitaryRep rep;
  rep.group_ = std::move(group);
  rep.dim_ = static_cast<int>(matrices.empty() ? 0 : matrices.front().rows());
  rep.mats_ = std::move(matrices);
  for (const Mat& m : rep.mats_)
    if (m.rows() != rep.dim_ || m.cols() != rep.dim_)
      throw ParameterOutOfRange("representation matrices of inconsistent size");
  if (rep.dim_ > 0) {
    if ((rep.mats_[0] - Mat::Identity(rep.dim_, rep.dim_)).cwiseAbs().maxCoeff() > 1e-9)
      throw Error("matrix at the identity is not the identity matrix");
    rep.mats_[0] = Mat::Identity(rep.dim_, rep.dim_);
  }
  if (validate) rep.validate();
  return rep;
}

UnitaryRep UnitaryRep::from_generator_matrices(GroupPtr group,
                                               const std::vector<Mat>& gen_mats,
                                               bool validate) {
  if (!group) throw ParameterOutOfRange("null group");
  const auto& gens = group->gen_set();
  if (gen_mats.size() != gens.size())
    throw ParameterOutOfRange("need one matrix per gen_set entry");
  const int d = static_cast<int>(gen_mats.empty() ? 0 : gen_mats.front().rows());
  std::vector<Mat> mats(group->order());
  mats[0] = Mat::Identity(d, d);
  for (int g = 1; g < group->order(); ++g)
    mats[g] = mats[group->bfs_parent(g)] * gen_mats[group->bfs_gen(g)];
  return from_matrices(std::move(group), std::move(mats), validate);
}

Mat UnitaryRep::apply_ring(const GroupRingElement& f) const {
  if (!same_group(*group_, *f.group()))
    throw GroupMismatch("group ring element over a different group");
  Mat out = Mat::Zero(dim_, dim_);
  for (const auto& [g, c] : f.coefficients()) out += c * mats_[g];
  return out;
}

std::vector<cd> UnitaryRep::character() const {
  std::vector<cd> chi(group_->order());
  for (int g = 0; g < group_->order(); ++g) chi[g] = mats_[g].trace();
  return chi;
}

void UnitaryRep::validate() const {
  if (dim_ == 0) return;
  const Mat id = Mat::Identity(dim_, dim_);
  for (const Mat& m : mats_)
    if ((m.adjoint() * m - id).norm() > 1e-10)
      throw Error("representation matrix is not unitary within 1e-10");
  const int n = group_->order();
  auto check_pair = [&](int g, int h) {
    if ((mats_[g] * mats_[h] - mats_[group_->mul(g, h)]).cwiseAbs().maxCoeff() > 1e-9)
      throw Error("homomorphism property fails within 1e-9");
  };
  for (int s : group_->gen_set())
    for (int t : group_->gen_set()) check_pair(s, t);
  if (static_cast<long>(n) * n <= 4096) {
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) check_pair(g, h);
  } else {
    Rng rng(kDefaultSeed);
    for (int trial = 0; trial < 256; ++trial)
      check_pair(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
  }
}

UnitaryRep regular_rep(GroupPtr group) {
  const int n = group->order();
  std::vector<Mat> mats(n);
  for (int g = 0; g < n; ++g) {
    Mat m = Mat::Zero(n, n);
    for (int h = 0; h < n; ++h) m(group->mul(g, h), h) = 1.0;
    mats[g] = std::move(m);
  }
  return UnitaryRep::from_matrices(std::move(group), std::move(mats), false);
}

UnitaryRep trivial_rep(GroupPtr group) {
  const int n = group->order();
  std::vector<Mat> mats(n, Mat::Identity(1, 1));
  return UnitaryRep::from_matrices(std::move(group), std::move(mats), false);
}

cd coefficient(const UnitaryRep& pi, const Vec& xi, int g) {
  if (std::abs(xi.norm() - 1.0) > 1e-10)
    throw NonUnitVector("coefficient function requires a unit vector");
  return inner(pi.apply(g, xi), xi);
}

UnitaryRep conjugate_tensor(const UnitaryRep& sigma, const UnitaryRep& pi) {
  if (!same_group(*sigma.group(), *pi.group()))
    throw GroupMismatch("conjugate_tensor over different groups");
  const int n = sigma.group()->order();
  std::vector<Mat> mats(n);
  for (int g = 0; g < n; ++g) mats[g] = kron(sigma.matrix(g).conjugate(), pi.matrix(g));
  return UnitaryRep::from_matrices(sigma.group(), std::move(mats), false);
}

UnitaryRep direct_sum(const std::vector<std::pair<UnitaryRep, int>>& parts) {
  if (parts.empty()) throw ParameterOutOfRange("direct_sum of nothing");
  const GroupPtr& group = parts.front().first.group();
  long total = 0;
  for (const auto& [rep, mult] : parts) {
    if (!same_group(*rep.group(), *group))
      throw GroupMismatch("direct_sum over different groups");
    if (mult < 1) throw ParameterOutOfRange("direct_sum multiplicity must be positive");
    total += static_cast<long>(rep.dim()) * mult;
  }
  if (total > 4096)
    throw DimensionCap("direct_sum dimension " + std::to_string(total) + " exceeds 4096");
  const int n = group->order();
  const int dim = static_cast<int>(total);
  std::vector<Mat> mats(n, Mat::Zero(dim, dim));
  for (int g = 0; g < n; ++g) {
    int off = 0;
    for (const auto& [rep, mult] : parts)
      for (int c = 0; c < mult; ++c) {
        mats[g].block(off, off, rep.dim(), rep.dim()) = rep.matrix(g);
        off += rep.dim();
      }
  }
  return UnitaryRep::from_matrices(group, std::move(mats), false);
}

Mat invariant_projection(const UnitaryRep& pi) {
  const int n = pi.group()->order();
  Mat p = Mat::Zero(pi.dim(), pi.dim());
  for (int g = 0; g < n; ++g) p += pi.matrix(g);
  p /= static_cast<double>(n);
  return p;
}

bool is_irreducible(const UnitaryRep& sigma) {
  const int d = sigma.dim();
  if (d == 0) return false;
  if (d == 1) return true;
  const auto& gens = sigma.group()->gen_set();
  const int dd = d * d;
  Mat system(static_cast<Eigen::Index>(gens.size()) * dd, dd);
  const Mat id = Mat::Identity(d, d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Mat& m = sigma.matrix(gens[i]);
    // sigma(s) X - X sigma(s) = 0, column-major vec: (I (x) m - m^T (x) I) vec(X).
    system.middleRows(static_cast<Eigen::Index>(i) * dd, dd) =
        kron(id, m) - kron(m.transpose(), id);
  }
  const int nullity = dd - numeric_rank(system);
  return nullity == 1;
}

double character_distance(const UnitaryRep& a, const UnitaryRep& b) {
  if (!same_group(*a.group(), *b.group()))
    throw GroupMismatch("character distance over different groups");
  const auto ca = a.character();
  const auto cb = b.character();
  double dist = 0.0;
  for (std::size_t g = 0; g < ca.size(); ++g) dist = std::max(dist, std::abs(ca[g] - cb[g]));
  return dist;
}

int multiplicity(const UnitaryRep& pi, const UnitaryRep& sigma) {
  if (!same_group(*pi.group(), *sigma.group()))
    throw GroupMismatch("multiplicity over different groups");
  const int n = pi.group()->order();
  const auto chi_pi = pi.character();
  const auto chi_sigma = sigma.character();
  cd ip(0.0, 0.0);
  for (int g = 0; g < n; ++g) ip += chi_pi[g] * std::conj(chi_sigma[g]);
  ip /= static_cast<double>(n);
  const double rounded = std::round(ip.real());
  if (std::abs(ip - cd(rounded, 0.0)) > 1e-6)
    throw NonIntegerMultiplicity("character inner product is not an integer; broken input");
  if (rounded < -0.5) throw NonIntegerMultiplicity("negative multiplicity; broken input");
  return static_cast<int>(rounded);
}

int DecompositionCertificate::total_dim() const {
  int total = 0;
  for (const auto& c : components) total += c.irrep.dim() * c.multiplicity;
  return total;
}

Mat DecompositionCertificate::copy_isometry(int component, int copy) const {
  const auto& c = components[component];
  return c.isometry.middleCols(static_cast<Eigen::Index>(copy) * c.irrep.dim(),
                               c.irrep.dim());
}

PositiveDefiniteFunction::PositiveDefiniteFunction(UnitaryRep sigma, Vec v, bool validate)
    : sigma_(std::move(sigma)), v_(std::move(v)) {
  if (v_.size() != sigma_.dim())
    throw ParameterOutOfRange("cyclic vector has the wrong dimension");
  if (std::abs(v_.norm() - 1.0) > 1e-10)
    throw NonUnitVector("cyclic vector must be a unit vector");
  if (!validate) return;
  if (!is_irreducible(sigma_))
    throw NotIrreducible("positive definite function requires an irreducible sigma", 0);
  const auto& g = *sigma_.group();
  if (std::abs((*this)(0) - cd(1.0, 0.0)) > 1e-10)
    throw Error("phi(e) != 1");
  for (int x = 0; x < g.order(); ++x)
    if (std::abs((*this)(g.inv(x)) - std::conj((*this)(x))) > 1e-9)
      throw Error("phi(g^-1) != conj(phi(g))");
  if (g.order() <= 200) {
    Mat gram(g.order(), g.order());
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) gram(a, b) = (*this)(g.mul(g.inv(b), a));
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.adjoint()));
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw Error("Gram matrix of phi is not positive semidefinite");
  }
}

}  // namespace kazhdanlab
