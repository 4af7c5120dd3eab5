#include "kazhdanlab/kazhdan.hpp"

#include <cmath>

namespace kazhdanlab {

KazhdanPair kazhdan_pair(const IrrepTable& irreps) {
  const GroupPtr& group = irreps.group;
  const auto& gens = group->gen_set();
  KazhdanPair pair;
  pair.group = group;
  pair.gen_set = gens;
  pair.lambda_min = 0.0;

  bool found = false;
  for (std::size_t i = 0; i < irreps.irreps.size(); ++i) {
    const UnitaryRep& sigma = irreps.irreps[i];
    bool trivial = true;
    for (const cd& c : sigma.character())
      if (std::abs(c - cd(static_cast<double>(sigma.dim()), 0.0)) > 1e-8) trivial = false;
    if (trivial) continue;

    const int d = sigma.dim();
    Mat delta = Mat::Zero(d, d);
    for (int s : gens) delta += Mat::Identity(d, d) - sigma.matrix(s);
    delta = 0.5 * (delta + Mat(delta.adjoint()));  // symmetric S makes this Hermitian
    Eigen::SelfAdjointEigenSolver<Mat> es(delta);
    const double lam = es.eigenvalues().minCoeff();
    if (lam < 1e-12)
      throw NumericalDegeneracy("nontrivial irrep with vanishing Laplacian gap");
    if (!found || lam < pair.lambda_min) {
      pair.lambda_min = lam;
      pair.witness_irrep = static_cast<int>(i);
      pair.witness_name = irreps.names[i];
      found = true;
    }
  }
  if (!found) throw TrivialGroup("no nontrivial irreducible representations");

  pair.epsilon0 = std::sqrt(2.0 * pair.lambda_min / static_cast<double>(gens.size()));
  if (pair.epsilon0 >= 2.0) {
    pair.epsilon0 = 2.0 - 1e-12;
    pair.clamped = true;
  }
  return pair;
}

KazhdanPair kazhdan_pair(GroupPtr group, std::uint64_t seed) {
  return kazhdan_pair(irrep_table(std::move(group), seed));
}

double displacement(const UnitaryRep& pi, const Vec& xi) {
  double out = 0.0;
  for (int s : pi.group()->gen_set())
    out = std::max(out, (pi.apply(s, xi) - xi).norm());
  return out;
}

BhvReport verify_bhv(const UnitaryRep& pi, const Vec& xi, double delta,
                     const KazhdanPair& pair) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterOutOfRange("verify_bhv needs delta in (0,1)");
  if (!same_group(*pi.group(), *pair.group))
    throw GroupMismatch("Kazhdan pair belongs to a different group");
  BhvReport report;
  const double norm = xi.norm();
  report.displacement = displacement(pi, xi);
  report.threshold = pair.epsilon0 * delta * norm;
  report.applicable = report.displacement < report.threshold;
  const Mat p = invariant_projection(pi);
  report.lhs = (xi - p * xi).norm();
  report.rhs = delta * norm;
  report.holds = !report.applicable || report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace kazhdanlab
