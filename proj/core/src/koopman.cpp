#include "kazhdanlab/koopman.hpp"

#include <cmath>

namespace kazhdanlab {

namespace {

void validate_action(const GroupPtr& g, const PermutationAction& action) {
  if (action.points < 1) throw ParameterOutOfRange("action needs at least one point");
  if (static_cast<int>(action.weights.size()) != action.points)
    throw ParameterOutOfRange("need one weight per point");
  for (double w : action.weights)
    if (!(w > 0.0)) throw MeasureNotPreserved("point weights must be positive");
  if (action.perms.size() != g->gen_set().size())
    throw ParameterOutOfRange("need one permutation per gen_set entry");
  for (const auto& p : action.perms) {
    if (static_cast<int>(p.size()) != action.points)
      throw ParameterOutOfRange("permutation of the wrong length");
    std::vector<char> seen(action.points, 0);
    for (int v : p) {
      if (v < 0 || v >= action.points || seen[v])
        throw ParameterOutOfRange("action entry is not a permutation");
      seen[v] = 1;
    }
    for (int pt = 0; pt < action.points; ++pt)
      if (std::abs(action.weights[p[pt]] - action.weights[pt]) > 1e-12)
        throw MeasureNotPreserved("permutation does not preserve the weights");
  }
}

Mat permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Mat m = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p) m(perm[p], p) = 1.0;
  return m;
}

}  // namespace

UnitaryRep l2_rep_of_action(GroupPtr g, const PermutationAction& action) {
  validate_action(g, action);
  std::vector<Mat> gen_mats;
  gen_mats.reserve(action.perms.size());
  for (const auto& p : action.perms) gen_mats.push_back(permutation_matrix(p));
  return UnitaryRep::from_generator_matrices(std::move(g), gen_mats);
}

UnitaryRep koopman_of_action(GroupPtr g, const PermutationAction& action) {
  validate_action(g, action);
  const int pts = action.points;

  // Unit vector of the constants in the normalized indicator basis.
  Vec c(pts);
  for (int p = 0; p < pts; ++p) c(p) = std::sqrt(action.weights[p]);
  c /= c.norm();
  // Deterministic orthonormal completion; columns 1.. span the complement.
  Eigen::HouseholderQR<Mat> qr(c);
  const Mat q = qr.householderQ();
  const Mat b = q.rightCols(pts - 1);

  std::vector<Mat> gen_mats;
  gen_mats.reserve(action.perms.size());
  for (const auto& p : action.perms)
    gen_mats.push_back(Mat(b.adjoint() * permutation_matrix(p) * b));
  return UnitaryRep::from_generator_matrices(std::move(g), gen_mats);
}

std::pair<KoopmanSpace, UnitaryRep> koopman_build(const IrrepTable& irreps, int n_max,
                                                  int p_max) {
  const GroupPtr& h = irreps.group;
  const int r = static_cast<int>(irreps.irreps.size());
  if (n_max < 1 || n_max > r)
    throw ParameterOutOfRange("n_max must be between 1 and the irrep count");
  if (p_max < 1) throw ParameterOutOfRange("p_max must be positive");

  KoopmanSpace space;
  space.action.points = 0;
  space.action.perms.assign(h->gen_set().size(), {});

  for (int n = 1; n <= n_max; ++n) {
    const UnitaryRep& sigma = irreps.irreps[n - 1];
    // K_n: matrix-group closure of sigma_n(H); equals the image for finite H.
    std::vector<Mat> image_gens;
    for (int s : h->gen_set()) image_gens.push_back(sigma.matrix(s));
    MatrixGroup kn = build_matrix_group("K" + std::to_string(n), image_gens,
                                        /*symmetrize=*/false);
    const int kn_order = kn.group->order();

    // Left-translation indices of the generators inside K_n.
    std::vector<int> gen_index;
    for (int s : h->gen_set()) {
      const int idx = kn.find(sigma.matrix(s));
      if (idx < 0) throw NumericalDegeneracy("generator image missing from K_n");
      gen_index.push_back(idx);
    }

    for (int p = 1; p <= p_max; ++p) {
      const double weight = std::pow(2.0, -static_cast<double>(n + p));
      space.blocks.push_back({n, p, kn_order, weight});
      const int offset = space.action.points;
      space.action.points += kn_order;
      if (space.action.points > 4096)
        throw DimensionCap("Koopman space exceeds 4096 points");
      for (int k = 0; k < kn_order; ++k)
        space.action.weights.push_back(weight / kn_order);
      for (std::size_t si = 0; si < gen_index.size(); ++si)
        for (int k = 0; k < kn_order; ++k)
          space.action.perms[si].push_back(offset + kn.group->mul(gen_index[si], k));
      space.total_weight += weight;
    }
  }

  UnitaryRep rep = l2_rep_of_action(h, space.action);
  return {std::move(space), std::move(rep)};
}

SubrepContainment verify_subrep_containment(const UnitaryRep& sigma_n) {
  const GroupPtr& h = sigma_n.group();
  std::vector<Mat> image_gens;
  for (int s : h->gen_set()) image_gens.push_back(sigma_n.matrix(s));
  MatrixGroup kn = build_matrix_group("K", image_gens, /*symmetrize=*/false);

  // lambda_n . sigma_n: H permuting K_n by left translation.
  PermutationAction action;
  action.points = kn.group->order();
  action.weights.assign(action.points, 1.0 / action.points);
  for (int s : h->gen_set()) {
    const int idx = kn.find(sigma_n.matrix(s));
    std::vector<int> perm(action.points);
    for (int k = 0; k < action.points; ++k) perm[k] = kn.group->mul(idx, k);
    action.perms.push_back(std::move(perm));
  }
  const UnitaryRep pullback = l2_rep_of_action(h, action);

  SubrepContainment out;
  out.image_order = action.points;
  out.mult_in_pullback = multiplicity(pullback, sigma_n);
  out.holds = out.mult_in_pullback >= 1;
  return out;
}

GoodDecomposition decompose_good_vector(const UnitaryRep& pi, const Vec& x, double delta,
                                        const KazhdanPair& pair,
                                        const DecompositionCertificate* cert,
                                        std::uint64_t seed) {
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw NonUnitVector("decompose_good_vector needs a unit vector");
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterOutOfRange("decompose_good_vector needs delta in (0,1)");

  DecompositionCertificate local;
  if (!cert) {
    local = decompose_irreps(pi, seed);
    cert = &local;
  }

  struct Piece {
    int component;
    int copy;
    double c;
    Vec u;  // component in irrep coordinates, normalized
    Vec x_i;
  };
  std::vector<Piece> pieces;
  Vec reconstructed = Vec::Zero(pi.dim());
  for (std::size_t ci = 0; ci < cert->components.size(); ++ci) {
    const auto& comp = cert->components[ci];
    for (int copy = 0; copy < comp.multiplicity; ++copy) {
      const Mat w = cert->copy_isometry(static_cast<int>(ci), copy);
      Vec u = w.adjoint() * x;
      const double nrm = u.norm();
      if (nrm <= 1e-12) continue;  // keep every c_i nonzero
      Vec x_i = w * u / nrm;
      reconstructed += nrm * x_i;
      pieces.push_back({static_cast<int>(ci), copy, nrm, Vec(u / nrm), std::move(x_i)});
    }
  }

  GoodDecomposition out;
  out.m = static_cast<int>(pieces.size());
  out.residual = (x - reconstructed).norm();

  for (const Piece& piece : pieces) {
    const UnitaryRep& sigma = cert->components[piece.component].irrep;
    PositiveDefiniteFunction phi(sigma, piece.u);
    // The coefficient function of x_i in pi equals phi exactly, so x_i is
    // good for every epsilon > 0; verify at the theorem's own epsilon.
    // delta'_i = delta / (|c_i| m) may reach 1; clamping below 1 only
    // shrinks epsilon, which strengthens the check.
    const double delta_i =
        std::min(delta / (piece.c * out.m), 1.0 - 1e-9);
    const SynthesisSystem syn =
        recovery_constant(sigma, piece.u, seed, /*global_samples=*/0);
    const double eps = epsilon_for(phi, delta_i, pair, syn.M);
    GoodnessReport goodness =
        is_good(pi, piece.x_i, phi, eps, RadiusMode::by_k_sigma, syn.cert.k_sigma);
    if (!goodness.good)
      throw NumericalDegeneracy("block component failed its own goodness check");
    out.components.push_back({cd(piece.c, 0.0), piece.x_i, std::move(phi), delta_i,
                              goodness, piece.component, piece.copy});
  }
  return out;
}

}  // namespace kazhdanlab
