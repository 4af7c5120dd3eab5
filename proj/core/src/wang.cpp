#include "kazhdanlab/wang.hpp"

#include <cmath>

namespace kazhdanlab {

namespace {

void require_unit(const Vec& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw NonUnitVector(std::string(what) + " must be a unit vector");
}

// sigma expressed in an orthonormal basis E: (E^* sigma(g) E)_{ji} = <sigma(g) e_i, e_j>.
Mat sigma_in_basis(const UnitaryRep& sigma, const Mat& basis, int g) {
  return basis.adjoint() * sigma.matrix(g) * basis;
}

}  // namespace

double epsilon_for(const PositiveDefiniteFunction& phi, double delta,
                   const KazhdanPair& pair, double M) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterOutOfRange("epsilon_for needs delta in (0,1)");
  if (M < 1.0 - 1e-12) throw ParameterOutOfRange("epsilon_for needs M >= 1");
  if (!(pair.epsilon0 > 0.0 && pair.epsilon0 < 2.0))
    throw ParameterOutOfRange("epsilon_for needs epsilon0 in (0,2)");
  const double d = static_cast<double>(phi.dim());
  return delta * delta * pair.epsilon0 * pair.epsilon0 / (24.0 * d * (d + 1.0) * M * M);
}

GoodnessReport is_good(const UnitaryRep& pi, const Vec& x,
                       const PositiveDefiniteFunction& phi, double epsilon,
                       RadiusMode mode, int k_sigma) {
  require_unit(x, "x");
  if (!same_group(*pi.group(), *phi.sigma().group()))
    throw GroupMismatch("pi and phi over different groups");
  const int d = phi.dim();
  int k = 0;
  if (mode == RadiusMode::by_d_squared) {
    k = d * d;
  } else {
    k = k_sigma >= 0 ? k_sigma : burnside_index(phi.sigma()).k_sigma;
  }
  GoodnessReport report;
  report.radius = 2 * k + 1;
  report.epsilon = epsilon;
  const int bs = pi.group()->ball_size(report.radius);
  double gap = 0.0;
  for (int s = 0; s < bs; ++s)
    gap = std::max(gap, std::abs(inner(pi.apply(s, x), x) - phi(s)));
  report.max_gap = gap;
  report.good = gap < epsilon;
  return report;
}

ZimmerReport zimmer_matrix_gap(const UnitaryRep& sigma, const UnitaryRep& pi,
                               const SynthesisSystem& synthesis, const Vec& x,
                               double epsilon) {
  require_unit(x, "x");
  const int d = sigma.dim();
  ZimmerReport report;
  report.epsilon = epsilon;
  report.bound = epsilon * synthesis.M * synthesis.M;

  const int radius = 2 * synthesis.cert.k_sigma + 1;
  const int bs = pi.group()->ball_size(radius);
  double hyp = 0.0;
  for (int s = 0; s < bs; ++s) {
    const cd phi_s = inner(sigma.apply(s, synthesis.v), synthesis.v);
    hyp = std::max(hyp, std::abs(inner(pi.apply(s, x), x) - phi_s));
  }
  report.hypothesis_gap = hyp;
  report.hypothesis_ok = hyp < epsilon;

  std::vector<Vec> eta(d);
  for (int i = 0; i < d; ++i) eta[i] = pi.apply_ring(synthesis.f[i]) * x;

  double gap = 0.0;
  for (int g : pi.group()->gen_set()) {
    const Mat sb = sigma_in_basis(sigma, synthesis.basis, g);
    for (int i = 0; i < d; ++i) {
      const Vec pg_eta = pi.apply(g, eta[i]);
      for (int j = 0; j < d; ++j)
        gap = std::max(gap, std::abs(sb(j, i) - inner(pg_eta, eta[j])));
    }
  }
  report.gap = gap;
  report.holds = gap <= report.bound + 1e-9;
  if (report.hypothesis_ok && !report.holds)
    throw NumericalDegeneracy("Zimmer bound violated under a satisfied hypothesis");
  return report;
}

DisplacementIdentity displacement_identity_check(const UnitaryRep& sigma,
                                                 const UnitaryRep& pi, const Mat& basis,
                                                 const std::vector<Vec>& eta, int g) {
  const int d = sigma.dim();
  const int m = pi.dim();
  if (static_cast<int>(eta.size()) != d)
    throw ParameterOutOfRange("need one eta_i per basis column");
  if ((basis.adjoint() * basis - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw ParameterOutOfRange("basis columns are not orthonormal");

  Mat z(m, d);
  for (int i = 0; i < d; ++i) z.col(i) = eta[i];
  const Mat sb = sigma_in_basis(sigma, basis, g);

  DisplacementIdentity out;
  out.lhs = (z - pi.matrix(g) * z * sb.adjoint()).squaredNorm();

  double norm_dev_abs = 0.0, norm_dev = 0.0;
  for (int i = 0; i < d; ++i) {
    const double n2 = eta[i].squaredNorm();
    norm_dev_abs += std::abs(n2 - 1.0);
    norm_dev += n2 - 1.0;
  }
  double gap_abs = 0.0;
  cd cross(0.0, 0.0);
  for (int i = 0; i < d; ++i) {
    const Vec pg_eta = pi.apply(g, eta[i]);
    for (int j = 0; j < d; ++j) {
      const cd a = inner(pg_eta, eta[j]) - sb(j, i);
      gap_abs += std::abs(a);
      cross += std::conj(sb(j, i)) * a;
    }
  }
  out.rhs = 2.0 * norm_dev_abs + 2.0 * gap_abs;
  out.identity_rhs = 2.0 * norm_dev - 2.0 * cross.real();

  if (std::abs(out.lhs - out.identity_rhs) > 1e-9)
    throw NumericalDegeneracy("exact displacement identity violated");
  if (out.lhs > out.rhs + 1e-9)
    throw NumericalDegeneracy("displacement inequality violated");
  return out;
}

RecoveryResult recover(const UnitaryRep& pi, const Vec& x,
                       const PositiveDefiniteFunction& phi, double delta,
                       const KazhdanPair& pair, RadiusMode mode,
                       const SynthesisSystem* synthesis, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterOutOfRange("recover needs delta in (0,1)");
  require_unit(x, "x");
  if (!same_group(*pi.group(), *phi.sigma().group()))
    throw GroupMismatch("pi and phi over different groups");

  const UnitaryRep& sigma = phi.sigma();
  const int d = sigma.dim();
  const int m = pi.dim();
  const int n = pi.group()->order();

  RecoveryResult result;
  result.delta = delta;
  result.epsilon0 = pair.epsilon0;
  result.radius_mode = mode;
  if (synthesis) {
    if ((synthesis->v - phi.v()).norm() > 1e-12)
      throw ParameterOutOfRange("precomputed synthesis built for a different v");
    result.synthesis = *synthesis;
  } else {
    result.synthesis = recovery_constant(sigma, phi.v(), seed);
  }
  const SynthesisSystem& syn = result.synthesis;
  result.epsilon_used = epsilon_for(phi, delta, pair, syn.M);

  result.goodness =
      is_good(pi, x, phi, result.epsilon_used, mode, syn.cert.k_sigma);
  if (!result.goodness.good)
    throw NotGood("x is not (pi, phi, epsilon)-good: gap " +
                      std::to_string(result.goodness.max_gap) + " >= epsilon " +
                      std::to_string(result.epsilon_used),
                  result.goodness.max_gap, result.epsilon_used);

  // eta_i = pi(f_i) x; eta_1 = x since f_1 = delta_e.
  result.eta.resize(d);
  for (int i = 0; i < d; ++i) result.eta[i] = pi.apply_ring(syn.f[i]) * x;

  result.eta_norm2_min = result.eta_norm2_max = result.eta[0].squaredNorm();
  for (const Vec& e : result.eta) {
    const double n2 = e.squaredNorm();
    result.eta_norm2_min = std::min(result.eta_norm2_min, n2);
    result.eta_norm2_max = std::max(result.eta_norm2_max, n2);
  }
  if (result.eta_norm2_min < 0.5 - 1e-9 || result.eta_norm2_max > 1.5 + 1e-9)
    throw NumericalDegeneracy("||eta_i||^2 escaped [1/2, 3/2] under the hypothesis");

  // xi = sum_i e_i (x) eta_i in the coordinates of the synthesis basis;
  // stored as the m x d matrix Z with column i equal to eta_i.
  Mat z(m, d);
  for (int i = 0; i < d; ++i) z.col(i) = result.eta[i];
  result.xi = Eigen::Map<const Vec>(z.data(), static_cast<Eigen::Index>(m) * d);
  result.xi_norm2 = z.squaredNorm();
  if (result.xi_norm2 < 0.5 * d - 1e-9 || result.xi_norm2 > 1.5 * d + 1e-9)
    throw NumericalDegeneracy("||xi||^2 escaped [d/2, 3d/2]");

  result.displacement_sq_bound =
      delta * delta * pair.epsilon0 * pair.epsilon0 / 12.0;
  result.displacement_sq_bound_rel =
      delta * delta * pair.epsilon0 * pair.epsilon0 / (6.0 * d) * result.xi_norm2;
  result.displacement_sq_max = 0.0;
  for (int g : pi.group()->gen_set()) {
    const auto check = displacement_identity_check(sigma, pi, syn.basis, result.eta, g);
    result.displacement_sq_max = std::max(result.displacement_sq_max, check.lhs);
  }
  if (result.displacement_sq_max > result.displacement_sq_bound + 1e-9)
    throw NumericalDegeneracy("tensor displacement exceeds delta^2 eps0^2 / 12");
  if (result.displacement_sq_max > result.displacement_sq_bound_rel + 1e-9)
    throw NumericalDegeneracy("tensor displacement exceeds its relative bound");

  // Invariant projection of xi in the tensor representation, evaluated in the
  // operator picture: Z' = (1/|G|) sum_g pi(g) Z sigma_b(g)^*.
  Mat z_prime = Mat::Zero(m, d);
  for (int g = 0; g < n; ++g)
    z_prime += pi.matrix(g) * z * sigma_in_basis(sigma, syn.basis, g).adjoint();
  z_prime /= static_cast<double>(n);
  result.xi_prime = Eigen::Map<const Vec>(z_prime.data(), static_cast<Eigen::Index>(m) * d);

  result.xi_dist2 = (z - z_prime).squaredNorm();
  result.xi_dist2_bound = delta * delta / (6.0 * d) * result.xi_norm2;
  if (result.xi_dist2 > result.xi_dist2_bound + 1e-9)
    throw NumericalDegeneracy("||xi - xi'||^2 exceeds (delta^2/6d) ||xi||^2");

  result.zeta.resize(d);
  for (int i = 0; i < d; ++i) result.zeta[i] = z_prime.col(i);

  // xi' reshaped is an intertwiner between sigma (in the synthesis basis) and pi.
  result.intertwining_residual = 0.0;
  for (int g = 0; g < n; ++g) {
    const double r =
        (pi.matrix(g) * z_prime - z_prime * sigma_in_basis(sigma, syn.basis, g))
            .cwiseAbs()
            .maxCoeff();
    result.intertwining_residual = std::max(result.intertwining_residual, r);
  }
  if (result.intertwining_residual > 1e-8)
    throw NumericalDegeneracy("projected xi' fails to intertwine sigma and pi");

  result.x_dprime = result.zeta[0];
  result.x_dprime_dist = (x - result.x_dprime).norm();
  if (result.x_dprime_dist > 0.5 * delta + 1e-9)
    throw NumericalDegeneracy("||x - x''|| exceeds delta/2");
  const double x_dprime_norm = result.x_dprime.norm();
  if (x_dprime_norm < 1e-9)
    throw ZeroRecoveredVector("x'' vanished; impossible under the goodness hypothesis");

  result.x_prime = result.x_dprime / x_dprime_norm;
  result.distance = (x - result.x_prime).norm();
  if (result.distance > delta + 1e-9)
    throw NumericalDegeneracy("||x - x'|| exceeds delta");

  // Certify the span of pi(G) x': dimension d, carrying a subrepresentation
  // equivalent to sigma.
  Mat orbit(m, n);
  for (int g = 0; g < n; ++g) orbit.col(g) = pi.apply(g, result.x_prime);
  const Mat span = range_basis(orbit);
  result.span_dim = static_cast<int>(span.cols());
  if (result.span_dim != d)
    throw NumericalDegeneracy("span pi(G) x' has dimension " +
                              std::to_string(result.span_dim) + " != d");

  std::vector<Mat> restricted(n);
  for (int g = 0; g < n; ++g)
    restricted[g] = polar_unitary(span.adjoint() * pi.matrix(g) * span);
  const UnitaryRep restriction =
      UnitaryRep::from_matrices(pi.group(), std::move(restricted), false);
  result.char_distance_to_sigma = character_distance(restriction, sigma);
  if (result.char_distance_to_sigma >= 1e-8)
    throw NumericalDegeneracy("recovered subrepresentation is not equivalent to sigma");
  if (!equivalent(restriction, sigma, seed))
    throw NumericalDegeneracy("no unitary intertwiner onto sigma");
  result.subrep = decompose_irreps(restriction, seed);
  return result;
}

}  // namespace kazhdanlab
