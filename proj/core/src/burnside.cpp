#include "kazhdanlab/burnside.hpp"

#include <cmath>

namespace kazhdanlab {

BurnsideCertificate burnside_index(const UnitaryRep& sigma) {
  const int d = sigma.dim();
  if (d < 1) throw ParameterOutOfRange("burnside_index needs a nonzero representation");
  const FiniteGroup& g = *sigma.group();
  const int dd = d * d;

  BurnsideCertificate cert;
  cert.upper_bound = dd;
  cert.lower_bound =
      d == 1 ? 0.0
             : 2.0 / std::log(static_cast<double>(g.gen_set().size())) *
                   std::log(static_cast<double>(d));

  Mat flat(dd, g.order());
  for (int e = 0; e < g.order(); ++e)
    flat.col(e) = Eigen::Map<const Vec>(sigma.matrix(e).data(), dd);

  cert.ranks.push_back(1);  // k = 0: span{I}
  int prev = 1;
  for (int k = 1;; ++k) {
    const int bs = g.ball_size(k);
    const int r = numeric_rank(flat.leftCols(bs));
    cert.ranks.push_back(r);
    if (r == dd) {
      cert.k_sigma = k;
      break;
    }
    // Strict growth below k(sigma); a plateau (or an exhausted ball) means
    // the image algebra has dimension r < d^2.
    if (r == prev || bs == g.order())
      throw NotIrreducible("span sigma(S^k) plateaus at rank " + std::to_string(r) +
                               " < d^2 = " + std::to_string(dd),
                           r);
    prev = r;
  }

  for (std::size_t j = 0; j + 1 < cert.ranks.size(); ++j)
    if (!(cert.ranks[j] < cert.ranks[j + 1] || cert.ranks[j] == dd))
      throw NumericalDegeneracy("rank trace not strictly increasing below k_sigma");
  if (cert.lower_bound > cert.k_sigma + 1e-12 || cert.k_sigma > cert.upper_bound)
    throw NumericalDegeneracy("burnside index escaped its a-priori bounds");
  return cert;
}

namespace {

// Columns of T_v over the radius-k ball: column j is sigma(g_j) v.
Mat synthesis_matrix(const UnitaryRep& sigma, const Vec& v, int k) {
  const int bs = sigma.group()->ball_size(k);
  Mat a(sigma.dim(), bs);
  for (int j = 0; j < bs; ++j) a.col(j) = sigma.matrix(j) * v;
  return a;
}

// Moore-Penrose pseudoinverse with the module-wide threshold policy.
Mat pseudoinverse(const Mat& a, int* rank_out = nullptr) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double tau = rank_threshold(a.rows(), a.cols(), sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) {
      inv(i) = 1.0 / sv(i);
      ++rank;
    }
  if (rank_out) *rank_out = rank;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

void require_unit(const Vec& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw NonUnitVector(std::string(what) + " must be a unit vector");
}

}  // namespace

GroupRingElement synthesis_solve(const UnitaryRep& sigma, const Vec& v, const Vec& w,
                                 int k) {
  if (k < 1) throw ParameterOutOfRange("synthesis radius must be positive");
  require_unit(v, "v");
  require_unit(w, "w");
  const Mat a = synthesis_matrix(sigma, v, k);
  int rank = 0;
  const Mat pinv = pseudoinverse(a, &rank);
  if (rank < sigma.dim())
    throw RankDeficient("T_v is not onto at radius " + std::to_string(k) +
                        "; is sigma irreducible and k >= k(sigma)?");
  const Vec coeffs = pinv * w;
  if ((a * coeffs - w).norm() > 1e-9)
    throw RankDeficient("synthesis residual exceeds 1e-9");
  std::map<int, cd> entries;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j)
    if (coeffs(j) != cd(0.0, 0.0)) entries[static_cast<int>(j)] = coeffs(j);
  return GroupRingElement(sigma.group(), std::move(entries));
}

SynthesisSystem recovery_constant(const UnitaryRep& sigma, const Vec& v,
                                  std::uint64_t seed, int global_samples,
                                  int ascent_steps) {
  require_unit(v, "v");
  SynthesisSystem sys;
  sys.cert = burnside_index(sigma);
  sys.v = v;
  const int d = sigma.dim();
  const int k = sys.cert.k_sigma;

  // Complete v to an orthonormal basis: v first, then standard basis vectors
  // in index order, dropping dependents (Gram-Schmidt, reorthogonalized).
  sys.basis.resize(d, d);
  sys.basis.col(0) = v;
  int have = 1;
  for (int i = 0; i < d && have < d; ++i) {
    Vec c = Vec::Zero(d);
    c(i) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      c -= sys.basis.leftCols(have) * (sys.basis.leftCols(have).adjoint() * c);
    if (c.norm() > 1e-6) sys.basis.col(have++) = c / c.norm();
  }
  if (have < d) throw NumericalDegeneracy("basis completion failed");

  sys.f.push_back(GroupRingElement::delta(sigma.group(), 0));
  sys.M = 1.0;
  for (int i = 1; i < d; ++i) {
    GroupRingElement fi = synthesis_solve(sigma, v, sys.basis.col(i), k);
    sys.M = std::max(sys.M, fi.l1_norm());
    sys.f.push_back(std::move(fi));
  }

  // Diagnostic global bounds on sup_{v'} ||U_{v'}||_{2->1}: row-2-norm-sum
  // upper bound per sample, alternating phase/vector ascent for a certified
  // lower bound; the input v is sample 0.
  const int samples = std::max(1, global_samples);
  double upper = 0.0, lower = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
    const Vec vv = s == 0 ? v : rng.unit_vector(d);
    const Mat a = synthesis_matrix(sigma, vv, k);
    const Mat pinv = pseudoinverse(a);
    double rowsum = 0.0;
    for (Eigen::Index r = 0; r < pinv.rows(); ++r) rowsum += pinv.row(r).norm();
    upper = std::max(upper, rowsum);

    Vec w = rng.unit_vector(d);
    double best = (pinv * w).lpNorm<1>();
    for (int step = 0; step < ascent_steps; ++step) {
      const Vec z = pinv * w;
      Vec theta(z.size());
      for (Eigen::Index j = 0; j < z.size(); ++j)
        theta(j) = std::abs(z(j)) > 1e-15 ? z(j) / std::abs(z(j)) : cd(1.0, 0.0);
      Vec w2 = pinv.adjoint() * theta;
      if (w2.norm() < 1e-15) break;
      w = w2 / w2.norm();
      best = std::max(best, (pinv * w).lpNorm<1>());
    }
    lower = std::max(lower, best);
  }
  sys.M_global_upper = upper;
  sys.M_global_lower = lower;
  return sys;
}

}  // namespace kazhdanlab
