#include <algorithm>
#include <cmath>
#include <numbers>

#include "kazhdanlab/rep.hpp"

namespace kazhdanlab {

namespace {

// <chi, chi> = sum of squared multiplicities; 1 iff irreducible. Exact for
// finite groups, so the recursion uses it instead of the commutant SVD.
double character_self_inner(const UnitaryRep& rep) {
  const int n = rep.group()->order();
  double s = 0.0;
  for (const cd& c : rep.character()) s += std::norm(c);
  return s / n;
}

bool char_irreducible(const UnitaryRep& rep) {
  return std::abs(character_self_inner(rep) - 1.0) < 1e-6;
}

struct Leaf {
  UnitaryRep rep;
  Mat isometry;  // pi(g) W = W rep(g)
};

void split_recursive(const UnitaryRep& rep, const Mat& iso, Rng& rng,
                     std::vector<Leaf>& leaves) {
  if (rep.dim() == 0) return;
  if (char_irreducible(rep)) {
    leaves.push_back({rep, iso});
    return;
  }
  const int d = rep.dim();
  const int n = rep.group()->order();
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Mat h = rng.hermitian(d);
    Mat avg = Mat::Zero(d, d);
    for (int g = 0; g < n; ++g) avg += rep.matrix(g) * h * rep.matrix(g).adjoint();
    avg /= static_cast<double>(n);
    avg = 0.5 * (avg + Mat(avg.adjoint()));
    Eigen::SelfAdjointEigenSolver<Mat> es(avg);
    const auto& ev = es.eigenvalues();
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i < d; ++i) {
      if (ev(i) - ev(i - 1) > 1e-8) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    clusters.emplace_back(begin, d);
    if (clusters.size() < 2) continue;
    for (auto [b, e] : clusters) {
      const Mat v = es.eigenvectors().middleCols(b, e - b);
      std::vector<Mat> sub(n);
      for (int g = 0; g < n; ++g)
        sub[g] = polar_unitary(v.adjoint() * rep.matrix(g) * v);
      UnitaryRep subrep = UnitaryRep::from_matrices(rep.group(), std::move(sub), false);
      split_recursive(subrep, Mat(iso * v), rng, leaves);
    }
    return;
  }
  throw NumericalDegeneracy("no commutant eigenvalue gap above 1e-8 after 5 reseeds");
}

// Canonical order: dimension, then character entries compared at 1e-6
// resolution (real descending, then imaginary descending), element by
// element. The trivial representation sorts first.
bool canonical_less(const UnitaryRep& a, const UnitaryRep& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto ca = a.character();
  const auto cb = b.character();
  for (std::size_t g = 0; g < ca.size(); ++g) {
    const long ra = std::lround(ca[g].real() * 1e6);
    const long rb = std::lround(cb[g].real() * 1e6);
    if (ra != rb) return ra > rb;
    const long ia = std::lround(ca[g].imag() * 1e6);
    const long ib = std::lround(cb[g].imag() * 1e6);
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

std::optional<Mat> equivalent(const UnitaryRep& sigma1, const UnitaryRep& sigma2,
                              std::uint64_t seed) {
  if (!same_group(*sigma1.group(), *sigma2.group()))
    throw GroupMismatch("equivalent over different groups");
  if (sigma1.dim() != sigma2.dim()) return std::nullopt;
  if (character_distance(sigma1, sigma2) >= 1e-8) return std::nullopt;
  const int d = sigma1.dim();
  const int n = sigma1.group()->order();
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Mat a = rng.gaussian_matrix(d, d);
    Mat t = Mat::Zero(d, d);
    for (int g = 0; g < n; ++g) t += sigma1.matrix(g) * a * sigma2.matrix(g).adjoint();
    t /= static_cast<double>(n);
    if (t.norm() < 1e-8) continue;  // unlucky draw
    const Mat u = polar_unitary(t);
    double res = 0.0;
    for (int s : sigma1.group()->gen_set())
      res = std::max(res,
                     (u * sigma2.matrix(s) - sigma1.matrix(s) * u).cwiseAbs().maxCoeff());
    if (res < 1e-8) return u;
  }
  throw NumericalDegeneracy("failed to build an intertwiner for character-equal irreps");
}

DecompositionCertificate decompose_irreps(const UnitaryRep& pi, std::uint64_t seed) {
  if (pi.dim() > 4096)
    throw DimensionCap("decompose_irreps limited to dimension 4096");
  Rng rng(seed);
  std::vector<Leaf> leaves;
  split_recursive(pi, Mat::Identity(pi.dim(), pi.dim()), rng, leaves);

  struct Build {
    UnitaryRep rep;
    std::vector<Mat> copies;
  };
  std::vector<Build> builds;
  for (const Leaf& leaf : leaves) {
    bool merged = false;
    for (Build& b : builds) {
      if (leaf.rep.dim() != b.rep.dim()) continue;
      if (character_distance(leaf.rep, b.rep) >= 1e-8) continue;
      auto u = equivalent(leaf.rep, b.rep, rng.bits());
      if (!u)
        throw NumericalDegeneracy("character-equal leaves failed to intertwine");
      b.copies.push_back(Mat(leaf.isometry * *u));
      merged = true;
      break;
    }
    if (!merged) builds.push_back({leaf.rep, {leaf.isometry}});
  }

  std::sort(builds.begin(), builds.end(),
            [](const Build& a, const Build& b) { return canonical_less(a.rep, b.rep); });

  DecompositionCertificate cert;
  cert.seed = seed;
  for (Build& b : builds) {
    DecompositionComponent comp;
    comp.multiplicity = static_cast<int>(b.copies.size());
    comp.isometry.resize(pi.dim(), static_cast<Eigen::Index>(b.rep.dim()) * comp.multiplicity);
    for (std::size_t c = 0; c < b.copies.size(); ++c)
      comp.isometry.middleCols(static_cast<Eigen::Index>(c) * b.rep.dim(), b.rep.dim()) =
          b.copies[c];
    comp.irrep = std::move(b.rep);
    cert.components.push_back(std::move(comp));
  }

  if (cert.total_dim() != pi.dim())
    throw NumericalDegeneracy("decomposition dimensions do not sum to dim pi");

  if (pi.dim() > 0) {
    Mat u(pi.dim(), pi.dim());
    Eigen::Index off = 0;
    std::vector<std::pair<UnitaryRep, int>> parts;
    for (const auto& comp : cert.components) {
      u.middleCols(off, comp.isometry.cols()) = comp.isometry;
      off += comp.isometry.cols();
      parts.emplace_back(comp.irrep, comp.multiplicity);
    }
    const UnitaryRep ds = direct_sum(parts);
    const int n = pi.group()->order();
    double res = (u.adjoint() * u - Mat::Identity(pi.dim(), pi.dim())).cwiseAbs().maxCoeff();
    for (int g = 0; g < n; ++g)
      res = std::max(res,
                     (u.adjoint() * pi.matrix(g) * u - ds.matrix(g)).cwiseAbs().maxCoeff());
    cert.residual = res;
  }
  return cert;
}

namespace {

int element_of_order(const FiniteGroup& g, int target) {
  for (int x = 1; x < g.order(); ++x) {
    int ord = 1;
    int cur = x;
    while (cur != 0) {
      cur = g.mul(cur, x);
      ++ord;
    }
    if (ord == target) return x;
  }
  return -1;
}

bool all_close_to(const std::vector<cd>& chi, const cd& value, double tol) {
  for (const cd& c : chi)
    if (std::abs(c - value) > tol) return false;
  return true;
}

}  // namespace

int IrrepTable::index_of(const std::string& name_or_alias) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name_or_alias) return static_cast<int>(i);
    for (const auto& a : aliases[i])
      if (a == name_or_alias) return static_cast<int>(i);
  }
  return -1;
}

const UnitaryRep& IrrepTable::at(const std::string& name_or_alias) const {
  const int i = index_of(name_or_alias);
  if (i < 0) throw ConfigError("unknown irrep '" + name_or_alias + "'");
  return irreps[i];
}

IrrepTable irrep_table(GroupPtr group, std::uint64_t seed) {
  const auto cert = decompose_irreps(regular_rep(group), seed);
  IrrepTable table;
  table.group = group;
  table.seed = seed;
  for (const auto& comp : cert.components) {
    // Peter-Weyl: multiplicity in the regular rep equals the dimension.
    if (comp.multiplicity != comp.irrep.dim())
      throw NumericalDegeneracy("regular rep multiplicity != dimension");
    table.irreps.push_back(comp.irrep);
  }
  table.names.resize(table.irreps.size());
  table.aliases.resize(table.irreps.size());
  for (std::size_t i = 0; i < table.irreps.size(); ++i)
    table.names[i] = "irr" + std::to_string(i);

  const int n = group->order();
  int sign_candidates = 0, sign_index = -1;
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    const auto chi = table.irreps[i].character();
    if (table.irreps[i].dim() == 1 && all_close_to(chi, cd(1.0, 0.0), 1e-8)) {
      table.aliases[i].push_back("trivial");
      table.aliases[i].push_back("triv");
      continue;
    }
    if (table.irreps[i].dim() == 1) {
      bool pm_one = true;
      bool nontrivial = false;
      for (const cd& c : chi) {
        if (std::abs(c.imag()) > 1e-8 ||
            std::abs(std::abs(c.real()) - 1.0) > 1e-8)
          pm_one = false;
        if (std::abs(c - cd(1.0, 0.0)) > 1e-8) nontrivial = true;
      }
      if (pm_one && nontrivial) {
        ++sign_candidates;
        sign_index = static_cast<int>(i);
      }
    }
  }
  if (sign_candidates == 1) table.aliases[sign_index].push_back("sign");

  // Cyclic groups: chi_k named by the character value at a generator of
  // maximal order.
  const int gen = element_of_order(*group, n);
  if (gen >= 0 && n > 1) {
    for (std::size_t i = 0; i < table.irreps.size(); ++i) {
      const cd val = table.irreps[i].character()[gen];
      const double angle = std::arg(val);
      int k = static_cast<int>(std::lround(angle * n / (2.0 * std::numbers::pi)));
      k = ((k % n) + n) % n;
      table.aliases[i].push_back("chi" + std::to_string(k));
    }
  }

  // The symmetric group on three letters: alias its unique 2-dim irrep.
  if (n == 6) {
    int two_dim = -1, count = 0;
    for (std::size_t i = 0; i < table.irreps.size(); ++i)
      if (table.irreps[i].dim() == 2) {
        two_dim = static_cast<int>(i);
        ++count;
      }
    if (count == 1 && table.irreps.size() == 3)
      table.aliases[two_dim].push_back("std");
  }
  return table;
}

}  // namespace kazhdanlab
