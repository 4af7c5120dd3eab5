#include "kazhdanlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace kazhdanlab {

namespace {

std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
  // (p*q)(i) = p(q(i)): apply q first.
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

std::vector<int> invert_perm(const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

void check_perm(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v])
      throw NonInvertibleGenerator("generator is not a permutation");
    seen[v] = 1;
  }
}

bool matrices_close(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

// Raw closure data handed to the table builder: elements in BFS discovery
// order, per-element product-by-generator indices, and the BFS tree.
struct ClosureData {
  int n = 0;
  int num_gens = 0;
  std::vector<int> gen_product;  // n x num_gens, row-major
  std::vector<int> bfs_parent;
  std::vector<int> bfs_gen;
  std::vector<int> word_length;
};

template <class Elem, class Mul, class Find, class Register>
ClosureData bfs_closure(const std::vector<Elem>& gens, std::vector<Elem>& elems,
                        Mul mul, Find find, Register on_insert, int cap) {
  ClosureData out;
  out.num_gens = static_cast<int>(gens.size());
  out.bfs_parent.push_back(-1);
  out.bfs_gen.push_back(-1);
  out.word_length.push_back(0);

  for (std::size_t idx = 0; idx < elems.size(); ++idx) {
    for (int j = 0; j < out.num_gens; ++j) {
      Elem prod = mul(elems[idx], gens[j]);
      int found = find(prod);
      if (found < 0) {
        if (static_cast<int>(elems.size()) >= cap)
          throw ClosureExceedsCap("generator closure exceeds the configured cap of " +
                                  std::to_string(cap) + " elements");
        found = static_cast<int>(elems.size());
        elems.push_back(std::move(prod));
        on_insert(elems.back(), found);
        out.bfs_parent.push_back(static_cast<int>(idx));
        out.bfs_gen.push_back(j);
        out.word_length.push_back(out.word_length[idx] + 1);
      }
      out.gen_product.push_back(found);
    }
  }
  out.n = static_cast<int>(elems.size());
  return out;
}

}  // namespace

class GroupBuilder {
 public:
  static GroupPtr finalize(std::string name, const ClosureData& c) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    const int n = c.n;
    g->name_ = std::move(name);
    g->order_ = n;
    g->bfs_parent_ = c.bfs_parent;
    g->bfs_gen_ = c.bfs_gen;
    g->word_length_ = c.word_length;

    // Multiplication table, column by column in BFS order:
    // a*b = (a*parent(b))*gen(b), and parent(b) < b.
    g->mult_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a) g->mult_[static_cast<std::size_t>(a) * n] = a;
    for (int b = 1; b < n; ++b) {
      const int pb = c.bfs_parent[b];
      const int j = c.bfs_gen[b];
      for (int a = 0; a < n; ++a) {
        const int apb = g->mult_[static_cast<std::size_t>(a) * n + pb];
        g->mult_[static_cast<std::size_t>(a) * n + b] =
            c.gen_product[static_cast<std::size_t>(apb) * c.num_gens + j];
      }
    }

    // Inverses.
    g->inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (g->mul(a, b) == 0) {
          g->inverse_[a] = b;
          break;
        }
      }
      if (g->inverse_[a] < 0 || g->mul(g->inverse_[a], a) != 0)
        throw Error("broken closure: element without two-sided inverse");
    }

    // Generating set as element indices: e*s_j.
    g->gen_set_.resize(c.num_gens);
    for (int j = 0; j < c.num_gens; ++j) g->gen_set_[j] = c.gen_product[j];
    if (g->gen_set_.empty() || g->gen_set_[0] != 0)
      throw Error("broken closure: identity not first in gen_set");
    for (int s : g->gen_set_) {
      if (std::find(g->gen_set_.begin(), g->gen_set_.end(), g->inv(s)) == g->gen_set_.end())
        throw AsymmetricGeneratingSet("generating set is not closed under inverses");
    }

    // Ball sizes per radius from BFS levels.
    g->diameter_ = *std::max_element(c.word_length.begin(), c.word_length.end());
    g->ball_sizes_.assign(g->diameter_ + 1, 0);
    for (int wl : c.word_length) g->ball_sizes_[wl] += 1;
    for (int k = 1; k <= g->diameter_; ++k) g->ball_sizes_[k] += g->ball_sizes_[k - 1];

    verify_axioms(*g);
    return g;
  }

 private:
  static void verify_axioms(const FiniteGroup& g) {
    const int n = g.order();
    for (int a = 0; a < n; ++a)
      if (g.mul(0, a) != a || g.mul(a, 0) != a)
        throw Error("broken closure: identity law fails");
    // Associativity: exhaustive for small orders, sampled plus generator
    // triples beyond that (n^3 at the 1e4 cap is out of reach).
    if (n <= 512) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int x = 0; x < n; ++x)
            if (g.mul(g.mul(a, b), x) != g.mul(a, g.mul(b, x)))
              throw Error("broken closure: associativity fails");
    } else {
      for (int a = 0; a < n; ++a)
        for (int s : g.gen_set())
          for (int t : g.gen_set())
            if (g.mul(g.mul(a, s), t) != g.mul(a, g.mul(s, t)))
              throw Error("broken closure: associativity fails");
      Rng rng(kDefaultSeed);
      for (int trial = 0; trial < 1000000; ++trial) {
        const int a = static_cast<int>(rng.below(n));
        const int b = static_cast<int>(rng.below(n));
        const int x = static_cast<int>(rng.below(n));
        if (g.mul(g.mul(a, b), x) != g.mul(a, g.mul(b, x)))
          throw Error("broken closure: associativity fails");
      }
    }
  }
};

int FiniteGroup::ball_size(int k) const {
  if (k < 0) throw ParameterOutOfRange("ball radius must be nonnegative");
  if (k >= diameter_) return order_;
  return ball_sizes_[k];
}

std::vector<int> ball(const FiniteGroup& g, int k) {
  std::vector<int> out(g.ball_size(k));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return true;
  if (a.order() != b.order() || a.gen_set() != b.gen_set()) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

namespace {

// Normalized generator list: identity first, then the given generators, then
// (with symmetrize) any missing inverses, duplicates removed.
template <class Elem, class Inv, class Eq>
std::vector<Elem> normalize_generators(const std::vector<Elem>& raw, const Elem& identity,
                                       Inv inv, Eq eq, bool symmetrize) {
  std::vector<Elem> gens;
  auto push_unique = [&](const Elem& e) {
    for (const Elem& have : gens)
      if (eq(have, e)) return;
    gens.push_back(e);
  };
  if (!symmetrize) {
    bool has_identity = false;
    for (const Elem& e : raw)
      if (eq(e, identity)) has_identity = true;
    if (!has_identity)
      throw AsymmetricGeneratingSet("generating set must contain the identity "
                                    "(pass symmetrize to add it)");
    for (const Elem& e : raw) {
      bool has_inv = false;
      const Elem ei = inv(e);
      for (const Elem& f : raw)
        if (eq(f, ei)) has_inv = true;
      if (!has_inv)
        throw AsymmetricGeneratingSet("generating set is not symmetric "
                                      "(pass symmetrize to add inverses)");
    }
  }
  push_unique(identity);
  for (const Elem& e : raw) push_unique(e);
  if (symmetrize)
    for (const Elem& e : raw) push_unique(inv(e));
  return gens;
}

GroupPtr build_permutation_group(std::string name, const std::vector<std::vector<int>>& raw,
                                 bool symmetrize, int cap) {
  if (raw.empty()) throw ConfigError("permutation group spec needs at least one generator");
  const std::size_t degree = raw.front().size();
  for (const auto& p : raw) {
    if (p.size() != degree)
      throw ConfigError("permutation generators act on different point counts");
    check_perm(p);
  }
  std::vector<int> identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<int>(i);

  auto eq = [](const std::vector<int>& a, const std::vector<int>& b) { return a == b; };
  std::vector<std::vector<int>> gens =
      normalize_generators(raw, identity, invert_perm, eq, symmetrize);

  std::vector<std::vector<int>> elems{identity};
  std::map<std::vector<int>, int> index;
  index[identity] = 0;
  auto find = [&](const std::vector<int>& p) {
    auto it = index.find(p);
    return it == index.end() ? -1 : it->second;
  };
  auto on_insert = [&](const std::vector<int>& p, int idx) { index[p] = idx; };
  auto mul = [](const std::vector<int>& a, const std::vector<int>& b) {
    return compose_perm(a, b);
  };
  ClosureData data = bfs_closure(gens, elems, mul, find, on_insert, cap);
  return GroupBuilder::finalize(std::move(name), data);
}

}  // namespace

GroupPtr build_group(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: {
      if (spec.n < 1) throw ParameterOutOfRange("cyclic group needs n >= 1");
      std::vector<int> rot(spec.n);
      for (int i = 0; i < spec.n; ++i) rot[i] = (i + 1) % spec.n;
      GroupSpec s;
      s.name = spec.name.empty() ? "Z" + std::to_string(spec.n) : spec.name;
      s.kind = GroupSpec::Kind::permutation;
      s.generators = {rot};
      s.symmetrize = true;
      s.closure_cap = spec.closure_cap;
      return build_group(s);
    }
    case GroupSpec::Kind::dihedral: {
      if (spec.n < 2) throw ParameterOutOfRange("dihedral group needs n >= 2");
      GroupSpec s;
      s.name = spec.name.empty() ? "D" + std::to_string(spec.n) : spec.name;
      s.kind = GroupSpec::Kind::permutation;
      if (spec.n == 2) {
        // Klein four group; need four points for a faithful action.
        s.generators = {{1, 0, 2, 3}, {0, 1, 3, 2}};
      } else {
        std::vector<int> rot(spec.n), refl(spec.n);
        for (int i = 0; i < spec.n; ++i) {
          rot[i] = (i + 1) % spec.n;
          refl[i] = (spec.n - i) % spec.n;
        }
        s.generators = {rot, refl};
      }
      s.symmetrize = true;
      s.closure_cap = spec.closure_cap;
      return build_group(s);
    }
    case GroupSpec::Kind::builtin:
      return builtin_group(spec.name);
    case GroupSpec::Kind::permutation:
      return build_permutation_group(spec.name.empty() ? "G" : spec.name, spec.generators,
                                     spec.symmetrize, spec.closure_cap);
  }
  throw ConfigError("unknown group spec kind");
}

MatrixGroup build_matrix_group(std::string name, const std::vector<Mat>& raw,
                               bool symmetrize, int cap) {
  if (raw.empty()) throw ConfigError("matrix group needs at least one generator");
  const Eigen::Index d = raw.front().rows();
  for (const Mat& m : raw) {
    if (m.rows() != d || m.cols() != d)
      throw ConfigError("matrix generators must be square of equal size");
    if ((m.adjoint() * m - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
      throw NonInvertibleGenerator("matrix generator is not unitary within 1e-9");
  }
  const Mat identity = Mat::Identity(d, d);
  auto inv = [](const Mat& m) { return Mat(m.adjoint()); };
  std::vector<Mat> gens = normalize_generators(raw, identity, inv, matrices_close, symmetrize);

  std::vector<Mat> elems{identity};
  auto find = [&](const Mat& m) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (matrices_close(elems[i], m)) return static_cast<int>(i);
    return -1;
  };
  auto mul = [](const Mat& a, const Mat& b) { return Mat(a * b); };
  auto on_insert = [](const Mat&, int) {};
  ClosureData data = bfs_closure(gens, elems, mul, find, on_insert, cap);

  MatrixGroup out;
  out.group = GroupBuilder::finalize(std::move(name), data);
  out.matrices = std::move(elems);
  return out;
}

int MatrixGroup::find(const Mat& m) const {
  for (std::size_t i = 0; i < matrices.size(); ++i)
    if (matrices_close(matrices[i], m)) return static_cast<int>(i);
  return -1;
}

GroupRingElement::GroupRingElement(GroupPtr g, std::map<int, cd> coefficients)
    : group_(std::move(g)) {
  for (auto& [elem, c] : coefficients) {
    if (elem < 0 || elem >= group_->order())
      throw ParameterOutOfRange("group ring coefficient outside the element set");
    if (c != cd(0.0, 0.0)) coeffs_.emplace(elem, c);
  }
  for (const auto& [elem, c] : coeffs_) l1_norm_ += std::abs(c);
}

GroupRingElement GroupRingElement::zero(GroupPtr g) {
  return GroupRingElement(std::move(g), {});
}

GroupRingElement GroupRingElement::delta(GroupPtr g, int element) {
  return GroupRingElement(std::move(g), {{element, cd(1.0, 0.0)}});
}

cd GroupRingElement::at(int g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? cd(0.0, 0.0) : it->second;
}

int GroupRingElement::support_radius() const {
  int r = 0;
  for (const auto& [elem, c] : coeffs_) r = std::max(r, group_->word_length(elem));
  return r;
}

GroupRingElement convolve(const GroupRingElement& f, const GroupRingElement& h) {
  if (!same_group(*f.group(), *h.group()))
    throw GroupMismatch("convolution of elements over different groups");
  std::map<int, cd> out;
  for (const auto& [a, fa] : f.coefficients())
    for (const auto& [b, hb] : h.coefficients())
      out[f.group()->mul(a, b)] += fa * hb;
  return GroupRingElement(f.group(), std::move(out));
}

bool ring_support_check(const GroupRingElement& f, int k) {
  if (k < 0) throw ParameterOutOfRange("ball radius must be nonnegative");
  return f.support_radius() <= k;
}

}  // namespace kazhdanlab
