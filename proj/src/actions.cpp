#include "nullcone/actions.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "detail/field_data.hpp"
#include "detail/monomial_table.hpp"

namespace nullcone {

namespace {

constexpr std::size_t kTableLimit = 512;
constexpr std::size_t kSeedSearchNodes = 100000;

std::vector<Scalar> column(const Matrix& m, std::size_t j) {
  std::vector<Scalar> v;
  v.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, j));
  return v;
}

bool less_vec(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct VecLess {
  bool operator()(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const { return less_vec(a, b); }
};

}  // namespace

std::size_t minkowski_bound(std::size_t n) {
  if (n == 0) return 1;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t bound = 1;
  auto mul_sat = [&](std::size_t f) {
    if (bound > kMax / f) bound = kMax;
    else bound *= f;
  };
  for (std::size_t p = 2; p <= n + 1; ++p) {
    if (!is_prime(p)) continue;
    std::size_t a = 0;
    if (p == 2) {
      for (std::size_t k = 1; (n >> (k - 1)) > 0; ++k) a += n >> (k - 1);
    } else {
      for (std::size_t pk = 1; n / (pk * (p - 1)) > 0; pk *= p) a += n / (pk * (p - 1));
    }
    for (std::size_t i = 0; i < a; ++i) mul_sat(p);
  }
  return bound;
}

GroupPtr group_closure(const std::vector<Matrix>& gens, std::size_t cap) {
  if (gens.empty()) raise(ErrorCode::DimensionMismatch, "need at least one generator (use the identity for the trivial group)");
  const Field f = gens[0].field();
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens) {
    if (g.field() != f) raise(ErrorCode::ContextMismatch, "generators over different fields");
    if (!g.is_square() || g.rows() != n) raise(ErrorCode::DimensionMismatch, "generators must be square of one size");
    if (determinant(g).is_zero()) raise(ErrorCode::NotInvertible, "singular generator " + g.str());
  }
  if (f.is_rational()) cap = std::min(cap, minkowski_bound(n));

  std::shared_ptr<MatrixGroup> grp(new MatrixGroup());
  grp->field_ = f;
  grp->dim_ = n;
  grp->generators_ = gens;
  auto add = [&](Matrix m) {
    auto [it, inserted] = grp->index_.emplace(m, grp->elements_.size());
    if (inserted) {
      if (grp->elements_.size() >= cap) {
        raise(ErrorCode::CapExceeded, "group order exceeds " + std::to_string(cap));
      }
      grp->elements_.push_back(std::move(m));
    }
    return it->second;
  };
  add(Matrix::identity(f, n));
  for (std::size_t head = 0; head < grp->elements_.size(); ++head) {
    for (const auto& g : gens) {
      Matrix prod = grp->elements_[head] * g;
      add(std::move(prod));
    }
  }
  for (const auto& g : gens) grp->gen_idx_.push_back(grp->index_.at(g));

  const std::size_t order = grp->elements_.size();
  if (order <= kTableLimit) {
    grp->table_.resize(order * order);
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = 0; j < order; ++j) {
        grp->table_[i * order + j] = static_cast<std::uint32_t>(grp->index_.at(grp->elements_[i] * grp->elements_[j]));
      }
    }
  }
  grp->inv_.assign(order, 0);
  for (std::size_t i = 0; i < order; ++i) {
    if (!grp->table_.empty()) {
      for (std::size_t j = 0; j < order; ++j) {
        if (grp->table_[i * order + j] == 0) {
          grp->inv_[i] = j;
          break;
        }
      }
    } else {
      grp->inv_[i] = grp->index_.at(inverse(grp->elements_[i]));
    }
  }
  return grp;
}

std::size_t MatrixGroup::multiply(std::size_t i, std::size_t j) const {
  const std::size_t n = elements_.size();
  if (i >= n || j >= n) raise(ErrorCode::BadParameter, "element index out of range");
  if (!table_.empty()) return table_[i * n + j];
  return index_.at(elements_[i] * elements_[j]);
}

std::optional<std::size_t> MatrixGroup::find(const Matrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MatrixGroup::element_order(std::size_t i) const {
  std::size_t k = 1;
  std::size_t x = i;
  while (x != 0) {
    x = multiply(x, i);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------

Representation::Representation(GroupPtr g, std::vector<Matrix> mats) : group_(std::move(g)), mats_(std::move(mats)) {
  if (!group_) raise(ErrorCode::BadParameter, "null group");
  if (mats_.size() != group_->order()) raise(ErrorCode::DimensionMismatch, "need one matrix per group element");
  dim_ = mats_.empty() ? 0 : mats_[0].rows();
  for (const auto& m : mats_) {
    if (m.field() != group_->field()) raise(ErrorCode::ContextMismatch, "representation over another field");
    if (!m.is_square() || m.rows() != dim_) raise(ErrorCode::DimensionMismatch, "representation matrices must share a size");
  }
}

Representation Representation::natural(GroupPtr g) {
  std::vector<Matrix> mats = g->elements();
  return Representation(std::move(g), std::move(mats));
}

Representation Representation::with_seed(std::vector<Scalar> seed) const {
  if (seed.size() != dim_) raise(ErrorCode::DimensionMismatch, "seed has wrong length");
  Representation r = *this;
  r.seed_ = std::move(seed);
  return r;
}

bool Representation::is_homomorphism() const {
  const auto& G = *group_;
  if (!mats_[G.identity_index()].is_identity()) return false;
  for (std::size_t i = 0; i < G.order(); ++i) {
    for (std::size_t j = 0; j < G.order(); ++j) {
      if (mats_[G.multiply(i, j)] != mats_[i] * mats_[j]) return false;
    }
  }
  return true;
}

Polynomial act_on_poly(const MatrixGroup& g, std::size_t element, const Polynomial& f) {
  if (f.nvars() != g.dimension()) raise(ErrorCode::DimensionMismatch, "polynomial ring does not match the module");
  return f.substitute_linear(g.element(g.inverse(element)));
}

Representation dual_rep(const Representation& r) {
  const auto& G = *r.group();
  std::vector<Matrix> mats;
  mats.reserve(G.order());
  for (std::size_t i = 0; i < G.order(); ++i) mats.push_back(r.matrix(G.inverse(i)).transpose());
  return Representation(r.group(), std::move(mats));
}

Representation sym_power_rep(const Representation& r, std::uint32_t m) {
  const Field& f = r.field();
  const std::size_t n = r.dimension();
  detail::MonomialTable tab(n, m);
  const std::size_t dim = tab.count(m);
  std::vector<Matrix> mats;
  mats.reserve(r.matrices().size());
  detail::visit_domain(f, [&](auto dom) {
    using T = typename decltype(dom)::value_type;
    for (const auto& g : r.matrices()) {
      // e_i -> sum_k g(k,i) e_k, i.e. substitution by the transpose.
      std::vector<T> b(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) b[i * n + k] = dom.unwrap(g(k, i));
      }
      auto cols = detail::substitution_matrix(dom, tab, m, b);
      Matrix out(f, dim, dim);
      for (std::size_t col = 0; col < dim; ++col) {
        for (std::size_t row = 0; row < dim; ++row) {
          const T& x = cols[col * dim + row];
          if (!dom.is_zero(x)) out(row, col) = dom.wrap(f, x);
        }
      }
      mats.push_back(std::move(out));
    }
  });
  Representation out(r.group(), std::move(mats));
  std::vector<Scalar> seed(dim, Scalar::zero(f));
  seed[dim - 1] = Scalar::one(f);
  return out.with_seed(std::move(seed));
}

Representation hom_rep(const Representation& r, const Representation& s) {
  if (r.group() != s.group()) raise(ErrorCode::GroupMismatch, "Hom needs two modules of the same group");
  const auto& G = *r.group();
  std::vector<Matrix> mats;
  mats.reserve(G.order());
  for (std::size_t i = 0; i < G.order(); ++i) {
    mats.push_back(kron(s.matrix(i), r.matrix(G.inverse(i)).transpose()));
  }
  return Representation(r.group(), std::move(mats));
}

Representation regular_rep(const GroupPtr& g) {
  const std::size_t n = g->order();
  const Field& f = g->field();
  std::vector<Matrix> mats;
  mats.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix m(f, n, n);
    for (std::size_t h = 0; h < n; ++h) m(g->multiply(a, h), h) = Scalar::one(f);
    mats.push_back(std::move(m));
  }
  return Representation(g, std::move(mats));
}

std::vector<Scalar> vectorized_identity(const Field& f, std::size_t n) {
  std::vector<Scalar> v(n * n, Scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = Scalar::one(f);
  return v;
}

std::optional<PermutationBasis> permutation_basis(const Representation& r) {
  const auto& G = *r.group();
  const std::size_t n = r.dimension();
  const Field& f = r.field();

  auto action_for = [&](const std::vector<std::vector<Scalar>>& vecs) {
    std::map<std::vector<Scalar>, std::size_t, VecLess> where;
    for (std::size_t k = 0; k < vecs.size(); ++k) where.emplace(vecs[k], k);
    std::vector<std::vector<std::size_t>> action(G.order(), std::vector<std::size_t>(vecs.size()));
    for (std::size_t g = 0; g < G.order(); ++g) {
      for (std::size_t k = 0; k < vecs.size(); ++k) action[g][k] = where.at(r.matrix(g) * vecs[k]);
    }
    return action;
  };

  if (std::all_of(r.matrices().begin(), r.matrices().end(), is_permutation_matrix)) {
    PermutationBasis pb{Matrix::identity(f, n), {}, {}};
    std::vector<std::vector<Scalar>> vecs;
    for (std::size_t k = 0; k < n; ++k) vecs.push_back(column(pb.basis, k));
    pb.action = action_for(vecs);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      if (seen[k]) continue;
      pb.seeds.push_back(k);
      for (std::size_t g = 0; g < G.order(); ++g) seen[pb.action[g][k]] = true;
    }
    return pb;
  }

  // Seed pool: standard basis vectors, then the designated seed.
  std::vector<std::vector<Scalar>> pool;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Scalar> e(n, Scalar::zero(f));
    e[k] = Scalar::one(f);
    pool.push_back(std::move(e));
  }
  if (r.designated_seed() && std::find(pool.begin(), pool.end(), *r.designated_seed()) == pool.end()) {
    pool.push_back(*r.designated_seed());
  }
  std::vector<std::vector<std::vector<Scalar>>> orbits;
  for (const auto& s : pool) {
    std::vector<std::vector<Scalar>> orbit;
    std::map<std::vector<Scalar>, bool, VecLess> seen;
    for (std::size_t g = 0; g < G.order(); ++g) {
      auto img = r.matrix(g) * s;
      if (seen.emplace(img, true).second) orbit.push_back(std::move(img));
    }
    orbits.push_back(std::move(orbit));
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return orbits[a].size() > orbits[b].size(); });

  // Depth-first search over seed subsets whose orbits are jointly independent.
  std::vector<std::vector<Scalar>> chosen;
  std::vector<std::size_t> seeds;
  std::size_t nodes = 0;
  auto independent = [&](const std::vector<std::vector<Scalar>>& vecs) {
    Matrix m(f, vecs.size(), n);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = vecs[i][j];
    }
    return rank(m) == vecs.size();
  };
  auto dfs = [&](auto&& self, std::size_t start) -> bool {
    if (chosen.size() == n) return true;
    if (++nodes > kSeedSearchNodes) return false;
    for (std::size_t oi = start; oi < order.size(); ++oi) {
      const auto& orbit = orbits[order[oi]];
      if (chosen.size() + orbit.size() > n) continue;
      auto trial = chosen;
      trial.insert(trial.end(), orbit.begin(), orbit.end());
      if (!independent(trial)) continue;
      const std::size_t before = chosen.size();
      chosen = std::move(trial);
      seeds.push_back(before);
      if (self(self, oi + 1)) return true;
      chosen.resize(before);
      seeds.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;

  PermutationBasis pb{Matrix(f, n, n), action_for(chosen), seeds};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) pb.basis(i, k) = chosen[k][i];
  }
  return pb;
}

GroupPtr image_group(const Representation& r) {
  const auto& G = *r.group();
  std::vector<Matrix> gens;
  for (auto gi : G.generator_indices()) gens.push_back(r.matrix(gi));
  return group_closure(gens);
}

}  // namespace nullcone
