#pragma once

// Finite matrix groups (closure of generators), the action on polynomial
// functions (g.f)(v) = f(g^{-1} v), and derived representations.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nullcone/linalg.hpp"
#include "nullcone/poly.hpp"

namespace nullcone {

inline constexpr std::size_t kDefaultGroupCap = 1000000;

class MatrixGroup {
 public:
  const Field& field() const { return field_; }
  std::size_t dimension() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Element indices of the generators (in the order given).
  const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& element(std::size_t i) const { return elements_.at(i); }
  std::size_t identity_index() const { return 0; }

  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inv_.at(i); }
  std::optional<std::size_t> find(const Matrix& m) const;
  std::size_t element_order(std::size_t i) const;

 private:
  friend std::shared_ptr<const MatrixGroup> group_closure(const std::vector<Matrix>&, std::size_t);
  MatrixGroup() = default;

  Field field_;
  std::size_t dim_ = 0;
  std::vector<Matrix> generators_;
  std::vector<std::size_t> gen_idx_;
  std::vector<Matrix> elements_;
  std::map<Matrix, std::size_t> index_;
  std::vector<std::size_t> inv_;
  std::vector<std::uint32_t> table_;  // |G|^2 products for small groups
};

using GroupPtr = std::shared_ptr<const MatrixGroup>;

/// Breadth-first closure from the identity, multiplying each element on the
/// right by the generators in the given order. Over Q the cap is further
/// limited by Minkowski's bound on finite subgroups of GL_n(Q).
GroupPtr group_closure(const std::vector<Matrix>& gens, std::size_t cap = kDefaultGroupCap);

/// Largest order of a finite subgroup of GL_n(Q) (saturating).
std::size_t minkowski_bound(std::size_t n);

class Representation {
 public:
  Representation() = default;
  Representation(GroupPtr g, std::vector<Matrix> mats);
  static Representation natural(GroupPtr g);

  const GroupPtr& group() const { return group_; }
  const Field& field() const { return group_->field(); }
  std::size_t dimension() const { return dim_; }
  const Matrix& matrix(std::size_t element) const { return mats_.at(element); }
  const std::vector<Matrix>& matrices() const { return mats_; }

  /// Seed vector offered to permutation_basis (sym-power modules set it to
  /// the pure power of the last basis vector).
  const std::optional<std::vector<Scalar>>& designated_seed() const { return seed_; }
  Representation with_seed(std::vector<Scalar> seed) const;

  /// rho(gh) = rho(g) rho(h) for all pairs and rho(1) = I.
  bool is_homomorphism() const;

 private:
  GroupPtr group_;
  std::size_t dim_ = 0;
  std::vector<Matrix> mats_;
  std::optional<std::vector<Scalar>> seed_;
};

/// substitute_linear(f, g^{-1}).
Polynomial act_on_poly(const MatrixGroup& g, std::size_t element, const Polynomial& f);

Representation dual_rep(const Representation& r);
/// Action on degree-m forms in the basis vectors e_0..e_{n-1} of R, on the
/// basis mono_basis(n, m): e_i -> rho(g) e_i.
Representation sym_power_rep(const Representation& r, std::uint32_t m);
/// Hom(R, S) with A -> rho_S(g) A rho_R(g)^{-1}; coordinates are the
/// row-major vectorization of the dim S x dim R matrix A, i.e. the matrix
/// is kron(rho_S(g), rho_R(g)^{-T}).
Representation hom_rep(const Representation& r, const Representation& s);
Representation regular_rep(const GroupPtr& g);
/// Row-major vectorization of the identity map of an n-dim module.
std::vector<Scalar> vectorized_identity(const Field& f, std::size_t n);

struct PermutationBasis {
  Matrix basis;  // columns are the basis vectors
  std::vector<std::vector<std::size_t>> action;  // action[g][k]: index of rho(g) b_k
  std::vector<std::size_t> seeds;  // index of the first vector of each orbit
};

std::optional<PermutationBasis> permutation_basis(const Representation& r);

/// The group of matrices rho(G), closed from the images of the generators.
GroupPtr image_group(const Representation& r);

}  // namespace nullcone
