#pragma once

// Builders for the concrete modules: the unipotent groups U_n and their
// symmetric powers, the GL2 test module, the three-dimensional G_a family,
// the finite torus and the G_a x G_a example, plus parametric invariance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullcone/actions.hpp"
#include "nullcone/invariants.hpp"

namespace nullcone {

/// Matrix whose entries are polynomials in `nparams` parameters. Acts on
/// coordinates by f -> f(M(params)^{-1} x), like act_on_poly.
struct ParametricAction {
  Field field;
  std::size_t nvars = 0;
  std::size_t nparams = 0;
  std::vector<std::string> param_names;
  std::vector<std::vector<Polynomial>> matrix;   // nvars x nvars, ring k[params]
  std::vector<std::vector<Polynomial>> inverse;  // checked: matrix * inverse = I

  Matrix specialize(const std::vector<Scalar>& params) const;
  Matrix specialize_inverse(const std::vector<Scalar>& params) const;
};

/// Throws std::logic_error unless matrix * inverse = I in k[params].
void verify_parametric_inverse(const ParametricAction& a);

struct GnModule {
  std::uint32_t p = 0, n = 0;
  Field field;  // F_{p^n}
  GroupPtr group;
  Representation rep;
  std::vector<Scalar> t;  // field elements, enumeration order
  std::vector<std::size_t> element_of;  // element_of[i]: group index of u_{t[i]}
};

/// u_t = [[1,t],[0,1]] for t in F_{p^n}.
Matrix unipotent(const Field& f, const Scalar& t);
GnModule gn_module(std::uint32_t p, std::uint32_t n);

struct VandermondeReport {
  std::uint32_t p = 0, n = 0;
  Matrix orbit_matrix;     // columns: coefficients of (Y + tX)^{q-1} in X^iY^{q-1-i}
  Matrix expected_matrix;  // ((-t)^i)
  Scalar determinant;
  bool matches_expected = false;
  bool nonsingular = false;
  bool free = false;
  bool transitive = false;
  bool action_law = false;               // u_g (seed * t) = seed * (g + t)
  bool permutation_basis_regular = false;  // permutation_basis() finds a regular basis
  bool ok() const { return matches_expected && nonsingular && free && transitive && action_law && permutation_basis_regular; }
};

VandermondeReport vandermonde_regular_check(std::uint32_t p, std::uint32_t n);

/// C(N, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint32_t p, std::uint64_t big_n, std::uint64_t k);

struct VaModule {
  std::uint32_t p = 0, n = 0, m = 0;
  GroupPtr group;  // U_m over F_{p^m}
  Representation rep;
  ParametricAction action;  // over F_p[t]
  std::vector<Polynomial> candidates;  // x0, x2 x0^{p^n-1} - x1^{p^n}, over F_{p^m}
};

/// u_t = [[1,0,0],[-t,1,0],[-t^{p^n},0,1]] for t in F_{p^m}.
VaModule va_module(std::uint32_t p, std::uint32_t n, std::uint32_t m);

struct Gl2Module {
  std::uint32_t p = 0, n = 0;
  GnModule base;
  Representation sym;  // S^{p^n-1}
  Representation hom;  // Hom(S, S) as a representation of the base group
  GroupPtr group;      // image of the base group in GL(Hom(S, S))
  std::vector<Scalar> identity;
};

Gl2Module gl2_test_module(std::uint32_t p, std::uint32_t n);

struct TorusModule {
  std::uint64_t q = 0;
  long long r = 0;
  std::uint32_t m = 0;
  Field field;
  GroupPtr group;
  Representation rep;
  std::vector<long long> weights;  // of the coordinates y0, Z
  long long modulus = 0;           // q - 1
  std::vector<Scalar> point;       // v0 + y0^m
  Polynomial invariant;            // y0^m Z
};

/// Cyclic group F_q^* acting on V + S^m(V^*) with V one-dimensional of
/// weight r. Rejects parameters where a nonzero weight of a monomial of
/// degree <= m can vanish mod q - 1 (WeightCollision).
TorusModule torus_module(std::uint64_t q, long long r, std::uint32_t m);

struct Ga2Example {
  ParametricAction action;             // over Q, parameters s, t
  ParametricAction h_action;           // the subgroup H = {(0, t)}, parameter t
  std::vector<Polynomial> candidates;  // x0, f
  std::vector<Polynomial> h_invariants;  // x0, x1, x0x3 - x2x1
  std::vector<Scalar> point;           // (0, 1, 0, 0)
};

Ga2Example ga2_example();
std::vector<std::vector<Scalar>> ga2_default_samples();

/// True iff f(M(params)^{-1} x) = f(x) identically in k[x, params]. The
/// coefficients of f may live in an extension of the action's field.
bool parametric_invariance_check(const ParametricAction& a, const Polynomial& f);

/// Common fixed space of the specializations at the sample points.
std::vector<Polynomial> sampled_fixed_space(const ParametricAction& a, const std::vector<std::vector<Scalar>>& samples,
                                            std::uint32_t d);

}  // namespace nullcone
