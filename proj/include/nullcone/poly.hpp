#pragma once

// Sparse multivariate polynomials in x0..x_{n-1} over a Field.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nullcone/linalg.hpp"
#include "nullcone/scalars.hpp"

namespace nullcone {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<std::uint32_t>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t degree() const { return deg_; }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

  /// "x0^2*x1"; the empty product prints as "1".
  std::string str() const;

 private:
  std::vector<std::uint32_t> e_;
  std::uint32_t deg_ = 0;
};

/// Graded-lex: higher degree first, then larger exponent of x0, then x1, ...
/// Sorting with this comparator yields x0^d first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.exponents() > b.exponents();
  }
};

/// All degree-d monomials in nvars variables, graded-lex order.
std::vector<Monomial> mono_basis(std::size_t nvars, std::uint32_t d);
/// Number of degree-d monomials in nvars variables.
std::size_t mono_count(std::size_t nvars, std::uint32_t d);
/// Position of m inside mono_basis(m.nvars(), m.degree()).
std::size_t mono_rank(const Monomial& m);

class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLexGreater>;

  Polynomial() = default;
  Polynomial(const Field& f, std::size_t nvars) : field_(f), nvars_(nvars) {}
  static Polynomial constant(const Field& f, std::size_t nvars, const Scalar& c);
  static Polynomial variable(const Field& f, std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Field& f, const Monomial& m, const Scalar& c);
  static Polynomial monomial(const Field& f, const Monomial& m) { return monomial(f, m, Scalar::one(f)); }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(const Monomial& m) const;
  /// Leading term in graded-lex order; requires nonzero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }

  void add_term(const Monomial& m, const Scalar& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial scale(const Scalar& c) const;
  Polynomial pow(unsigned e) const;

  Scalar eval(const std::vector<Scalar>& point) const;
  /// x_i -> sum_j M(i,j) x_j.
  Polynomial substitute_linear(const Matrix& m) const;
  /// x_i -> images[i]; images may live in more variables.
  Polynomial compose(const std::vector<Polynomial>& images) const;
  Polynomial homogeneous_component(std::uint32_t d) const;
  /// Coefficients against mono_basis(nvars, d).
  std::vector<Scalar> coefficient_vector(std::uint32_t d) const;
  static Polynomial from_coefficient_vector(const Field& f, std::size_t nvars, std::uint32_t d,
                                            const std::vector<Scalar>& coeffs);
  /// Coefficients pushed through a field embedding.
  Polynomial map_coefficients(const FieldEmbedding& emb) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Terms in graded-lex order joined by " + ". Extension-field coefficients
  /// other than 1 are parenthesised: "(z+1)*x0".
  std::string str() const;
  /// Accepts the printed form plus '-' between terms and bare integers as
  /// coefficients. nvars = 0 infers one more than the largest index seen.
  static Polynomial parse(const Field& f, std::string_view text, std::size_t nvars = 0);

 private:
  void require_compatible(const Polynomial& o) const;

  Field field_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

Scalar poly_eval(const Polynomial& f, const std::vector<Scalar>& point);
Polynomial poly_substitute_linear(const Polynomial& f, const Matrix& m);

}  // namespace nullcone
