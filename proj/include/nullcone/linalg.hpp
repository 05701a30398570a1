#pragma once

// Small dense matrices of Scalars. Large eliminations go through the
// code-level engines in src/detail/echelon.hpp instead.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nullcone/scalars.hpp"

namespace nullcone {

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows);
  /// "1,1;0,1": rows split on ';', entries on ','.
  static Matrix parse(const Field& f, std::string_view text);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  std::vector<Scalar> operator*(const std::vector<Scalar>& v) const;
  Matrix transpose() const;
  bool is_identity() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  /// Lexicographic on entries; used to key element lookups.
  friend bool operator<(const Matrix& a, const Matrix& b);

  std::string str() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

Scalar determinant(const Matrix& m);
/// Raises NotInvertible for singular input.
Matrix inverse(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Reduced row-echelon form; pivot columns written to *pivots if given.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);
/// Columns form the canonical kernel basis (one per free column).
Matrix kernel(const Matrix& m);
/// Kronecker product, (A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);
bool is_permutation_matrix(const Matrix& m);

}  // namespace nullcone
