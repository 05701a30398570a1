#include "nullcone/linalg.hpp"

#include <sstream>

namespace nullcone {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) raise(ErrorCode::ContextMismatch, "matrices over different fields");
  if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorCode::DimensionMismatch, "matrix shapes differ");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) raise(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j].field() != f) raise(ErrorCode::ContextMismatch, "matrix entry over another field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::parse(const Field& f, std::string_view text) {
  std::vector<std::vector<Scalar>> rows;
  for (auto row : split(text, ';')) {
    std::vector<Scalar> r;
    for (auto entry : split(row, ',')) r.push_back(Scalar::parse(f, entry));
    rows.push_back(std::move(r));
  }
  return from_rows(f, rows);
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (field_ != o.field_) raise(ErrorCode::ContextMismatch, "matrices over different fields");
  if (cols_ != o.rows_) raise(ErrorCode::DimensionMismatch, "inner dimensions differ");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) r(i, j) += aik * o(k, j);
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_shape(*this, o);
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_shape(*this, o);
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

std::vector<Scalar> Matrix::operator*(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) raise(ErrorCode::DimensionMismatch, "vector length differs from column count");
  std::vector<Scalar> r(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t i = 0; i < a.a_.size(); ++i) {
    if (a.a_[i] < b.a_[i]) return true;
    if (b.a_[i] < a.a_[i]) return false;
  }
  return false;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).str();
    }
  }
  return os.str();
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix r = m;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t sel = row;
    while (sel < r.rows() && r(sel, col).is_zero()) ++sel;
    if (sel == r.rows()) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(sel, j), r(row, j));
    }
    const Scalar inv = r(row, col).inv();
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Scalar c = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) -= c * r(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return r;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) raise(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  Matrix r = m;
  const std::size_t n = r.rows();
  Scalar det = Scalar::one(m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && r(sel, col).is_zero()) ++sel;
    if (sel == n) return Scalar::zero(m.field());
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(sel, j), r(col, j));
      det = -det;
    }
    det *= r(col, col);
    const Scalar inv = r(col, col).inv();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (r(i, col).is_zero()) continue;
      const Scalar c = r(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) r(i, j) -= c * r(col, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) raise(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) raise(ErrorCode::NotInvertible, "singular matrix " + m.str());
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r(i, n + j);
  }
  return out;
}

Matrix kernel(const Matrix& m) {
  std::vector<std::size_t> piv;
  Matrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix k(m.field(), m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = Scalar::one(m.field());
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -r(i, free_cols[f]);
  }
  return k;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) raise(ErrorCode::ContextMismatch, "kron over different fields");
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    }
  }
  return r;
}

bool is_permutation_matrix(const Matrix& m) {
  if (!m.is_square()) return false;
  std::vector<bool> col_used(m.cols(), false);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& x = m(i, j);
      if (x.is_zero()) continue;
      if (!x.is_one() || col_used[j]) return false;
      col_used[j] = true;
      ++ones;
    }
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace nullcone
