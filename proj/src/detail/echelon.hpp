#pragma once

// Incremental row echelon forms on raw element codes. Rows are fed one at a
// time (the stacked constraint matrix is never materialized) and kept in
// semi-echelon form: each stored row is normalized with pivot 1 and zero
// before its pivot. Kernels and reduced forms are produced on demand.
//
// BitslicedEchelon handles characteristic 2: an element of GF(2^k) is split
// over k bitplanes, so a row operation is a handful of word XORs.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "detail/field_data.hpp"

namespace nullcone::detail {

template <class D>
class DenseEchelon {
 public:
  using T = typename D::value_type;

  DenseEchelon(D dom, std::size_t ncols) : d_(dom), ncols_(ncols), pivot_row_(ncols, -1) {}

  DenseEchelon fresh(std::size_t ncols) const { return DenseEchelon(d_, ncols); }
  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ncols_; }

  /// Returns true if the row was independent of the stored ones.
  bool add_row(std::vector<T> row) {
    const std::size_t c = reduce(row);
    if (c == ncols_) return false;
    const T inv = d_.inv(row[c]);
    for (std::size_t j = c; j < ncols_; ++j) {
      if (!d_.is_zero(row[j])) row[j] = d_.mul(row[j], inv);
    }
    pivot_row_[c] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  bool in_span(std::vector<T> row) const { return reduce(row) == ncols_; }

  /// Reduced row-echelon rows sorted by pivot column.
  std::vector<std::vector<T>> rref_rows() const {
    std::vector<std::size_t> order = sorted_pivots();
    std::vector<std::vector<T>> out(order.size());
    // Last pivot first; earlier rows then subtract fully reduced later rows.
    for (std::size_t k = order.size(); k-- > 0;) {
      std::vector<T> r = rows_[static_cast<std::size_t>(pivot_row_[order[k]])];
      for (std::size_t l = k + 1; l < order.size(); ++l) {
        const std::size_t c = order[l];
        if (d_.is_zero(r[c])) continue;
        const T f = r[c];
        const auto& p = out[l];
        for (std::size_t j = c; j < ncols_; ++j) {
          if (!d_.is_zero(p[j])) r[j] = d_.sub(r[j], d_.mul(f, p[j]));
        }
      }
      out[k] = std::move(r);
    }
    return out;
  }

  /// Canonical (reduced row-echelon) basis of the null space.
  std::vector<std::vector<T>> kernel() const {
    std::vector<std::size_t> order = sorted_pivots();
    DenseEchelon k = fresh(ncols_);
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivot_row_[f] >= 0) continue;
      std::vector<T> x(ncols_, d_.zero());
      x[f] = d_.one();
      for (std::size_t idx = order.size(); idx-- > 0;) {
        const std::size_t c = order[idx];
        if (c > f) continue;
        const auto& r = rows_[static_cast<std::size_t>(pivot_row_[c])];
        T acc = d_.zero();
        for (std::size_t j = c + 1; j < ncols_; ++j) {
          if (!d_.is_zero(r[j]) && !d_.is_zero(x[j])) acc = d_.add(acc, d_.mul(r[j], x[j]));
        }
        x[c] = d_.neg(acc);
      }
      k.add_row(std::move(x));
    }
    return k.rref_rows();
  }

 private:
  /// Reduces in place up to the first nonzero non-pivot column, which is
  /// returned (ncols_ when the row vanished).
  std::size_t reduce(std::vector<T>& row) const {
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (d_.is_zero(row[c])) continue;
      const long pr = pivot_row_[c];
      if (pr < 0) return c;
      const T f = row[c];
      const auto& p = rows_[static_cast<std::size_t>(pr)];
      for (std::size_t j = c; j < ncols_; ++j) {
        if (!d_.is_zero(p[j])) row[j] = d_.sub(row[j], d_.mul(f, p[j]));
      }
    }
    return ncols_;
  }

  std::vector<std::size_t> sorted_pivots() const {
    std::vector<std::size_t> order;
    order.reserve(rows_.size());
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (pivot_row_[c] >= 0) order.push_back(c);
    }
    return order;
  }

  D d_;
  std::size_t ncols_;
  std::vector<std::vector<T>> rows_;
  std::vector<long> pivot_row_;
};

class BitslicedEchelon {
 public:
  using T = std::uint32_t;

  BitslicedEchelon(const FieldData* f, std::size_t ncols)
      : f_(f), k_(f->n), ncols_(ncols), words_((ncols + 63) / 64), pivot_row_(ncols, -1) {
    const std::uint32_t q = f->q;
    mulmat_.assign(static_cast<std::size_t>(q) * k_, 0);
    for (std::uint32_t c = 0; c < q; ++c) {
      for (std::uint32_t j = 0; j < k_; ++j) mulmat_[c * k_ + j] = f->mul(c, 1u << j);
    }
  }

  BitslicedEchelon fresh(std::size_t ncols) const { return BitslicedEchelon(f_, ncols); }
  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ncols_; }

  bool add_row(const std::vector<T>& codes) {
    Row r = pack(codes);
    const std::size_t c = reduce(r);
    if (c == ncols_) return false;
    const T inv = f_->inv(get(r, c));
    if (inv != 1) r = scaled(r, inv, c / 64);
    pivot_row_[c] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  bool in_span(const std::vector<T>& codes) const {
    Row r = pack(codes);
    return reduce(r) == ncols_;
  }

  std::vector<std::vector<T>> rref_rows() const {
    std::vector<std::size_t> order = sorted_pivots();
    std::vector<Row> out(order.size());
    for (std::size_t k = order.size(); k-- > 0;) {
      Row r = rows_[static_cast<std::size_t>(pivot_row_[order[k]])];
      for (std::size_t l = k + 1; l < order.size(); ++l) {
        const std::size_t c = order[l];
        const T v = get(r, c);
        if (v) addmul(r, out[l], v, c / 64);
      }
      out[k] = std::move(r);
    }
    std::vector<std::vector<T>> codes;
    codes.reserve(out.size());
    for (const auto& r : out) codes.push_back(unpack(r));
    return codes;
  }

  std::vector<std::vector<T>> kernel() const {
    std::vector<std::size_t> order = sorted_pivots();
    BitslicedEchelon k = fresh(ncols_);
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivot_row_[f] >= 0) continue;
      Row x(k_ * words_, 0);
      set(x, f, 1);
      // Entries of x sit only at f and at pivot columns above the current
      // one, so the dot product over the whole row is what we need.
      for (std::size_t idx = order.size(); idx-- > 0;) {
        const std::size_t c = order[idx];
        if (c > f) continue;
        const Row& r = rows_[static_cast<std::size_t>(pivot_row_[c])];
        set(x, c, dot_after(r, x, c));  // char 2: -acc = acc
      }
      k.add_packed(std::move(x));
    }
    return k.rref_rows();
  }

 private:
  using Row = std::vector<std::uint64_t>;  // plane-major: plane j at [j*words_, (j+1)*words_)

  Row pack(const std::vector<T>& codes) const {
    Row r(k_ * words_, 0);
    for (std::size_t c = 0; c < ncols_; ++c) {
      const T v = codes[c];
      if (v) set(r, c, v);
    }
    return r;
  }

  std::vector<T> unpack(const Row& r) const {
    std::vector<T> out(ncols_, 0);
    for (std::size_t c = 0; c < ncols_; ++c) out[c] = get(r, c);
    return out;
  }

  T get(const Row& r, std::size_t c) const {
    const std::size_t w = c / 64, b = c % 64;
    T v = 0;
    for (std::uint32_t j = 0; j < k_; ++j) v |= static_cast<T>((r[j * words_ + w] >> b) & 1u) << j;
    return v;
  }

  void set(Row& r, std::size_t c, T v) const {
    const std::size_t w = c / 64, b = c % 64;
    for (std::uint32_t j = 0; j < k_; ++j) {
      std::uint64_t& word = r[j * words_ + w];
      word = (word & ~(std::uint64_t{1} << b)) | (static_cast<std::uint64_t>((v >> j) & 1u) << b);
    }
  }

  /// dst += c * src on words >= start.
  void addmul(Row& dst, const Row& src, T c, std::size_t start) const {
    for (std::uint32_t j = 0; j < k_; ++j) {
      T m = mulmat_[c * k_ + j];
      const std::uint64_t* s = src.data() + j * words_;
      while (m) {
        const int b = std::countr_zero(m);
        m &= m - 1;
        std::uint64_t* d = dst.data() + static_cast<std::size_t>(b) * words_;
        for (std::size_t w = start; w < words_; ++w) d[w] ^= s[w];
      }
    }
  }

  Row scaled(const Row& src, T c, std::size_t start) const {
    Row out(k_ * words_, 0);
    addmul(out, src, c, start);
    return out;
  }

  /// sum_{j > c} r[j] x[j].
  T dot_after(const Row& r, const Row& x, std::size_t c) const {
    const std::size_t w0 = c / 64;
    const std::uint64_t first_mask = (c % 64 == 63) ? 0 : (~std::uint64_t{0} << (c % 64 + 1));
    T acc = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      for (std::uint32_t j = 0; j < k_; ++j) {
        const std::uint64_t* a = r.data() + i * words_;
        const std::uint64_t* b = x.data() + j * words_;
        unsigned parity = static_cast<unsigned>(std::popcount(a[w0] & b[w0] & first_mask));
        for (std::size_t w = w0 + 1; w < words_; ++w) parity += static_cast<unsigned>(std::popcount(a[w] & b[w]));
        if (parity & 1u) acc ^= mulmat_[(1u << i) * k_ + j];
      }
    }
    return acc;
  }

  std::size_t reduce(Row& r) const {
    for (std::size_t w = 0; w < words_; ++w) {
      for (;;) {
        std::uint64_t m = 0;
        for (std::uint32_t j = 0; j < k_; ++j) m |= r[j * words_ + w];
        if (!m) break;
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
        const long pr = pivot_row_[c];
        if (pr < 0) return c;
        addmul(r, rows_[static_cast<std::size_t>(pr)], get(r, c), w);
      }
    }
    return ncols_;
  }

  void add_packed(Row r) {
    const std::size_t c = reduce(r);
    if (c == ncols_) return;
    const T inv = f_->inv(get(r, c));
    if (inv != 1) r = scaled(r, inv, c / 64);
    pivot_row_[c] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(r));
  }

  std::vector<std::size_t> sorted_pivots() const {
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (pivot_row_[c] >= 0) order.push_back(c);
    }
    return order;
  }

  const FieldData* f_;
  std::uint32_t k_;
  std::size_t ncols_;
  std::size_t words_;
  std::vector<T> mulmat_;  // mulmat_[c*k + j] = code of c * z^j
  std::vector<Row> rows_;
  std::vector<long> pivot_row_;
};

/// Calls fn(domain, engine) with the elimination engine suited to the field.
template <class Fn>
decltype(auto) with_engine(const Field& field, std::size_t ncols, Fn&& fn) {
  if (field.is_rational()) {
    RationalDomain d;
    DenseEchelon<RationalDomain> e(d, ncols);
    return fn(d, e);
  }
  FiniteDomain d(field);
  if (field.characteristic() == 2) {
    BitslicedEchelon e(field.data(), ncols);
    return fn(d, e);
  }
  DenseEchelon<FiniteDomain> e(d, ncols);
  return fn(d, e);
}

}  // namespace nullcone::detail
