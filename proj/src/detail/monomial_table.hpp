#pragma once

// Index tables over graded-lex monomial bases and code-level images of
// monomials under a linear substitution x_i -> sum_j B(i,j) x_j.

#include <cstdint>
#include <vector>

#include "nullcone/poly.hpp"

namespace nullcone::detail {

class MonomialTable {
 public:
  MonomialTable(std::size_t nvars, std::uint32_t maxdeg) : n_(nvars), count_(maxdeg + 1), mulvar_(maxdeg + 1), first_(maxdeg + 1), quot_(maxdeg + 1) {
    for (std::uint32_t d = 0; d <= maxdeg; ++d) count_[d] = mono_count(nvars, d);
    for (std::uint32_t d = 0; d <= maxdeg; ++d) {
      const auto basis = mono_basis(nvars, d);
      if (d < maxdeg) {
        mulvar_[d].resize(basis.size() * n_);
        for (std::size_t idx = 0; idx < basis.size(); ++idx) {
          for (std::size_t j = 0; j < n_; ++j) {
            mulvar_[d][idx * n_ + j] = static_cast<std::uint32_t>(mono_rank(basis[idx] * Monomial::variable(n_, j)));
          }
        }
      }
      if (d > 0) {
        first_[d].resize(basis.size());
        quot_[d].resize(basis.size());
        for (std::size_t idx = 0; idx < basis.size(); ++idx) {
          std::size_t i = 0;
          while (basis[idx][i] == 0) ++i;
          std::vector<std::uint32_t> e = basis[idx].exponents();
          --e[i];
          first_[d][idx] = static_cast<std::uint32_t>(i);
          quot_[d][idx] = static_cast<std::uint32_t>(mono_rank(Monomial(std::move(e))));
        }
      }
    }
  }

  std::size_t nvars() const { return n_; }
  std::uint32_t maxdeg() const { return static_cast<std::uint32_t>(count_.size() - 1); }
  std::size_t count(std::uint32_t d) const { return count_[d]; }
  /// Rank in degree d+1 of (monomial idx of degree d) * x_j.
  std::uint32_t mulvar(std::uint32_t d, std::size_t idx, std::size_t j) const { return mulvar_[d][idx * n_ + j]; }
  /// For degree d >= 1: the first variable dividing monomial idx, and the
  /// rank of the quotient in degree d-1.
  std::uint32_t first_var(std::uint32_t d, std::size_t idx) const { return first_[d][idx]; }
  std::uint32_t quotient(std::uint32_t d, std::size_t idx) const { return quot_[d][idx]; }

 private:
  std::size_t n_;
  std::vector<std::size_t> count_;
  std::vector<std::vector<std::uint32_t>> mulvar_;
  std::vector<std::vector<std::uint32_t>> first_;
  std::vector<std::vector<std::uint32_t>> quot_;
};

/// Column-major matrix of the substitution on degree-d forms:
/// column m holds the coefficient vector of the image of monomial m.
template <class D>
std::vector<typename D::value_type> substitution_matrix(const D& dom, const MonomialTable& tab, std::uint32_t d,
                                                         const std::vector<typename D::value_type>& b) {
  using T = typename D::value_type;
  const std::size_t n = tab.nvars();
  if (d == 0) return {dom.one()};
  // prev holds all images at degree e-1, column-major.
  std::vector<T> prev = {dom.one()};
  for (std::uint32_t e = 1; e <= d; ++e) {
    const std::size_t rows = tab.count(e), cols = tab.count(e);
    const std::size_t prow = tab.count(e - 1);
    std::vector<T> cur(rows * cols, dom.zero());
    for (std::size_t m = 0; m < cols; ++m) {
      const std::uint32_t i = tab.first_var(e, m);
      const T* src = prev.data() + static_cast<std::size_t>(tab.quotient(e, m)) * prow;
      T* dst = cur.data() + m * rows;
      for (std::size_t mu = 0; mu < prow; ++mu) {
        if (dom.is_zero(src[mu])) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const T& bij = b[i * n + j];
          if (dom.is_zero(bij)) continue;
          T& slot = dst[tab.mulvar(e - 1, mu, j)];
          slot = dom.add(slot, dom.mul(src[mu], bij));
        }
      }
    }
    prev = std::move(cur);
  }
  return prev;
}

}  // namespace nullcone::detail
